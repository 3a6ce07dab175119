#pragma once

// Seeded synthetic streams with controllable seasonal structure. Instance i
// gets season i mod T (a regular calendar); its class is drawn from the
// per-season prior row and its binary attributes from per-(class, season)
// Bernoulli rates. An optional coupling mode makes each odd attribute copy
// its even neighbor with a fixed probability, adding pairwise dependence
// that one-dependence models can exploit.
//
// Randomness is counter-based (one splitmix64 stream per instance index), so
// a stream is a pure function of (spec, seed) and any index range can be
// generated independently.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sode/prequential.hpp"
#include "sode/schema.hpp"

namespace sode {

struct GeneratorSpec {
  AttrIndex attributes = 20;
  ClassIndex classes = 4;
  SeasonValue seasons = 7;
  Count instances = 1000;
  std::uint64_t seed = 0;
  // priors[t * classes + y] = P(class y | season t); each season row sums to 1.
  std::vector<double> priors;
  // rates[(y * seasons + t) * attributes + i] = P(x_i = 1 | y, t).
  std::vector<double> rates;
  // Probability that odd attribute 2p+1 copies attribute 2p instead of using
  // its own rate. 0 = fully independent attributes given (y, t).
  double pair_coupling = 0.0;
  // Label set per class; when empty, class y gets the labels spelled by the
  // bits of y+1 over names "L0", "L1", ... (distinct sets, overlapping labels).
  std::vector<std::vector<std::string>> label_sets;

  // Uniform priors, season-independent rates alternating 0.8/0.2 by (i+y)%2.
  static GeneratorSpec flat(AttrIndex n, ClassIndex k, SeasonValue t,
                            Count instances, std::uint64_t seed);

  // Strong periodic structure: season t favors class t mod k (prior 0.7),
  // attribute i signals class i mod k (rate 0.8 vs 0.2), and the trailing
  // ~2/7 of the seasons invert every attribute's meaning — a weekday/weekend
  // style flip that season-blind models see as contradictory evidence.
  static GeneratorSpec seasonal_drift(AttrIndex n, ClassIndex k, SeasonValue t,
                                      Count instances, std::uint64_t seed);

  void validate() const;  // throws Error on any malformed field
  std::vector<std::string> labels_of(ClassIndex y) const;

  // JSON round-trip; schema documented in docs/formats.md.
  static GeneratorSpec from_json(std::istream& in);
  void to_json(std::ostream& out) const;
};

class SyntheticSource final : public InstanceSource {
public:
  explicit SyntheticSource(GeneratorSpec spec);

  const AttributeSchema& schema() const override { return schema_; }
  bool next(StreamInstance& out) override;
  void reset() { index_ = 0; }

  // Deterministic instance at an arbitrary index, independent of cursor
  // state: the ground-truth class, season and dense attribute values.
  struct Drawn {
    ClassIndex class_index = 0;
    SeasonValue season = 0;
    std::vector<AttrValue> values;  // dense, size = attributes
  };
  Drawn draw(Count index) const;

  const GeneratorSpec& spec() const { return spec_; }

private:
  GeneratorSpec spec_;
  AttributeSchema schema_;
  Count index_ = 0;
};

// Exact posterior P(y | x, t) under the generating distribution (the accuracy
// ceiling of any classifier on the stream). `values` is dense over all
// attributes.
std::vector<double> bayes_optimal_posterior(const GeneratorSpec& spec,
                                            const std::vector<AttrValue>& values,
                                            SeasonValue t);

}  // namespace sode
