#pragma once

// Prequential (test-then-train) evaluation: every instance is first scored by
// the model trained on all earlier instances, then used for training. The
// very first instance — scored by an untrained model — yields a designated
// abstain record (empty prediction, no label mass) that counts as incorrect.
//
// Malformed instances (no labels, out-of-range attribute or season values,
// unsorted attribute lists) are counted, logged and skipped so long runs
// never halt; an input that yields no valid instance at all is an error.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sode/classifier.hpp"
#include "sode/metrics.hpp"
#include "sode/schema.hpp"

namespace sode {

// One not-yet-encoded instance as sources yield it: attribute values, an
// optional season and label names (interned by the harness).
struct StreamInstance {
  std::vector<std::pair<AttrIndex, AttrValue>> values;  // ascending indices
  std::optional<SeasonValue> season;
  std::vector<std::string> labels;
};

class InstanceSource {
public:
  virtual ~InstanceSource() = default;
  // Attribute space of the stream (season_cardinality is not the source's
  // concern; the run configuration carries it).
  virtual const AttributeSchema& schema() const = 0;
  // Yields the next instance; false at end of stream.
  virtual bool next(StreamInstance& out) = 0;
};

// In-memory source, mainly for tests.
class VectorSource final : public InstanceSource {
public:
  VectorSource(AttributeSchema schema, std::vector<StreamInstance> instances)
      : schema_(std::move(schema)), instances_(std::move(instances)) {}

  const AttributeSchema& schema() const override { return schema_; }
  bool next(StreamInstance& out) override {
    if (pos_ >= instances_.size()) return false;
    out = instances_[pos_++];
    return true;
  }
  void reset() { pos_ = 0; }

private:
  AttributeSchema schema_;
  std::vector<StreamInstance> instances_;
  std::size_t pos_ = 0;
};

struct RunConfig {
  ClassifierKind kind = ClassifierKind::Saode;
  // model.season.cardinality doubles as the stream's season space (bounds
  // validation and the per-season breakdown) even for season-blind models.
  ModelConfig model;
  std::size_t window = 1000;  // instances per windowed metric row
  bool per_season = true;     // emit per-season rows
  bool per_label = false;     // emit per-(season, label) rows
  bool keep_records = false;  // retain every PredictionRecord (tests, SVG)
  std::uint64_t seed = 0;     // echoed into reports; sources seed themselves
  std::string run_id = "run";
};

struct RunReport {
  RunConfig config;
  std::string model_name;
  Count skipped = 0;  // malformed instances dropped
  // Label universe in catalog (first-seen) order; index = LabelId.
  std::vector<std::string> label_names;

  EvaluationLedger overall;
  std::vector<EvaluationLedger> windows;  // chronological, last may be partial
  // Per-season breakdown; instances with unknown season tally separately so
  // season counts plus missing count equal the overall count.
  std::map<SeasonValue, EvaluationLedger> seasons;
  EvaluationLedger missing_season;
  // Per-(season, label): records of that season whose truth contains the
  // label. Only filled when config.per_label.
  std::map<std::pair<SeasonValue, LabelId>, EvaluationLedger> season_labels;
  std::vector<PredictionRecord> records;  // only when config.keep_records

  std::size_t label_count() const { return label_names.size(); }
};

// Runs the protocol with a caller-supplied classifier (its catalog must be
// empty — label ids are assigned by this run). The classifier is left in its
// end-of-stream trained state.
RunReport run_prequential(InstanceSource& source, const RunConfig& config,
                          StreamClassifier& classifier,
                          const std::shared_ptr<ClassCatalog>& catalog);

// Convenience overload: builds the classifier from config.kind over the
// source's schema.
RunReport run_prequential(InstanceSource& source, const RunConfig& config);

// ---- cross-run comparison ----------------------------------------------

inline constexpr const char* kMetricNames[5] = {"ap", "hl", "mla", "mlfs",
                                                "rmse"};
// True when larger is better for metric index m (ap, mla, mlfs).
inline constexpr bool kMetricHigherBetter[5] = {true, false, true, true, false};

struct ComparisonRow {
  std::string run_id;
  std::string model;
  Count n = 0;
  double values[5] = {0, 0, 0, 0, 0};  // ap, hl, mla, mlfs, rmse
  bool best[5] = {false, false, false, false, false};
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

// Aligns the overall metrics of several runs; flags the best value per metric
// (ties flag every holder). Throws on empty input or mismatched label
// universes.
ComparisonTable compare_runs(const std::vector<const RunReport*>& reports);

// Same alignment over pre-extracted entries (used by the CLI, which compares
// runs loaded back from report files). Each entry carries its sorted label
// universe for the mismatch check.
struct ComparisonEntry {
  std::string run_id;
  std::string model;
  Count n = 0;
  double values[5] = {0, 0, 0, 0, 0};
  std::vector<std::string> sorted_labels;
};
ComparisonTable compare_entries(const std::vector<ComparisonEntry>& entries);

}  // namespace sode
