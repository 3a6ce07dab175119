#include "sode/synth.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "sode/errors.hpp"

namespace sode {

namespace {

using nlohmann::json;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One independent draw stream per (seed, instance index).
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ (kGolden * (index + 1)))) {}

  double uniform() {
    state_ += kGolden;
    return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

double rate_of(const GeneratorSpec& spec, ClassIndex y, SeasonValue t,
               AttrIndex i) {
  return spec.rates[(static_cast<std::size_t>(y) * spec.seasons + t) *
                        spec.attributes +
                    i];
}

double bernoulli(double p, AttrValue v) { return v == 1 ? p : 1.0 - p; }

}  // namespace

GeneratorSpec GeneratorSpec::flat(AttrIndex n, ClassIndex k, SeasonValue t,
                                  Count instances, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.attributes = n;
  spec.classes = k;
  spec.seasons = t;
  spec.instances = instances;
  spec.seed = seed;
  spec.priors.assign(static_cast<std::size_t>(t) * k, 1.0 / k);
  spec.rates.resize(static_cast<std::size_t>(k) * t * n);
  for (ClassIndex y = 0; y < k; ++y)
    for (SeasonValue s = 0; s < t; ++s)
      for (AttrIndex i = 0; i < n; ++i)
        spec.rates[(static_cast<std::size_t>(y) * t + s) * n + i] =
            (i + y) % 2 == 0 ? 0.8 : 0.2;
  return spec;
}

GeneratorSpec GeneratorSpec::seasonal_drift(AttrIndex n, ClassIndex k,
                                            SeasonValue t, Count instances,
                                            std::uint64_t seed) {
  GeneratorSpec spec;
  spec.attributes = n;
  spec.classes = k;
  spec.seasons = t;
  spec.instances = instances;
  spec.seed = seed;
  spec.priors.resize(static_cast<std::size_t>(t) * k);
  for (SeasonValue s = 0; s < t; ++s)
    for (ClassIndex y = 0; y < k; ++y)
      spec.priors[static_cast<std::size_t>(s) * k + y] =
          k == 1 ? 1.0 : (y == s % k ? 0.7 : 0.3 / (k - 1));
  // Seasons in [flip_from, T) invert every rate — the 5:2 weekday/weekend
  // split scaled to T seasons.
  const SeasonValue flip_from = static_cast<SeasonValue>((5u * t) / 7u);
  spec.rates.resize(static_cast<std::size_t>(k) * t * n);
  for (ClassIndex y = 0; y < k; ++y)
    for (SeasonValue s = 0; s < t; ++s)
      for (AttrIndex i = 0; i < n; ++i) {
        const double base = i % k == y ? 0.8 : 0.2;
        spec.rates[(static_cast<std::size_t>(y) * t + s) * n + i] =
            s >= flip_from ? 1.0 - base : base;
      }
  return spec;
}

void GeneratorSpec::validate() const {
  if (attributes < 1 || attributes > 65535)
    throw Error("generator: attributes must be in [1, 65535]");
  if (classes < 1 || classes > (1u << 20))
    throw Error("generator: classes must be in [1, 2^20]");
  if (seasons < 1 || seasons > 4095)
    throw Error("generator: seasons must be in [1, 4095]");
  if (priors.size() != static_cast<std::size_t>(seasons) * classes)
    throw Error("generator: priors must hold seasons x classes entries");
  for (SeasonValue t = 0; t < seasons; ++t) {
    double sum = 0;
    for (ClassIndex y = 0; y < classes; ++y) {
      const double p = priors[static_cast<std::size_t>(t) * classes + y];
      if (!(p >= 0.0 && p <= 1.0))
        throw Error("generator: prior out of [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error("generator: priors for season " + std::to_string(t) +
                  " sum to " + std::to_string(sum) + ", not 1");
  }
  if (rates.size() !=
      static_cast<std::size_t>(classes) * seasons * attributes)
    throw Error("generator: rates must hold classes x seasons x attributes entries");
  for (double r : rates)
    if (!(r >= 0.0 && r <= 1.0)) throw Error("generator: rate out of [0,1]");
  if (!(pair_coupling >= 0.0 && pair_coupling <= 1.0))
    throw Error("generator: pair_coupling out of [0,1]");
  if (!label_sets.empty()) {
    if (label_sets.size() != classes)
      throw Error("generator: label_sets must hold one set per class");
    for (const auto& set : label_sets) {
      if (set.empty()) throw Error("generator: empty label set");
      for (const std::string& name : set)
        if (name.empty() ||
            name.find_first_of(",\t\n\r") != std::string::npos)
          throw Error("generator: label name unusable in the stream format");
    }
  }
}

std::vector<std::string> GeneratorSpec::labels_of(ClassIndex y) const {
  if (!label_sets.empty()) return label_sets[y];
  // Bits of y+1 spell the default set: distinct per class, overlapping labels.
  std::vector<std::string> names;
  const std::uint64_t bits = static_cast<std::uint64_t>(y) + 1;
  for (unsigned b = 0; b < 64; ++b)
    if (bits & (1ull << b)) names.push_back("L" + std::to_string(b));
  return names;
}

GeneratorSpec GeneratorSpec::from_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DecodeError(std::string("generator spec is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_object()) throw DecodeError("generator spec must be a JSON object");

  GeneratorSpec spec;
  try {
    spec.attributes = doc.at("attributes").get<AttrIndex>();
    spec.classes = doc.at("classes").get<ClassIndex>();
    spec.seasons = doc.at("seasons").get<SeasonValue>();
    spec.instances = doc.at("instances").get<Count>();
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.pair_coupling = doc.value("pair_coupling", 0.0);

    const json& priors = doc.at("priors");  // [T][k]
    for (const json& row : priors)
      for (const json& p : row) spec.priors.push_back(p.get<double>());

    const json& rates = doc.at("rates");  // [k][T][n]
    for (const json& per_class : rates)
      for (const json& per_season : per_class)
        for (const json& r : per_season) spec.rates.push_back(r.get<double>());

    if (const auto it = doc.find("label_sets"); it != doc.end())
      for (const json& set : *it)
        spec.label_sets.push_back(set.get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw DecodeError(std::string("generator spec field error: ") + e.what());
  }
  spec.validate();
  return spec;
}

void GeneratorSpec::to_json(std::ostream& out) const {
  json doc;
  doc["attributes"] = attributes;
  doc["classes"] = classes;
  doc["seasons"] = seasons;
  doc["instances"] = instances;
  doc["seed"] = seed;
  doc["pair_coupling"] = pair_coupling;
  json priors_rows = json::array();
  for (SeasonValue t = 0; t < seasons; ++t) {
    json row = json::array();
    for (ClassIndex y = 0; y < classes; ++y)
      row.push_back(priors[static_cast<std::size_t>(t) * classes + y]);
    priors_rows.push_back(std::move(row));
  }
  doc["priors"] = std::move(priors_rows);
  json rates_rows = json::array();
  for (ClassIndex y = 0; y < classes; ++y) {
    json per_class = json::array();
    for (SeasonValue t = 0; t < seasons; ++t) {
      json per_season = json::array();
      for (AttrIndex i = 0; i < attributes; ++i)
        per_season.push_back(rate_of(*this, y, t, i));
      per_class.push_back(std::move(per_season));
    }
    rates_rows.push_back(std::move(per_class));
  }
  doc["rates"] = std::move(rates_rows);
  if (!label_sets.empty()) doc["label_sets"] = label_sets;
  out << doc.dump(2) << '\n';
}

SyntheticSource::SyntheticSource(GeneratorSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  schema_ = AttributeSchema::binary(spec_.attributes, 1);
}

SyntheticSource::Drawn SyntheticSource::draw(Count index) const {
  Drawn d;
  d.season = static_cast<SeasonValue>(index % spec_.seasons);
  Rng rng(spec_.seed, index);

  const double u = rng.uniform();
  double cum = 0.0;
  d.class_index = spec_.classes - 1;  // numeric-noise catch-all
  for (ClassIndex y = 0; y < spec_.classes; ++y) {
    cum += spec_.priors[static_cast<std::size_t>(d.season) * spec_.classes + y];
    if (u < cum) {
      d.class_index = y;
      break;
    }
  }

  d.values.resize(spec_.attributes);
  for (AttrIndex i = 0; i < spec_.attributes; ++i) {
    // Two draws per attribute regardless of the branch keeps every attribute
    // at a fixed position in the instance's draw stream.
    const double u_copy = rng.uniform();
    const double u_val = rng.uniform();
    if (i % 2 == 1 && u_copy < spec_.pair_coupling)
      d.values[i] = d.values[i - 1];
    else
      d.values[i] =
          u_val < rate_of(spec_, d.class_index, d.season, i) ? 1 : 0;
  }
  return d;
}

bool SyntheticSource::next(StreamInstance& out) {
  if (index_ >= spec_.instances) return false;
  const Drawn d = draw(index_++);
  out.values.clear();
  for (AttrIndex i = 0; i < spec_.attributes; ++i)
    if (d.values[i] == 1) out.values.emplace_back(i, 1);
  out.season = d.season;
  out.labels = spec_.labels_of(d.class_index);
  return true;
}

std::vector<double> bayes_optimal_posterior(const GeneratorSpec& spec,
                                            const std::vector<AttrValue>& values,
                                            SeasonValue t) {
  if (values.size() != spec.attributes)
    throw Error("posterior query needs one value per attribute");
  if (t >= spec.seasons) throw Error("posterior query season out of range");
  std::vector<double> post(spec.classes);
  double total = 0.0;
  for (ClassIndex y = 0; y < spec.classes; ++y) {
    double w = spec.priors[static_cast<std::size_t>(t) * spec.classes + y];
    for (AttrIndex i = 0; i < spec.attributes; ++i) {
      const double own = bernoulli(rate_of(spec, y, t, i), values[i]);
      if (i % 2 == 1 && spec.pair_coupling > 0.0) {
        const double copy_match = values[i] == values[i - 1] ? 1.0 : 0.0;
        w *= spec.pair_coupling * copy_match +
             (1.0 - spec.pair_coupling) * own;
      } else {
        w *= own;
      }
    }
    post[y] = w;
    total += w;
  }
  if (total <= 0.0) {
    // x impossible under every class: any convention works; stay uniform.
    std::fill(post.begin(), post.end(), 1.0 / spec.classes);
    return post;
  }
  for (double& p : post) p /= total;
  return post;
}

}  // namespace sode
