#include "sode/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sode/errors.hpp"

namespace sode {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;

// Product of probabilities (each in (0,1]) tracked in linear space with a
// binary-exponent escape hatch, so arbitrarily long products never underflow
// and cost a single std::log at the end.
class LogProduct {
public:
  void mul(double f) {
    mantissa_ *= f;
    if (mantissa_ < 1e-280) {
      int e = 0;
      mantissa_ = std::frexp(mantissa_, &e);
      exp2_ += e;
    }
  }
  double log_value() const { return std::log(mantissa_) + static_cast<double>(exp2_) * kLn2; }

private:
  double mantissa_ = 1.0;
  long exp2_ = 0;
};

double log_sum_exp(const std::vector<double>& terms) {
  double hi = terms.front();
  for (double t : terms) hi = std::max(hi, t);
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

// Argmax (lowest index on ties) plus softmax normalization.
ScoredPrediction finalize(std::vector<double> scores) {
  ScoredPrediction sp;
  sp.best = 0;
  for (ClassIndex y = 1; y < scores.size(); ++y)
    if (scores[y] > scores[sp.best]) sp.best = y;
  const double hi = scores[sp.best];
  sp.probabilities.resize(scores.size());
  double sum = 0.0;
  for (std::size_t y = 0; y < scores.size(); ++y) {
    sp.probabilities[y] = std::exp(scores[y] - hi);
    sum += sp.probabilities[y];
  }
  for (double& p : sp.probabilities) p /= sum;
  sp.log_scores = std::move(scores);
  return sp;
}

const std::string kKindNames[] = {"nb", "aode", "saode", "nb+sf",
                                  "aode+sf", "nb+ps", "aode+ps"};

}  // namespace

// ---- Model ------------------------------------------------------------------

Model::Model(ModelKind kind, AttributeSchema attributes, ModelConfig config,
             std::shared_ptr<ClassCatalog> catalog)
    : kind_(kind),
      config_(config),
      catalog_(catalog ? std::move(catalog) : std::make_shared<ClassCatalog>()) {
  if (!(config_.alpha > 0.0))
    throw Error("smoothing pseudo-count alpha must be positive");
  if (config_.season.cardinality < 1)
    throw SchemaError("season cardinality must be >= 1");
  attributes.season_cardinality =
      kind_ == ModelKind::Saode ? config_.season.cardinality : 1;
  StoreBackend backend;
  switch (config_.backend) {
    case BackendChoice::Auto:
      backend = FrequencyStore::choose_backend(attributes);
      break;
    case BackendChoice::BinarySparse:
      backend = StoreBackend::BinarySparse;
      break;
    case BackendChoice::General:
      backend = StoreBackend::General;
      break;
    default:
      throw Error("unknown backend choice");
  }
  store_ = FrequencyStore::create(std::move(attributes), backend);
  name_ = kKindNames[static_cast<int>(kind_)];
}

std::optional<SeasonValue> Model::effective_season(const Instance& x) const {
  if (kind_ == ModelKind::Saode) return x.season;
  return SeasonValue{0};  // season-blind models count everything at t = 0
}

void Model::train(const Instance& x) {
  if (x.labels.empty())
    throw SchemaError("training instance carries no labels");
  train(x, catalog_->intern_class(x.labels));
}

void Model::train(const Instance& x, ClassIndex y) {
  if (y >= catalog_->class_count())
    throw Error("class index " + std::to_string(y) + " not in catalog");
  Instance adjusted;
  adjusted.values = x.values;
  adjusted.season = effective_season(x);
  store_->update(adjusted, y);
}

void Model::require_trained() const {
  if (store_->total() == 0)
    throw UntrainedError("model '" + name_ + "' has seen no training instances");
}

ScoredPrediction Model::nb_score(const Instance& x) {
  require_trained();
  const double a = config_.alpha;
  const ClassIndex k = catalog_->class_count();
  const Count total = store_->total();
  store_->known_values(x, scratch_.attrs, scratch_.vals);
  const auto& attrs = scratch_.attrs;
  const auto& vals = scratch_.vals;
  std::vector<double> scores(k);
  for (ClassIndex y = 0; y < k; ++y) {
    LogProduct lp;
    lp.mul((static_cast<double>(store_->class_count(y)) + a) /
           (static_cast<double>(total) + a * k));
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      const double num =
          static_cast<double>(store_->class_attr_value_count(y, attrs[i], vals[i])) + a;
      const double den =
          static_cast<double>(store_->class_attr_known_count(y, attrs[i])) +
          a * store_->schema().cardinalities[attrs[i]];
      lp.mul(num / den);
    }
    scores[y] = lp.log_value();
  }
  return finalize(std::move(scores));
}

ScoredPrediction Model::nb_fallback(const Instance& x) {
  ScoredPrediction sp = nb_score(x);
  sp.fallback_used = true;
  return sp;
}

ScoredPrediction Model::aode_score(const Instance& x) {
  if (store_->schema().season_cardinality != 1)
    throw Error("aode scoring requires a season-blind store (T = 1)");
  return saode_score_at(x, SeasonValue{0}, /*seasonal_terms=*/false);
}

ScoredPrediction Model::saode_score(const Instance& x) {
  require_trained();
  if (!x.season) return nb_fallback(x);
  return saode_score_at(x, *x.season, /*seasonal_terms=*/true);
}

// Shared core of the one-dependence rules. With seasonal_terms the score of
// class y is
//   log P(y) + log P(x_t|y)
//     + logsumexp_i [ log P(y, x_i, x_t) + sum_j log P(x_j | y, x_i, x_t) ]
//     - log p_count
// over parents i whose observed value has been seen at least m times; without
// seasonal_terms the two leading terms vanish and t is the single season 0.
// Falls back to naive Bayes when no parent qualifies.
ScoredPrediction Model::saode_score_at(const Instance& x, SeasonValue t,
                                       bool seasonal_terms) {
  require_trained();
  const double a = config_.alpha;
  const ClassIndex k = catalog_->class_count();
  const SeasonValue T = store_->schema().season_cardinality;
  const Count total = store_->total();
  const auto& cards = store_->schema().cardinalities;

  store_->gather(x, t, scratch_);
  const QueryCounts& qc = scratch_;
  const std::size_t K = qc.known();

  eligible_.clear();
  for (std::size_t i = 0; i < K; ++i)
    if (store_->parent_eligible(qc.attrs[i], qc.vals[i], config_.min_parent_count))
      eligible_.push_back(i);
  if (eligible_.empty()) return nb_fallback(x);

  const double log_pcount = std::log(static_cast<double>(eligible_.size()));
  std::vector<double> scores(k);
  terms_.resize(eligible_.size());
  for (ClassIndex y = 0; y < k; ++y) {
    const bool have_counts = y < qc.classes;
    const Count* marg_row =
        have_counts ? qc.marginal.data() + static_cast<std::size_t>(y) * K : nullptr;
    for (std::size_t e = 0; e < eligible_.size(); ++e) {
      const std::size_t i = eligible_[e];
      const Count n_parent = have_counts ? marg_row[i] : 0;
      LogProduct lp;
      // joint of class, parent value and season cell
      lp.mul((static_cast<double>(n_parent) + a) /
             (static_cast<double>(total) +
              a * static_cast<double>(k) * T * cards[qc.attrs[i]]));
      const double parent_base = static_cast<double>(n_parent);
      const Count* pair_row =
          have_counts
              ? qc.pair.data() + (static_cast<std::size_t>(y) * K + i) * K
              : nullptr;
      for (std::size_t j = 0; j < K; ++j) {
        const Count n_pair = have_counts ? pair_row[j] : 0;
        lp.mul((static_cast<double>(n_pair) + a) /
               (parent_base + a * cards[qc.attrs[j]]));
      }
      terms_[e] = lp.log_value();
    }
    double s = log_sum_exp(terms_) - log_pcount;
    if (seasonal_terms) {
      const double c_y = static_cast<double>(store_->class_count(y));
      s += std::log((c_y + a) / (static_cast<double>(total) + a * k));
      s += std::log(
          (static_cast<double>(store_->class_season_count(y, t)) + a) /
          (c_y + a * T));
    }
    scores[y] = s;
  }
  return finalize(std::move(scores));
}

ScoredPrediction Model::score(const Instance& x) {
  switch (kind_) {
    case ModelKind::Nb:
      return nb_score(x);
    case ModelKind::Aode:
      return aode_score(x);
    case ModelKind::Saode:
      return saode_score(x);
  }
  throw Error("unknown model kind");
}

PredictionRecord Model::classify(const Instance& x) {
  return record_from_scores(*catalog_, score(x), x);
}

void Model::describe(std::ostream& out) const {
  const auto& schema = store_->schema();
  out << "kind: " << name_ << "\n"
      << "attributes: " << schema.attribute_count() << "\n"
      << "seasons: " << schema.season_cardinality << "\n"
      << "backend: "
      << (store_->backend() == StoreBackend::BinarySparse ? "binary-sparse" : "general")
      << "\n"
      << "m: " << config_.min_parent_count << ", alpha: " << config_.alpha << "\n"
      << "instances: " << store_->total() << " (seasoned "
      << store_->seasoned_total() << ")\n"
      << "classes: " << catalog_->class_count() << "\n";
  for (ClassIndex y = 0; y < catalog_->class_count(); ++y) {
    out << "  class " << y << " [";
    const auto& labels = catalog_->class_labels(y);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) out << ", ";
      out << catalog_->label_name(labels[i]);
    }
    out << "]: " << store_->class_count(y) << "\n";
  }
}

std::unique_ptr<Model> Model::restore(ModelKind kind, ModelConfig config,
                                      std::shared_ptr<ClassCatalog> catalog,
                                      std::unique_ptr<FrequencyStore> store,
                                      std::string name) {
  if (!catalog || !store) throw DecodeError("model restore needs catalog and store");
  const SeasonValue want_t =
      kind == ModelKind::Saode ? config.season.cardinality : 1;
  if (store->schema().season_cardinality != want_t)
    throw DecodeError("store season cardinality does not match model kind");
  if (store->class_space() > catalog->class_count())
    throw DecodeError("store references classes missing from the catalog");
  auto model = std::unique_ptr<Model>(new Model());
  model->kind_ = kind;
  model->config_ = config;
  model->catalog_ = std::move(catalog);
  model->store_ = std::move(store);
  model->name_ = std::move(name);
  return model;
}

// ---- shared record construction ------------------------------------------

PredictionRecord record_from_scores(const ClassCatalog& catalog,
                                    const ScoredPrediction& scores,
                                    const Instance& x) {
  PredictionRecord rec;
  rec.predicted = catalog.class_labels(scores.best);
  std::vector<double> mass(catalog.label_count(), 0.0);
  for (ClassIndex y = 0; y < scores.probabilities.size(); ++y)
    for (LabelId l : catalog.class_labels(y)) mass[l] += scores.probabilities[y];
  for (LabelId l = 0; l < mass.size(); ++l)
    if (mass[l] > 0.0) rec.label_probabilities.emplace_back(l, mass[l]);
  rec.truth = x.labels;
  rec.season = x.season;
  rec.fallback_used = scores.fallback_used;
  return rec;
}

// ---- SeasonFeatureModel ----------------------------------------------------

SeasonFeatureModel::SeasonFeatureModel(ModelKind inner_kind,
                                       AttributeSchema attributes,
                                       ModelConfig config,
                                       std::shared_ptr<ClassCatalog> catalog) {
  if (inner_kind == ModelKind::Saode)
    throw Error("season-feature wrapper takes an nb or aode inner model");
  source_attributes_ = attributes.attribute_count();
  name_ = inner_kind == ModelKind::Nb ? kKindNames[3] : kKindNames[4];
  AttributeSchema widened = attributes;
  widened.cardinalities.push_back(
      std::max<AttrValue>(config.season.cardinality, 2));
  ModelConfig inner_config = config;
  // The season attribute is the only one that may be unknown, which rules the
  // binary-sparse backend out.
  inner_config.backend = BackendChoice::General;
  inner_ = std::make_unique<Model>(inner_kind, std::move(widened), inner_config,
                                   std::move(catalog));
}

Instance SeasonFeatureModel::widen(const Instance& x) const {
  Instance w;
  w.values.reserve(source_attributes_ + 1);
  std::size_t p = 0;
  for (AttrIndex i = 0; i < source_attributes_; ++i) {
    AttrValue v = 0;
    if (p < x.values.size() && x.values[p].first == i) {
      v = x.values[p].second;
      ++p;
    }
    w.values.emplace_back(i, v);
  }
  if (p != x.values.size())
    throw SchemaError("attribute index " + std::to_string(x.values[p].first) +
                      " out of range (n=" + std::to_string(source_attributes_) + ")");
  if (x.season)
    w.values.emplace_back(source_attributes_, *x.season);
  w.labels = x.labels;
  return w;
}

void SeasonFeatureModel::train(const Instance& x) { inner_->train(widen(x)); }

PredictionRecord SeasonFeatureModel::classify(const Instance& x) {
  PredictionRecord rec = inner_->classify(widen(x));
  rec.season = x.season;  // report the real season, not the widened encoding
  return rec;
}

void SeasonFeatureModel::describe(std::ostream& out) const {
  out << "kind: " << name_ << " (season appended as attribute "
      << source_attributes_ << ")\n";
  inner_->describe(out);
}

std::unique_ptr<SeasonFeatureModel> SeasonFeatureModel::restore(
    ModelKind inner_kind, ModelConfig config,
    std::shared_ptr<ClassCatalog> catalog,
    std::unique_ptr<FrequencyStore> store, std::string name) {
  if (inner_kind == ModelKind::Saode)
    throw DecodeError("season-feature wrapper takes an nb or aode inner model");
  const AttrIndex widened_n = store->schema().attribute_count();
  if (widened_n == 0)
    throw DecodeError("season-feature store has no attributes");
  if (store->schema().cardinalities.back() !=
      std::max<AttrValue>(config.season.cardinality, 2))
    throw DecodeError("season attribute cardinality mismatch");
  auto model = std::unique_ptr<SeasonFeatureModel>(new SeasonFeatureModel());
  model->source_attributes_ = widened_n - 1;
  model->name_ = std::move(name);
  ModelConfig inner_config = config;
  inner_config.backend = BackendChoice::General;
  model->inner_ = Model::restore(inner_kind, inner_config, std::move(catalog),
                                 std::move(store),
                                 kKindNames[static_cast<int>(inner_kind)]);
  return model;
}

// ---- PerSeasonEnsemble -----------------------------------------------------

PerSeasonEnsemble::PerSeasonEnsemble(ModelKind inner_kind,
                                     AttributeSchema attributes,
                                     ModelConfig config,
                                     std::shared_ptr<ClassCatalog> catalog)
    : catalog_(catalog ? std::move(catalog) : std::make_shared<ClassCatalog>()) {
  if (inner_kind == ModelKind::Saode)
    throw Error("per-season ensemble takes an nb or aode inner model");
  const SeasonValue T = config.season.cardinality;
  if (T < 1) throw SchemaError("season cardinality must be >= 1");
  name_ = inner_kind == ModelKind::Nb ? kKindNames[5] : kKindNames[6];
  cells_.reserve(T);
  for (SeasonValue t = 0; t < T; ++t)
    cells_.push_back(
        std::make_unique<Model>(inner_kind, attributes, config, catalog_));
}

bool PerSeasonEnsemble::trained() const {
  for (const auto& cell : cells_)
    if (cell->trained()) return true;
  return false;
}

SeasonValue PerSeasonEnsemble::route(const Instance& x) const {
  if (!x.season) return 0;  // designated default cell for unknown seasons
  if (*x.season >= cells_.size())
    throw SchemaError("season " + std::to_string(*x.season) + " out of range (T=" +
                      std::to_string(cells_.size()) + ")");
  return *x.season;
}

void PerSeasonEnsemble::train(const Instance& x) {
  cells_[route(x)]->train(x);
}

PredictionRecord PerSeasonEnsemble::classify(const Instance& x) {
  if (!trained())
    throw UntrainedError("ensemble '" + name_ + "' has seen no training instances");
  Model& cell = *cells_[route(x)];
  if (!cell.trained()) {
    // Never-seen season: uniform prior over the shared catalog.
    const ClassIndex k = catalog_->class_count();
    ScoredPrediction sp;
    sp.log_scores.assign(k, -std::log(static_cast<double>(k)));
    sp.probabilities.assign(k, 1.0 / static_cast<double>(k));
    sp.best = 0;
    sp.fallback_used = true;
    return record_from_scores(*catalog_, sp, x);
  }
  return cell.classify(x);
}

void PerSeasonEnsemble::describe(std::ostream& out) const {
  out << "kind: " << name_ << " (" << cells_.size() << " season cells)\n";
  for (SeasonValue t = 0; t < cells_.size(); ++t) {
    out << "-- season " << t << " --\n";
    cells_[t]->describe(out);
  }
}

std::unique_ptr<PerSeasonEnsemble> PerSeasonEnsemble::restore(
    ModelKind inner_kind, ModelConfig config,
    std::shared_ptr<ClassCatalog> catalog,
    std::vector<std::unique_ptr<FrequencyStore>> stores, std::string name) {
  if (inner_kind == ModelKind::Saode)
    throw DecodeError("per-season ensemble takes an nb or aode inner model");
  if (stores.size() != config.season.cardinality || stores.empty())
    throw DecodeError("per-season ensemble store count mismatch");
  auto ens = std::unique_ptr<PerSeasonEnsemble>(new PerSeasonEnsemble());
  ens->name_ = std::move(name);
  ens->catalog_ = catalog;
  for (auto& store : stores)
    ens->cells_.push_back(Model::restore(
        inner_kind, config, catalog, std::move(store),
        kKindNames[static_cast<int>(inner_kind)]));
  return ens;
}

// ---- factory ---------------------------------------------------------------

const std::string& classifier_kind_name(ClassifierKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<ClassifierKind> classifier_kind_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ClassifierKind::AodePerSeason); ++i)
    if (kKindNames[i] == name) return static_cast<ClassifierKind>(i);
  return std::nullopt;
}

std::unique_ptr<StreamClassifier> make_classifier(
    ClassifierKind kind, AttributeSchema attributes, ModelConfig config,
    std::shared_ptr<ClassCatalog> catalog) {
  switch (kind) {
    case ClassifierKind::Nb:
      return std::make_unique<Model>(ModelKind::Nb, std::move(attributes),
                                     config, std::move(catalog));
    case ClassifierKind::Aode:
      return std::make_unique<Model>(ModelKind::Aode, std::move(attributes),
                                     config, std::move(catalog));
    case ClassifierKind::Saode:
      return std::make_unique<Model>(ModelKind::Saode, std::move(attributes),
                                     config, std::move(catalog));
    case ClassifierKind::NbSeasonFeature:
      return std::make_unique<SeasonFeatureModel>(
          ModelKind::Nb, std::move(attributes), config, std::move(catalog));
    case ClassifierKind::AodeSeasonFeature:
      return std::make_unique<SeasonFeatureModel>(
          ModelKind::Aode, std::move(attributes), config, std::move(catalog));
    case ClassifierKind::NbPerSeason:
      return std::make_unique<PerSeasonEnsemble>(
          ModelKind::Nb, std::move(attributes), config, std::move(catalog));
    case ClassifierKind::AodePerSeason:
      return std::make_unique<PerSeasonEnsemble>(
          ModelKind::Aode, std::move(attributes), config, std::move(catalog));
  }
  throw Error("unknown classifier kind");
}

}  // namespace sode
