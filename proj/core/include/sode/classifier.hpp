#pragma once

// Streaming Bayes classifiers over a shared frequency store:
//
//   Model(Nb)      naive Bayes; season-blind (its store has T = 1 and every
//                  instance lands in season 0).
//   Model(Aode)    averaged one-dependence estimators; season-blind like Nb.
//   Model(Saode)   seasonal AODE: season as super-parent of every attribute
//                  plus a class-season weight; falls back to naive Bayes when
//                  the season is unknown or no parent value is frequent
//                  enough.
//   SeasonFeatureModel   baseline: appends the season as an ordinary discrete
//                        attribute and delegates to an inner Nb/Aode.
//   PerSeasonEnsemble    baseline: one inner Nb/Aode per season, routed by the
//                        instance's season.
//
// All scoring is done in log space; per-parent terms are combined with
// log-sum-exp and class probabilities with softmax. Ties in the argmax go to
// the lowest class index.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sode/class_catalog.hpp"
#include "sode/frequency_store.hpp"
#include "sode/schema.hpp"
#include "sode/season.hpp"

namespace sode {

enum class ModelKind : std::uint8_t { Nb = 0, Aode = 1, Saode = 2 };

enum class BackendChoice : std::uint8_t { Auto = 0, BinarySparse = 1, General = 2 };

struct ModelConfig {
  Count min_parent_count = 1;  // m: attribute values seen fewer times cannot parent
  double alpha = 1.0;          // smoothing pseudo-count
  SeasonSpec season;           // cardinality = the T of seasonal models
  BackendChoice backend = BackendChoice::Auto;
};

struct ScoredPrediction {
  std::vector<double> log_scores;     // one per class
  std::vector<double> probabilities;  // softmax of log_scores
  ClassIndex best = 0;                // argmax; lowest index wins ties
  bool fallback_used = false;         // naive-Bayes fallback produced the scores
};

// One prequential step: what was predicted, with what per-label mass, against
// which truth.
struct PredictionRecord {
  std::vector<LabelId> predicted;  // labels of the winning class
  std::vector<std::pair<LabelId, double>> label_probabilities;  // ascending id
  std::vector<LabelId> truth;
  std::optional<SeasonValue> season;
  bool fallback_used = false;
  bool abstained = false;  // produced without a trained model
};

// The streaming contract the evaluation harness consumes.
class StreamClassifier {
public:
  virtual ~StreamClassifier() = default;
  virtual const std::string& name() const = 0;
  virtual const ClassCatalog& catalog() const = 0;
  virtual bool trained() const = 0;
  // Learns one labeled instance (labels must already be interned in this
  // classifier's catalog).
  virtual void train(const Instance& x) = 0;
  // Scores one instance. Throws UntrainedError before any training.
  virtual PredictionRecord classify(const Instance& x) = 0;
  // Human-readable summary (used by the model inspector).
  virtual void describe(std::ostream& out) const = 0;
};

// ---- core models ---------------------------------------------------------

class Model final : public StreamClassifier {
public:
  // `attributes` supplies the attribute cardinalities; its season_cardinality
  // is ignored (derived from `kind` and `config.season`). A null catalog
  // means the model owns a fresh one.
  Model(ModelKind kind, AttributeSchema attributes, ModelConfig config,
        std::shared_ptr<ClassCatalog> catalog = nullptr);

  ModelKind kind() const { return kind_; }
  const ModelConfig& config() const { return config_; }
  const FrequencyStore& store() const { return *store_; }
  const std::shared_ptr<ClassCatalog>& catalog_ptr() const { return catalog_; }

  const std::string& name() const override { return name_; }
  const ClassCatalog& catalog() const override { return *catalog_; }
  bool trained() const override { return store_->total() > 0; }
  void train(const Instance& x) override;
  // Train with a pre-resolved class index (must come from this catalog).
  void train(const Instance& x, ClassIndex y);
  PredictionRecord classify(const Instance& x) override;
  void describe(std::ostream& out) const override;

  // Scoring rules. score() dispatches on kind(); the explicit variants are
  // also exposed for tests and for cross-rule comparisons. aode_score is only
  // defined for season-blind models (store T == 1).
  ScoredPrediction score(const Instance& x);
  ScoredPrediction nb_score(const Instance& x);
  ScoredPrediction aode_score(const Instance& x);
  ScoredPrediction saode_score(const Instance& x);

  // Reconstruction hook used by the model-file loader.
  static std::unique_ptr<Model> restore(ModelKind kind, ModelConfig config,
                                        std::shared_ptr<ClassCatalog> catalog,
                                        std::unique_ptr<FrequencyStore> store,
                                        std::string name);

private:
  Model() = default;
  // Season value the store sees for this kind (0 for season-blind models).
  std::optional<SeasonValue> effective_season(const Instance& x) const;
  ScoredPrediction nb_fallback(const Instance& x);
  // Shared one-dependence core; seasonal_terms adds the class prior and the
  // class-season weight (the Saode rule).
  ScoredPrediction saode_score_at(const Instance& x, SeasonValue t,
                                  bool seasonal_terms);
  void require_trained() const;

  ModelKind kind_ = ModelKind::Nb;
  ModelConfig config_;
  std::string name_;
  std::shared_ptr<ClassCatalog> catalog_;
  std::unique_ptr<FrequencyStore> store_;
  QueryCounts scratch_;
  std::vector<std::size_t> eligible_;  // scratch: qualifying parent positions
  std::vector<double> terms_;          // scratch: per-parent log terms
};

// ---- season-as-feature baseline -------------------------------------------

// Widens the schema with one extra attribute at index n holding the season
// value (cardinality max(T, 2)) and delegates to an inner season-blind model.
// Source attributes are materialized explicitly (absent = value 0, binary
// presence semantics), so only the season attribute can ever be unknown.
class SeasonFeatureModel final : public StreamClassifier {
public:
  SeasonFeatureModel(ModelKind inner_kind, AttributeSchema attributes,
                     ModelConfig config,
                     std::shared_ptr<ClassCatalog> catalog = nullptr);

  const std::string& name() const override { return name_; }
  const ClassCatalog& catalog() const override { return inner_->catalog(); }
  bool trained() const override { return inner_->trained(); }
  void train(const Instance& x) override;
  PredictionRecord classify(const Instance& x) override;
  void describe(std::ostream& out) const override;

  const Model& inner() const { return *inner_; }

  static std::unique_ptr<SeasonFeatureModel> restore(ModelKind inner_kind,
                                                     ModelConfig config,
                                                     std::shared_ptr<ClassCatalog> catalog,
                                                     std::unique_ptr<FrequencyStore> store,
                                                     std::string name);

private:
  SeasonFeatureModel() = default;
  Instance widen(const Instance& x) const;

  AttrIndex source_attributes_ = 0;
  std::string name_;
  std::unique_ptr<Model> inner_;
};

// ---- per-season ensemble baseline -----------------------------------------

// One season-blind inner model per season value, all sharing one catalog.
// Instances with unknown season go to the designated default cell 0. A season
// whose cell is still untrained yields uniform prior-only scores instead of
// an error.
class PerSeasonEnsemble final : public StreamClassifier {
public:
  PerSeasonEnsemble(ModelKind inner_kind, AttributeSchema attributes,
                    ModelConfig config,
                    std::shared_ptr<ClassCatalog> catalog = nullptr);

  const std::string& name() const override { return name_; }
  const ClassCatalog& catalog() const override { return *catalog_; }
  bool trained() const override;
  void train(const Instance& x) override;
  PredictionRecord classify(const Instance& x) override;
  void describe(std::ostream& out) const override;

  SeasonValue cells() const { return static_cast<SeasonValue>(cells_.size()); }
  const Model& cell(SeasonValue t) const { return *cells_.at(t); }

  static std::unique_ptr<PerSeasonEnsemble> restore(
      ModelKind inner_kind, ModelConfig config,
      std::shared_ptr<ClassCatalog> catalog,
      std::vector<std::unique_ptr<FrequencyStore>> stores, std::string name);

private:
  PerSeasonEnsemble() = default;
  SeasonValue route(const Instance& x) const;

  std::string name_;
  std::shared_ptr<ClassCatalog> catalog_;
  std::vector<std::unique_ptr<Model>> cells_;
};

// ---- factory ---------------------------------------------------------------

// Every classifier shape the command line can request.
enum class ClassifierKind : std::uint8_t {
  Nb = 0,
  Aode = 1,
  Saode = 2,
  NbSeasonFeature = 3,
  AodeSeasonFeature = 4,
  NbPerSeason = 5,
  AodePerSeason = 6,
};

// Short display names: nb, aode, saode, nb+sf, aode+sf, nb+ps, aode+ps.
const std::string& classifier_kind_name(ClassifierKind kind);
std::optional<ClassifierKind> classifier_kind_from_name(std::string_view name);

std::unique_ptr<StreamClassifier> make_classifier(
    ClassifierKind kind, AttributeSchema attributes, ModelConfig config,
    std::shared_ptr<ClassCatalog> catalog = nullptr);

// Builds a PredictionRecord from per-class scores: winning class labels plus
// per-label probability mass summed over the classes containing each label.
PredictionRecord record_from_scores(const ClassCatalog& catalog,
                                    const ScoredPrediction& scores,
                                    const Instance& x);

// ---- model files -----------------------------------------------------------

// Model file = header(FileKind::Model) + MCFG + CTLG + one STOR section per
// store. See docs/formats.md.
void save_classifier(const StreamClassifier& classifier, std::ostream& out);
std::unique_ptr<StreamClassifier> load_classifier(std::istream& in);

}  // namespace sode
