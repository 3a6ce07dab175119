#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sode/errors.hpp"
#include "sode/prequential.hpp"
#include "test_util.hpp"

using namespace sode;

namespace {

StreamInstance stream_instance(
    std::vector<std::pair<AttrIndex, AttrValue>> values,
    std::optional<SeasonValue> season, std::vector<std::string> labels) {
  StreamInstance s;
  s.values = std::move(values);
  s.season = season;
  s.labels = std::move(labels);
  return s;
}

// Random labeled binary stream over n attributes, T seasons, k singleton
// label classes; a fraction of instances has no season.
std::vector<StreamInstance> random_stream(std::uint64_t seed, std::size_t count,
                                          std::size_t n, std::size_t T,
                                          std::size_t k,
                                          double missing_season = 0.1) {
  oracle::Rand rng(seed);
  std::vector<StreamInstance> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    StreamInstance s;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.chance(0.4))
        s.values.emplace_back(static_cast<AttrIndex>(i), 1);
    if (!rng.chance(missing_season))
      s.season = static_cast<SeasonValue>(rng.below(T));
    s.labels = {"L" + std::to_string(rng.below(k))};
    out.push_back(std::move(s));
  }
  return out;
}

RunConfig base_config(ClassifierKind kind, SeasonValue T,
                      std::size_t window = 1000) {
  RunConfig cfg;
  cfg.kind = kind;
  cfg.model.season = SeasonSpec::column(T);
  cfg.window = window;
  cfg.keep_records = true;
  return cfg;
}

double metric(const EvaluationLedger& led, int m, std::size_t labels) {
  switch (m) {
    case 0: return led.ap();
    case 1: return led.hl(labels);
    case 2: return led.mla();
    case 3: return led.mlfs();
    default: return led.rmse(labels);
  }
}

// Forwarding wrapper that logs the call order and how many training
// instances the inner model had absorbed at each classification.
class Spy final : public StreamClassifier {
public:
  Spy(std::unique_ptr<StreamClassifier> inner) : inner_(std::move(inner)) {}
  const std::string& name() const override { return inner_->name(); }
  const ClassCatalog& catalog() const override { return inner_->catalog(); }
  bool trained() const override { return inner_->trained(); }
  void train(const Instance& x) override {
    log.push_back("T");
    ++trains;
    inner_->train(x);
  }
  PredictionRecord classify(const Instance& x) override {
    log.push_back("C" + std::to_string(trains));
    return inner_->classify(x);
  }
  void describe(std::ostream& out) const override { inner_->describe(out); }

  std::vector<std::string> log;
  Count trains = 0;

private:
  std::unique_ptr<StreamClassifier> inner_;
};

}  // namespace

TEST_CASE("a one-instance stream yields a single abstain record") {
  VectorSource src(AttributeSchema::binary(2, 1),
                   {stream_instance({{0, 1}}, SeasonValue{0}, {"only"})});
  auto rep = run_prequential(src, base_config(ClassifierKind::Nb, 2));
  CHECK(rep.overall.records() == 1);
  CHECK(rep.skipped == 0);
  CHECK(rep.overall.ap() == testutil::AbsApprox(0.0).epsilon(0).margin(1e-12));
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].abstained);
  CHECK(rep.records[0].predicted.empty());
  CHECK(rep.records[0].label_probabilities.empty());
  CHECK(rep.records[0].truth == std::vector<LabelId>{0});
  CHECK(rep.label_names == std::vector<std::string>{"only"});
  REQUIRE(rep.windows.size() == 1);
  CHECK(rep.windows[0].records() == 1);
}

TEST_CASE("a constant-label stream is learned after one instance") {
  std::vector<StreamInstance> stream;
  for (int r = 0; r < 100; ++r)
    stream.push_back(stream_instance({{0, 1}}, SeasonValue{0}, {"same"}));
  VectorSource src(AttributeSchema::binary(1, 1), stream);
  auto rep = run_prequential(src, base_config(ClassifierKind::Saode, 2));
  // Only the abstaining first record is wrong: AP = 99.
  CHECK(rep.overall.records() == 100);
  CHECK(rep.overall.exact_matches() == 99);
  CHECK(rep.overall.ap() == testutil::AbsApprox(99.0).epsilon(0).margin(1e-12));
}

TEST_CASE("instances are classified strictly before they train the model") {
  auto catalog = std::make_shared<ClassCatalog>();
  RunConfig cfg = base_config(ClassifierKind::Saode, 3);
  auto schema = AttributeSchema::binary(4, 1);
  Spy spy(make_classifier(cfg.kind, schema, cfg.model, catalog));
  VectorSource src(schema, random_stream(11, 50, 4, 3, 2, 0.0));
  auto rep = run_prequential(src, cfg, spy, catalog);

  REQUIRE(rep.overall.records() == 50);
  REQUIRE(spy.log.size() == 99);  // T, then (C,T) x 49
  CHECK(spy.log[0] == "T");
  for (std::size_t i = 1; i < 50; ++i) {
    CHECK(spy.log[2 * i - 1] == "C" + std::to_string(i));
    CHECK(spy.log[2 * i] == "T");
  }
}

TEST_CASE("repeated runs are deterministic") {
  auto stream = random_stream(21, 400, 5, 4, 3);
  RunConfig cfg = base_config(ClassifierKind::Saode, 4, 64);
  VectorSource a(AttributeSchema::binary(5, 1), stream);
  VectorSource b(AttributeSchema::binary(5, 1), stream);
  auto ra = run_prequential(a, cfg);
  auto rb = run_prequential(b, cfg);
  REQUIRE(ra.overall.records() == rb.overall.records());
  for (int m = 0; m < 5; ++m)
    CHECK(metric(ra.overall, m, ra.label_count()) ==
          metric(rb.overall, m, rb.label_count()));  // bitwise equal
  REQUIRE(ra.records.size() == rb.records.size());
  for (std::size_t i = 0; i < ra.records.size(); ++i) {
    CHECK(ra.records[i].predicted == rb.records[i].predicted);
    CHECK(ra.records[i].label_probabilities == rb.records[i].label_probabilities);
  }
}

TEST_CASE("window ledgers re-aggregate to the overall ledger") {
  VectorSource src(AttributeSchema::binary(5, 1), random_stream(31, 100, 5, 3, 3));
  auto rep = run_prequential(src, base_config(ClassifierKind::Saode, 3, 7));
  REQUIRE(rep.windows.size() == 15);  // ceil(100 / 7)
  for (std::size_t w = 0; w + 1 < rep.windows.size(); ++w)
    CHECK(rep.windows[w].records() == 7);
  CHECK(rep.windows.back().records() == 2);

  EvaluationLedger merged;
  for (const auto& w : rep.windows) merged.merge(w);
  CHECK(merged.records() == rep.overall.records());
  for (int m = 0; m < 5; ++m)
    CHECK(metric(merged, m, rep.label_count()) ==
          testutil::AbsApprox(metric(rep.overall, m, rep.label_count()))
              .epsilon(0)
              .margin(1e-12));
}

TEST_CASE("per-season ledgers partition the stream") {
  VectorSource src(AttributeSchema::binary(5, 1), random_stream(41, 300, 5, 4, 3));
  RunConfig cfg = base_config(ClassifierKind::Saode, 4, 50);
  cfg.per_label = true;
  auto rep = run_prequential(src, cfg);

  Count total = rep.missing_season.records();
  for (const auto& [t, led] : rep.seasons) {
    CHECK(t < 4);
    total += led.records();
  }
  CHECK(total == rep.overall.records());
  CHECK(rep.missing_season.records() > 0);  // the stream has unknown seasons

  // Offline recomputation from the retained records matches every
  // per-season row.
  for (const auto& [t, led] : rep.seasons) {
    EvaluationLedger redo;
    for (const auto& rec : rep.records)
      if (rec.season && *rec.season == t) redo.add(rec);
    REQUIRE(redo.records() == led.records());
    for (int m = 0; m < 5; ++m)
      CHECK(metric(redo, m, rep.label_count()) ==
            testutil::AbsApprox(metric(led, m, rep.label_count()))
                .epsilon(0)
                .margin(1e-12));
  }

  // Per-(season, label) rows hold the records of that season whose truth
  // carries the label.
  for (const auto& [key, led] : rep.season_labels) {
    EvaluationLedger redo;
    for (const auto& rec : rep.records) {
      if (!rec.season || *rec.season != key.first) continue;
      bool has = false;
      for (LabelId l : rec.truth) has = has || l == key.second;
      if (has) redo.add(rec);
    }
    CHECK(redo.records() == led.records());
    CHECK(metric(redo, 2, rep.label_count()) ==
          testutil::AbsApprox(metric(led, 2, rep.label_count()))
              .epsilon(0)
              .margin(1e-12));
  }
}

TEST_CASE("malformed instances are counted, skipped and never trained on") {
  std::vector<StreamInstance> stream = {
      stream_instance({{0, 1}}, SeasonValue{0}, {"a"}),
      stream_instance({{0, 1}}, SeasonValue{0}, {}),            // no labels
      stream_instance({{0, 1}}, SeasonValue{0}, {""}),          // empty name
      stream_instance({{1, 1}, {0, 1}}, SeasonValue{0}, {"a"}), // unsorted
      stream_instance({{7, 1}}, SeasonValue{0}, {"a"}),         // attr range
      stream_instance({{0, 3}}, SeasonValue{0}, {"a"}),         // value range
      stream_instance({{0, 1}}, SeasonValue{9}, {"a"}),         // season range
      stream_instance({{1, 1}}, SeasonValue{1}, {"b"}),
      stream_instance({}, std::nullopt, {"a", "a", "b"}),       // dup labels ok
  };
  VectorSource src(AttributeSchema::binary(2, 1), stream);
  auto rep = run_prequential(src, base_config(ClassifierKind::Saode, 3, 2));
  CHECK(rep.skipped == 6);
  CHECK(rep.overall.records() == 3);
  CHECK(rep.label_names == std::vector<std::string>{"a", "b"});
  // The duplicate-label truth set is deduplicated.
  CHECK(rep.records.back().truth == std::vector<LabelId>{0, 1});
}

TEST_CASE("a stream with no valid instance is an error") {
  VectorSource empty(AttributeSchema::binary(2, 1), {});
  CHECK_THROWS_AS(run_prequential(empty, base_config(ClassifierKind::Nb, 2)), Error);

  VectorSource all_bad(AttributeSchema::binary(2, 1),
                       {stream_instance({{0, 1}}, SeasonValue{0}, {}),
                        stream_instance({{5, 1}}, SeasonValue{0}, {"x"})});
  CHECK_THROWS_AS(run_prequential(all_bad, base_config(ClassifierKind::Nb, 2)),
                  Error);
}

TEST_CASE("season-blind kinds still break records out by true season") {
  VectorSource src(AttributeSchema::binary(4, 1),
                   random_stream(51, 200, 4, 3, 2, 0.0));
  auto rep = run_prequential(src, base_config(ClassifierKind::Nb, 3, 50));
  CHECK(rep.missing_season.records() == 0);
  Count total = 0;
  for (const auto& [t, led] : rep.seasons) total += led.records();
  CHECK(total == 200);
  CHECK(rep.seasons.size() == 3);
}

TEST_CASE("comparison tables flag the best value per metric") {
  auto stream = random_stream(61, 300, 5, 3, 3, 0.05);
  VectorSource sa(AttributeSchema::binary(5, 1), stream);
  VectorSource sb(AttributeSchema::binary(5, 1), stream);
  RunConfig ca = base_config(ClassifierKind::Saode, 3);
  ca.run_id = "seasonal";
  RunConfig cb = base_config(ClassifierKind::Nb, 3);
  cb.run_id = "blind";
  auto ra = run_prequential(sa, ca);
  auto rb = run_prequential(sb, cb);

  auto table = compare_runs({&ra, &rb});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].run_id == "seasonal");
  CHECK(table.rows[0].model == "saode");
  CHECK(table.rows[1].model == "nb");
  for (int m = 0; m < 5; ++m) {
    // Exactly the actual best holders are flagged.
    const double va = table.rows[0].values[m];
    const double vb = table.rows[1].values[m];
    const double best = kMetricHigherBetter[m] ? std::max(va, vb) : std::min(va, vb);
    CHECK(table.rows[0].best[m] == (va == best));
    CHECK(table.rows[1].best[m] == (vb == best));
    CHECK((table.rows[0].best[m] || table.rows[1].best[m]));
  }

  // A run over a different label universe cannot be compared.
  VectorSource sc(AttributeSchema::binary(5, 1), random_stream(62, 100, 5, 3, 2));
  auto rc = run_prequential(sc, base_config(ClassifierKind::Nb, 3));
  CHECK_THROWS_AS(compare_runs({&ra, &rc}), Error);
  CHECK_THROWS_AS(compare_runs({}), Error);

  // Identical runs tie on every metric and both get the flag.
  VectorSource sd(AttributeSchema::binary(5, 1), stream);
  RunConfig cd = ca;
  cd.run_id = "twin";
  auto rd = run_prequential(sd, cd);
  auto twins = compare_runs({&ra, &rd});
  for (int m = 0; m < 5; ++m) {
    CHECK(twins.rows[0].best[m]);
    CHECK(twins.rows[1].best[m]);
  }
}

TEST_CASE("explicit-classifier and convenience overloads agree") {
  auto stream = random_stream(71, 150, 4, 3, 2);
  VectorSource sa(AttributeSchema::binary(4, 1), stream);
  VectorSource sb(AttributeSchema::binary(4, 1), stream);
  RunConfig cfg = base_config(ClassifierKind::AodeSeasonFeature, 3, 40);

  auto catalog = std::make_shared<ClassCatalog>();
  auto classifier =
      make_classifier(cfg.kind, AttributeSchema::binary(4, 1), cfg.model, catalog);
  auto ra = run_prequential(sa, cfg, *classifier, catalog);
  auto rb = run_prequential(sb, cfg);

  CHECK(ra.model_name == rb.model_name);
  CHECK(ra.overall.records() == rb.overall.records());
  for (int m = 0; m < 5; ++m)
    CHECK(metric(ra.overall, m, ra.label_count()) ==
          metric(rb.overall, m, rb.label_count()));
  CHECK(classifier->trained());  // left in its end-of-stream state
}
