#include "sode/prequential.hpp"

#include <algorithm>

#include "sode/errors.hpp"
#include "sode/log.hpp"

namespace sode {

namespace {

// Returns a diagnostic for a malformed instance, or nullptr when it is fine.
const char* instance_flaw(const StreamInstance& raw, const AttributeSchema& schema,
                          SeasonValue season_space) {
  if (raw.labels.empty()) return "no labels";
  for (const std::string& name : raw.labels)
    if (name.empty()) return "empty label name";
  AttrIndex prev = 0;
  bool first = true;
  for (const auto& [i, v] : raw.values) {
    if (!first && i <= prev) return "attribute indices not strictly ascending";
    if (i >= schema.attribute_count()) return "attribute index out of range";
    if (v >= schema.cardinalities[i]) return "attribute value out of range";
    prev = i;
    first = false;
  }
  if (raw.season && *raw.season >= season_space) return "season out of range";
  return nullptr;
}

PredictionRecord abstain_record(const Instance& x) {
  PredictionRecord rec;
  rec.truth = x.labels;
  rec.season = x.season;
  rec.abstained = true;
  return rec;
}

}  // namespace

RunReport run_prequential(InstanceSource& source, const RunConfig& config,
                          StreamClassifier& classifier,
                          const std::shared_ptr<ClassCatalog>& catalog) {
  if (config.window < 1) throw Error("window size must be >= 1");
  if (!catalog) throw Error("prequential run needs the classifier's catalog");
  const AttributeSchema& schema = source.schema();
  const SeasonValue season_space = config.model.season.cardinality;

  RunReport rep;
  rep.config = config;
  rep.model_name = classifier.name();

  StreamInstance raw;
  Count accepted = 0;
  Count seen = 0;
  while (source.next(raw)) {
    ++seen;
    if (const char* flaw = instance_flaw(raw, schema, season_space)) {
      ++rep.skipped;
      SODE_INFO("eval", "skipping malformed instance %llu: %s",
                static_cast<unsigned long long>(seen), flaw);
      continue;
    }

    Instance x;
    x.values = raw.values;
    x.season = raw.season;
    x.labels.reserve(raw.labels.size());
    for (const std::string& name : raw.labels)
      x.labels.push_back(catalog->intern_label(name));
    std::sort(x.labels.begin(), x.labels.end());
    x.labels.erase(std::unique(x.labels.begin(), x.labels.end()),
                   x.labels.end());

    // Test ...
    PredictionRecord rec =
        classifier.trained() ? classifier.classify(x) : abstain_record(x);
    // ... then train.
    classifier.train(x);

    rep.overall.add(rec);
    if (accepted % config.window == 0) rep.windows.emplace_back();
    rep.windows.back().add(rec);
    if (rec.season)
      rep.seasons[*rec.season].add(rec);
    else
      rep.missing_season.add(rec);
    if (config.per_label && rec.season)
      for (LabelId l : rec.truth) rep.season_labels[{*rec.season, l}].add(rec);
    if (config.keep_records) rep.records.push_back(rec);
    ++accepted;
  }

  if (accepted == 0)
    throw Error("input stream yielded no valid labeled instance");

  rep.label_names.reserve(catalog->label_count());
  for (LabelId l = 0; l < catalog->label_count(); ++l)
    rep.label_names.push_back(catalog->label_name(l));
  return rep;
}

RunReport run_prequential(InstanceSource& source, const RunConfig& config) {
  auto catalog = std::make_shared<ClassCatalog>();
  auto classifier =
      make_classifier(config.kind, source.schema(), config.model, catalog);
  return run_prequential(source, config, *classifier, catalog);
}

// ---- comparison -------------------------------------------------------------

ComparisonTable compare_entries(const std::vector<ComparisonEntry>& entries) {
  if (entries.empty()) throw Error("nothing to compare");
  for (const ComparisonEntry& e : entries)
    if (e.sorted_labels != entries.front().sorted_labels)
      throw Error("cannot compare runs over different label universes ('" +
                  e.run_id + "' vs '" + entries.front().run_id + "')");

  ComparisonTable table;
  table.rows.reserve(entries.size());
  for (const ComparisonEntry& e : entries) {
    ComparisonRow row;
    row.run_id = e.run_id;
    row.model = e.model;
    row.n = e.n;
    std::copy(e.values, e.values + 5, row.values);
    table.rows.push_back(std::move(row));
  }
  for (int m = 0; m < 5; ++m) {
    double best = table.rows.front().values[m];
    for (const ComparisonRow& row : table.rows)
      best = kMetricHigherBetter[m] ? std::max(best, row.values[m])
                                    : std::min(best, row.values[m]);
    for (ComparisonRow& row : table.rows) row.best[m] = row.values[m] == best;
  }
  return table;
}

ComparisonTable compare_runs(const std::vector<const RunReport*>& reports) {
  std::vector<ComparisonEntry> entries;
  entries.reserve(reports.size());
  for (const RunReport* rep : reports) {
    if (!rep) throw Error("nothing to compare");
    ComparisonEntry e;
    e.run_id = rep->config.run_id;
    e.model = rep->model_name;
    e.n = rep->overall.records();
    e.values[0] = rep->overall.ap();
    e.values[1] = rep->overall.hl(rep->label_count());
    e.values[2] = rep->overall.mla();
    e.values[3] = rep->overall.mlfs();
    e.values[4] = rep->overall.rmse(rep->label_count());
    e.sorted_labels = rep->label_names;
    std::sort(e.sorted_labels.begin(), e.sorted_labels.end());
    entries.push_back(std::move(e));
  }
  return compare_entries(entries);
}

}  // namespace sode
