// sode — streaming seasonal Bayes classification toolkit.
//
// Subcommands: vocab, preprocess, generate, run, compare, inspect-model.
// Exit codes: 0 success, 1 runtime/I-O failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sode/classifier.hpp"
#include "sode/errors.hpp"
#include "sode/ingest.hpp"
#include "sode/prequential.hpp"
#include "sode/report.hpp"
#include "sode/season.hpp"
#include "sode/stream_io.hpp"
#include "sode/synth.hpp"
#include "sode/tokenizer.hpp"
#include "sode/vocabulary.hpp"

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sode::Error("cannot open input file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sode::Error("cannot open output file '" + path + "'");
  return out;
}

sode::Tokenizer make_tokenizer(const std::string& stop_words_path) {
  if (stop_words_path.empty()) return sode::Tokenizer();
  std::ifstream in = open_input(stop_words_path);
  return sode::Tokenizer::from_stop_file(in);
}

// Resolves --season/--seasons into a SeasonSpec. Calendar kinds fix T; the
// column kind needs an explicit cardinality.
sode::SeasonSpec make_season_spec(const std::string& kind_name,
                                  std::optional<sode::SeasonValue> seasons) {
  const auto kind = sode::season_kind_from_name(kind_name);
  if (!kind)
    throw CLI::ValidationError("--season must be dow, month, weekend or column");
  switch (*kind) {
    case sode::SeasonSpec::Kind::DayOfWeek:
      return sode::SeasonSpec::day_of_week();
    case sode::SeasonSpec::Kind::MonthOfYear:
      return sode::SeasonSpec::month_of_year();
    case sode::SeasonSpec::Kind::WeekendWeekday:
      return sode::SeasonSpec::weekend_weekday();
    case sode::SeasonSpec::Kind::Column:
      break;
  }
  if (!seasons || *seasons < 1)
    throw CLI::ValidationError(
        "--season column needs --seasons <T> (the season cardinality)");
  return sode::SeasonSpec::column(*seasons);
}

std::string metric_line(const char* run_id, const std::string& model,
                        const sode::RunReport& rep) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "run=%s model=%s n=%llu skipped=%llu ap=%.4f hl=%.6f "
                "mla=%.6f mlfs=%.6f rmse=%.6f",
                run_id, model.c_str(),
                static_cast<unsigned long long>(rep.overall.records()),
                static_cast<unsigned long long>(rep.skipped),
                rep.overall.ap(), rep.overall.hl(rep.label_count()),
                rep.overall.mla(), rep.overall.mlfs(),
                rep.overall.rmse(rep.label_count()));
  return buf;
}

// ---- vocab -----------------------------------------------------------------

struct VocabArgs {
  std::string input, out, stop_words;
  std::size_t vocab_size = 2000;
};

void cmd_vocab(const VocabArgs& a) {
  std::ifstream in = open_input(a.input);
  const sode::Tokenizer tokenizer = make_tokenizer(a.stop_words);
  const sode::VocabBuildResult result =
      sode::build_vocabulary(in, tokenizer, a.vocab_size);
  std::ofstream out = open_output(a.out);
  result.vocabulary.save(out);
  std::cout << "vocabulary: " << result.vocabulary.size() << " terms from "
            << result.documents << " documents (" << result.skipped
            << " skipped) -> " << a.out << "\n";
}

// ---- preprocess --------------------------------------------------------------

struct PreprocessArgs {
  std::string input, vocab, out, stop_words;
  std::string season = "column";
  std::optional<sode::SeasonValue> seasons;
};

void cmd_preprocess(const PreprocessArgs& a) {
  std::ifstream vin = open_input(a.vocab);
  const sode::Vocabulary vocab = sode::Vocabulary::load(vin);
  const sode::SeasonSpec season = make_season_spec(a.season, a.seasons);
  const sode::Tokenizer tokenizer = make_tokenizer(a.stop_words);
  std::ifstream in = open_input(a.input);
  std::ofstream out = open_output(a.out);
  const sode::PreprocessResult result =
      sode::preprocess(in, out, vocab, tokenizer, season);
  std::cout << "encoded " << result.documents << " instances ("
            << result.skipped << " skipped, " << result.unknown_season
            << " with unknown season) -> " << a.out << "\n";
}

// ---- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string spec_path, preset, out, emit_spec;
  sode::AttrIndex attrs = 20;
  sode::ClassIndex classes = 4;
  sode::SeasonValue seasons = 7;
  sode::Count instances = 1000;
  std::uint64_t seed = 0;
  double coupling = 0.0;
  bool instances_set = false, seed_set = false, coupling_set = false;
};

void cmd_generate(const GenerateArgs& a) {
  sode::GeneratorSpec spec;
  if (!a.spec_path.empty()) {
    std::ifstream in = open_input(a.spec_path);
    spec = sode::GeneratorSpec::from_json(in);
    // Flags override the file where explicitly given.
    if (a.instances_set) spec.instances = a.instances;
    if (a.seed_set) spec.seed = a.seed;
    if (a.coupling_set) spec.pair_coupling = a.coupling;
  } else if (a.preset == "flat") {
    spec = sode::GeneratorSpec::flat(a.attrs, a.classes, a.seasons,
                                     a.instances, a.seed);
    spec.pair_coupling = a.coupling;
  } else if (a.preset == "drift") {
    spec = sode::GeneratorSpec::seasonal_drift(a.attrs, a.classes, a.seasons,
                                               a.instances, a.seed);
    spec.pair_coupling = a.coupling;
  } else {
    throw CLI::ValidationError(
        "generate needs --spec <file> or --preset flat|drift");
  }
  spec.validate();

  sode::SyntheticSource source(spec);
  std::ofstream out = open_output(a.out);
  sode::StreamInstance x;
  sode::Count written = 0;
  while (source.next(x)) {
    sode::write_stream_line(out, x);
    ++written;
  }
  if (!out) throw sode::Error("failed writing stream '" + a.out + "'");
  if (!a.emit_spec.empty()) {
    std::ofstream sout = open_output(a.emit_spec);
    spec.to_json(sout);
  }
  std::cout << "generated " << written << " instances (n=" << spec.attributes
            << ", k=" << spec.classes << ", T=" << spec.seasons
            << ", seed=" << spec.seed << ") -> " << a.out << "\n";
}

// ---- run ---------------------------------------------------------------------

struct RunArgs {
  std::string input, out_dir, run_id, vocab, save_model;
  std::string model = "saode";
  std::string season = "column";
  std::optional<sode::SeasonValue> seasons;
  std::optional<sode::AttrIndex> attrs;
  bool season_feature = false, per_season = false;
  bool svg = false, per_label = false;
  sode::Count m = 1;
  double alpha = 1.0;
  std::size_t window = 1000;
  std::uint64_t seed = 0;
};

sode::ClassifierKind resolve_kind(const RunArgs& a) {
  if (a.season_feature && a.per_season)
    throw CLI::ValidationError(
        "--season-feature and --per-season are mutually exclusive");
  if (a.model == "nb")
    return a.season_feature  ? sode::ClassifierKind::NbSeasonFeature
           : a.per_season    ? sode::ClassifierKind::NbPerSeason
                             : sode::ClassifierKind::Nb;
  if (a.model == "aode")
    return a.season_feature  ? sode::ClassifierKind::AodeSeasonFeature
           : a.per_season    ? sode::ClassifierKind::AodePerSeason
                             : sode::ClassifierKind::Aode;
  if (a.model == "saode") {
    if (a.season_feature || a.per_season)
      throw CLI::ValidationError(
          "saode handles the season itself; wrappers apply to nb and aode");
    return sode::ClassifierKind::Saode;
  }
  throw CLI::ValidationError("--model must be nb, aode or saode");
}

void cmd_run(const RunArgs& a) {
  const sode::ClassifierKind kind = resolve_kind(a);
  sode::AttributeSchema schema;
  if (a.attrs && !a.vocab.empty())
    throw CLI::ValidationError("--attrs and --vocab are mutually exclusive");
  if (a.attrs) {
    schema = sode::AttributeSchema::binary(*a.attrs, 1);
  } else if (!a.vocab.empty()) {
    std::ifstream vin = open_input(a.vocab);
    schema = sode::Vocabulary::load(vin).schema();
  } else {
    throw CLI::ValidationError(
        "run needs the stream's attribute width: --attrs <n> or --vocab <file>");
  }

  sode::RunConfig config;
  config.kind = kind;
  config.model.min_parent_count = a.m;
  config.model.alpha = a.alpha;
  config.model.season = make_season_spec(a.season, a.seasons);
  config.window = a.window;
  config.per_label = a.per_label;
  config.keep_records = false;
  config.seed = a.seed;
  config.run_id = a.run_id.empty()
                      ? a.model + (a.season_feature  ? "+sf"
                                   : a.per_season    ? "+ps"
                                                     : "")
                      : a.run_id;

  std::ifstream in = open_input(a.input);
  sode::StreamReader source(in, schema);
  auto catalog = std::make_shared<sode::ClassCatalog>();
  auto classifier =
      sode::make_classifier(config.kind, source.schema(), config.model, catalog);
  const sode::RunReport rep =
      sode::run_prequential(source, config, *classifier, catalog);

  fs::create_directories(a.out_dir);
  const fs::path base = fs::path(a.out_dir) / config.run_id;
  {
    std::ofstream out = open_output((base.string() + ".overall.csv"));
    sode::write_report_csv(out, rep, sode::overall_rows(rep));
  }
  {
    std::ofstream out = open_output(base.string() + ".windows.csv");
    sode::write_report_csv(out, rep, sode::window_rows(rep));
  }
  {
    std::ofstream out = open_output(base.string() + ".seasons.csv");
    sode::write_report_csv(out, rep, sode::season_rows(rep));
  }
  if (a.per_label) {
    std::ofstream out = open_output(base.string() + ".season_labels.csv");
    sode::write_report_csv(out, rep, sode::season_label_rows(rep));
  }
  if (a.svg) {
    std::ofstream out = open_output(base.string() + ".seasons.svg");
    sode::write_season_mla_svg(out, rep);
  }
  if (!a.save_model.empty()) {
    std::ofstream out = open_output(a.save_model);
    sode::save_classifier(*classifier, out);
  }
  std::cout << metric_line(config.run_id.c_str(), rep.model_name, rep) << "\n"
            << "reports -> " << base.string() << ".*.csv\n";
}

// ---- compare -----------------------------------------------------------------

struct CompareArgs {
  std::vector<std::string> inputs;
  std::string out;
};

void cmd_compare(const CompareArgs& a) {
  std::vector<sode::ComparisonEntry> entries;
  entries.reserve(a.inputs.size());
  for (const std::string& path : a.inputs) {
    std::ifstream in = open_input(path);
    entries.push_back(sode::read_report_entry(in, path));
  }
  const sode::ComparisonTable table = sode::compare_entries(entries);
  if (!a.out.empty()) {
    std::ofstream out = open_output(a.out);
    sode::write_comparison_csv(out, table);
  }
  sode::write_comparison_text(std::cout, table);
}

// ---- inspect-model -------------------------------------------------------------

void cmd_inspect(const std::string& model_path) {
  std::ifstream in = open_input(model_path);
  const auto classifier = sode::load_classifier(in);
  classifier->describe(std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming seasonal Bayes classification toolkit"};
  app.require_subcommand(1);

  VocabArgs vocab_args;
  CLI::App* vocab = app.add_subcommand("vocab", "build a vocabulary from JSONL");
  vocab->add_option("--input", vocab_args.input, "JSONL corpus")->required();
  vocab->add_option("--out", vocab_args.out, "vocabulary file")->required();
  vocab->add_option("--vocab-size", vocab_args.vocab_size, "top-K terms")
      ->default_val(2000);
  vocab->add_option("--stop-words", vocab_args.stop_words,
                    "stop-word file (one per line)");

  PreprocessArgs pre_args;
  CLI::App* pre =
      app.add_subcommand("preprocess", "encode JSONL into an instance stream");
  pre->add_option("--input", pre_args.input, "JSONL corpus")->required();
  pre->add_option("--vocab", pre_args.vocab, "vocabulary file")->required();
  pre->add_option("--out", pre_args.out, "encoded stream file")->required();
  pre->add_option("--season", pre_args.season,
                  "season extraction: dow, month, weekend, column")
      ->default_val("column");
  pre->add_option("--seasons", pre_args.seasons,
                  "season cardinality (column kind)");
  pre->add_option("--stop-words", pre_args.stop_words, "stop-word file");

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand("generate", "emit a synthetic stream");
  gen->add_option("--spec", gen_args.spec_path, "generator spec (JSON)");
  gen->add_option("--preset", gen_args.preset, "built-in spec: flat or drift");
  gen->add_option("--out", gen_args.out, "stream file")->required();
  gen->add_option("--emit-spec", gen_args.emit_spec,
                  "write the effective spec as JSON");
  gen->add_option("--attrs", gen_args.attrs, "attributes (presets)")
      ->default_val(20);
  gen->add_option("--classes", gen_args.classes, "label sets (presets)")
      ->default_val(4);
  gen->add_option("--seasons", gen_args.seasons, "seasons (presets)")
      ->default_val(7);
  auto* gi = gen->add_option("--instances", gen_args.instances,
                             "instance count")->default_val(1000);
  auto* gs = gen->add_option("--seed", gen_args.seed, "seed")->default_val(0);
  auto* gc = gen->add_option("--coupling", gen_args.coupling,
                             "odd attributes copy their even neighbor with "
                             "this probability")
                 ->default_val(0.0);
  gen->callback([&] {
    gen_args.instances_set = gi->count() > 0;
    gen_args.seed_set = gs->count() > 0;
    gen_args.coupling_set = gc->count() > 0;
    cmd_generate(gen_args);
  });

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "prequential evaluation of one model");
  run->add_option("--input", run_args.input, "encoded stream")->required();
  run->add_option("--out", run_args.out_dir, "report directory")->required();
  run->add_option("--model", run_args.model, "nb, aode or saode")
      ->default_val("saode");
  run->add_flag("--season-feature", run_args.season_feature,
                "wrap: season as an extra attribute");
  run->add_flag("--per-season", run_args.per_season,
                "wrap: one model per season");
  run->add_option("--season", run_args.season,
                  "season kind: dow, month, weekend, column")
      ->default_val("column");
  run->add_option("--seasons", run_args.seasons,
                  "season cardinality (column kind)");
  run->add_option("--attrs", run_args.attrs, "stream attribute count");
  run->add_option("--vocab", run_args.vocab,
                  "vocabulary file (sets the attribute count)");
  run->add_option("--m", run_args.m, "minimum parent-value frequency")
      ->default_val(1);
  run->add_option("--alpha", run_args.alpha, "smoothing pseudo-count")
      ->default_val(1.0);
  run->add_option("--window", run_args.window, "instances per report window")
      ->default_val(1000);
  run->add_option("--seed", run_args.seed, "echoed into report provenance")
      ->default_val(0);
  run->add_option("--run-id", run_args.run_id, "report row and file prefix");
  run->add_flag("--svg", run_args.svg, "emit per-season accuracy chart");
  run->add_flag("--per-label", run_args.per_label,
                "emit per-(season,label) rows");
  run->add_option("--save-model", run_args.save_model,
                  "serialize the trained model here");

  CompareArgs cmp_args;
  CLI::App* cmp =
      app.add_subcommand("compare", "align several run reports into one table");
  cmp->add_option("--inputs", cmp_args.inputs, "overall report CSVs")
      ->required()
      ->expected(-1);
  cmp->add_option("--out", cmp_args.out, "comparison CSV");

  std::string inspect_path;
  CLI::App* inspect =
      app.add_subcommand("inspect-model", "summarize a serialized model");
  inspect->add_option("--model", inspect_path, "model file")->required();

  vocab->callback([&] { cmd_vocab(vocab_args); });
  pre->callback([&] { cmd_preprocess(pre_args); });
  run->callback([&] { cmd_run(run_args); });
  cmp->callback([&] { cmd_compare(cmp_args); });
  inspect->callback([&] { cmd_inspect(inspect_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
