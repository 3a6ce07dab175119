#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sode/errors.hpp"
#include "sode/ingest.hpp"
#include "sode/season.hpp"
#include "sode/stream_io.hpp"
#include "sode/tokenizer.hpp"
#include "sode/vocabulary.hpp"
#include "test_util.hpp"

using namespace sode;

TEST_CASE("tokenizer folds case, splits on punctuation and drops stop words") {
  Tokenizer tok;  // bundled list includes "the"
  CHECK(tok.is_stop_word("the"));
  CHECK(tok.unique_terms("The cat, the CAT!") == std::vector<std::string>{"cat"});
  CHECK(tok.unique_terms("") == std::vector<std::string>{});
  CHECK(tok.unique_terms("  \t\n ") == std::vector<std::string>{});
  // "no" is on the bundled stop list; "deal2" is one token (digits bind).
  CHECK(tok.unique_terms("Deal/no-deal deal2") ==
        std::vector<std::string>{"deal", "deal2"});
  // Digits are token characters; terms come back sorted and deduplicated.
  CHECK(tok.unique_terms("42 Zebra apple zebra 42") ==
        std::vector<std::string>{"42", "apple", "zebra"});
}

TEST_CASE("custom stop lists replace the bundled one") {
  Tokenizer tok({"cat"});
  CHECK_FALSE(tok.is_stop_word("the"));
  CHECK(tok.unique_terms("the cat") == std::vector<std::string>{"the"});

  std::istringstream file("# comment line\ncat\n\nDOG\n");
  Tokenizer from_file = Tokenizer::from_stop_file(file);
  CHECK(from_file.is_stop_word("cat"));
  CHECK(from_file.is_stop_word("dog"));  // stop entries are case-folded
  CHECK_FALSE(from_file.is_stop_word("#"));
  CHECK(from_file.unique_terms("cat dog bird") == std::vector<std::string>{"bird"});
}

TEST_CASE("vocabulary ranks by document frequency with lexicographic ties") {
  Vocabulary::Builder b;
  b.add_document({"a", "b"});
  b.add_document({"a", "c"});
  b.add_document({"a"});
  CHECK(b.documents() == 3);

  Vocabulary top2 = b.top(2);
  REQUIRE(top2.size() == 2);
  CHECK(top2.entries()[0].term == "a");
  CHECK(top2.entries()[0].doc_frequency == 3);
  CHECK(top2.entries()[1].term == "b");  // beats "c" lexicographically
  CHECK(top2.entries()[1].doc_frequency == 1);

  // K above the distinct-term count returns everything, still ordered.
  Vocabulary all = b.top(10);
  REQUIRE(all.size() == 3);
  CHECK(all.entries()[2].term == "c");
  CHECK(all.index_of("a") == AttrIndex{0});
  CHECK(all.index_of("c") == AttrIndex{2});
  CHECK_FALSE(all.index_of("zzz").has_value());

  auto schema = all.schema();
  CHECK(schema.attribute_count() == 3);
  CHECK(schema.all_binary());

  Vocabulary::Builder empty;
  CHECK_THROWS_AS(empty.top(5), Error);
}

TEST_CASE("vocabulary files round-trip and validate on load") {
  Vocabulary::Builder b;
  b.add_document({"alpha", "beta"});
  b.add_document({"alpha"});
  Vocabulary v = b.top(2);

  std::ostringstream out;
  v.save(out);
  CHECK(out.str() == "alpha\t2\nbeta\t1\n");

  std::istringstream in(out.str());
  Vocabulary back = Vocabulary::load(in);
  CHECK(back == v);

  std::istringstream missing_tab("alpha 2\n");
  CHECK_THROWS_AS(Vocabulary::load(missing_tab), DecodeError);
  std::istringstream increasing("alpha\t1\nbeta\t2\n");
  CHECK_THROWS_AS(Vocabulary::load(increasing), DecodeError);
  std::istringstream dup("alpha\t2\nalpha\t1\n");
  CHECK_THROWS_AS(Vocabulary::load(dup), DecodeError);
  std::istringstream zero("alpha\t0\n");
  CHECK_THROWS_AS(Vocabulary::load(zero), DecodeError);
}

TEST_CASE("dates map to seasons under the documented origin") {
  // Monday = 0 ... Sunday = 6.
  auto dow = SeasonSpec::day_of_week();
  CHECK(dow.cardinality == 7);
  CHECK(dow.season_of_date("2024-01-07") == SeasonValue{6});  // a Sunday
  CHECK(dow.season_of_date("2024-01-08") == SeasonValue{0});  // a Monday
  CHECK(dow.season_of_date("2026-08-19") == SeasonValue{2});  // a Wednesday
  CHECK_FALSE(dow.season_of_date("not a date").has_value());
  CHECK_FALSE(dow.season_of_date("2024-13-01").has_value());
  CHECK_FALSE(dow.season_of_date("2024-02-30").has_value());

  auto month = SeasonSpec::month_of_year();
  CHECK(month.cardinality == 12);
  CHECK(month.season_of_date("2024-01-07") == SeasonValue{0});
  CHECK(month.season_of_date("1999-12-31") == SeasonValue{11});

  auto we = SeasonSpec::weekend_weekday();
  CHECK(we.cardinality == 2);
  CHECK(we.season_of_date("2024-01-07") == SeasonValue{1});  // weekend
  CHECK(we.season_of_date("2024-01-08") == SeasonValue{0});  // weekday

  CHECK(season_kind_name(SeasonSpec::Kind::DayOfWeek) == "dow");
  CHECK(season_kind_from_name("month") == SeasonSpec::Kind::MonthOfYear);
  CHECK_FALSE(season_kind_from_name("lunar").has_value());
}

TEST_CASE("document lines parse and encode to presence instances") {
  RawDocument doc = parse_document(
      R"({"text": "Cats chase the mouse", "date": "2024-01-07", "labels": ["pets", "news"]})");
  CHECK(doc.text == "Cats chase the mouse");
  CHECK(doc.date == "2024-01-07");
  CHECK_FALSE(doc.season.has_value());
  CHECK(doc.labels == std::vector<std::string>{"pets", "news"});

  Vocabulary::Builder b;
  b.add_document({"cats", "dogs"});
  b.add_document({"cats", "mouse"});
  b.add_document({"cats"});
  Vocabulary vocab = b.top(3);  // cats=0, dogs=1, mouse=2
  Tokenizer tok;

  StreamInstance enc = encode_document(doc, vocab, tok, SeasonSpec::day_of_week());
  CHECK(enc.values ==
        std::vector<std::pair<AttrIndex, AttrValue>>{{0, 1}, {2, 1}});
  CHECK(enc.season == SeasonValue{6});
  CHECK(enc.labels == doc.labels);

  // No vocabulary overlap -> all-absent instance, still valid.
  RawDocument off_vocab = parse_document(
      R"({"text": "quantum flux", "date": "zzz", "labels": ["x"]})");
  StreamInstance none =
      encode_document(off_vocab, vocab, tok, SeasonSpec::day_of_week());
  CHECK(none.values.empty());
  CHECK_FALSE(none.season.has_value());  // unparseable date -> unknown season

  // Explicit season column.
  RawDocument with_season =
      parse_document(R"({"text": "cats", "season": 3, "labels": ["x"]})");
  CHECK(with_season.season == SeasonValue{3});
  StreamInstance enc2 =
      encode_document(with_season, vocab, tok, SeasonSpec::column(5));
  CHECK(enc2.season == SeasonValue{3});
  // A season value outside the configured space is dropped to unknown.
  StreamInstance enc3 =
      encode_document(with_season, vocab, tok, SeasonSpec::column(2));
  CHECK_FALSE(enc3.season.has_value());
}

TEST_CASE("malformed document lines raise decode errors") {
  CHECK_THROWS_AS(parse_document("not json"), DecodeError);
  CHECK_THROWS_AS(parse_document("[1,2]"), DecodeError);
  CHECK_THROWS_AS(parse_document(R"({"text": 5, "labels": ["a"]})"), DecodeError);
  CHECK_THROWS_AS(parse_document(R"({"text": "x", "labels": "a"})"), DecodeError);
  CHECK_THROWS_AS(parse_document(R"({"text": "x", "labels": [1]})"), DecodeError);
  CHECK_THROWS_AS(parse_document(R"({"text": "x", "season": -2, "labels": ["a"]})"),
                  DecodeError);
  CHECK_THROWS_AS(parse_document(R"({"text": "x", "season": 1.5, "labels": ["a"]})"),
                  DecodeError);
}

TEST_CASE("stream lines carry season, labels and present attributes") {
  StreamInstance x;
  x.season = SeasonValue{3};
  x.labels = {"b", "a"};
  x.values = {{1, 1}, {4, 1}, {7, 0}};  // zero entries are dropped on write

  std::ostringstream out;
  write_stream_line(out, x);
  CHECK(out.str() == "3\tb,a\t1 4\n");

  StreamInstance y;
  y.labels = {"solo"};
  write_stream_line(out, y);
  CHECK(out.str() == "3\tb,a\t1 4\n?\tsolo\t\n");

  StreamInstance parsed;
  REQUIRE(parse_stream_line("3\tb,a\t1 4", parsed));
  CHECK(parsed.season == SeasonValue{3});
  CHECK(parsed.labels == std::vector<std::string>{"b", "a"});
  CHECK(parsed.values ==
        std::vector<std::pair<AttrIndex, AttrValue>>{{1, 1}, {4, 1}});
  REQUIRE(parse_stream_line("?\tsolo\t", parsed));
  CHECK_FALSE(parsed.season.has_value());
  CHECK(parsed.values.empty());

  // Unsorted or duplicate indices are normalized by the parser.
  REQUIRE(parse_stream_line("0\tz\t5 2 5", parsed));
  CHECK(parsed.values ==
        std::vector<std::pair<AttrIndex, AttrValue>>{{2, 1}, {5, 1}});

  // Malformed lines fail and come back label-less.
  for (const char* bad : {"", "3\tonly-two-fields", "x\ta\t1", "3\t\t1",
                          "3\ta\tnotanumber", "3\ta\t1 -2"}) {
    CHECK_FALSE(parse_stream_line(bad, parsed));
    CHECK(parsed.labels.empty());
  }

  // Labels the format cannot carry are rejected before any byte is written.
  StreamInstance dirty;
  dirty.labels = {"ok", "with,comma"};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_stream_line(sink, dirty), SchemaError);
  CHECK(sink.str().empty());
  StreamInstance unlabeled;
  CHECK_THROWS_AS(write_stream_line(sink, unlabeled), SchemaError);
}

TEST_CASE("stream files round-trip through the reader") {
  std::ostringstream file;
  StreamInstance a;
  a.season = SeasonValue{0};
  a.labels = {"x"};
  a.values = {{0, 1}};
  StreamInstance b;
  b.labels = {"y", "x"};
  b.values = {{1, 1}, {2, 1}};
  write_stream_line(file, a);
  write_stream_line(file, b);
  file << "corrupt line without tabs\n";

  std::istringstream in(file.str());
  StreamReader reader(in, AttributeSchema::binary(3, 1));
  StreamInstance got;
  REQUIRE(reader.next(got));
  CHECK(got.season == SeasonValue{0});
  CHECK(got.labels == std::vector<std::string>{"x"});
  REQUIRE(reader.next(got));
  CHECK(got.labels == std::vector<std::string>{"y", "x"});
  CHECK(got.values ==
        std::vector<std::pair<AttrIndex, AttrValue>>{{1, 1}, {2, 1}});
  REQUIRE(reader.next(got));  // the corrupt line surfaces as a sentinel
  CHECK(got.labels.empty());
  CHECK_FALSE(reader.next(got));
  CHECK(reader.lines_read() == 3);
}

TEST_CASE("corpus passes build vocabularies and encoded streams") {
  const std::string corpus =
      R"({"text": "alpha beta", "date": "2024-01-07", "labels": ["one"]})"
      "\n"
      R"({"text": "alpha gamma", "date": "2024-01-08", "labels": ["two"]})"
      "\n"
      "this line is not json\n"
      R"({"text": "alpha beta gamma", "date": "bad-date", "labels": ["one","two"]})"
      "\n"
      R"({"text": "unlabeled", "date": "2024-01-09", "labels": []})"
      "\n"
      R"({"text": "dirty", "date": "2024-01-09", "labels": ["a,b"]})"
      "\n";

  std::istringstream pass1(corpus);
  Tokenizer tok;
  auto built = build_vocabulary(pass1, tok, 2);
  CHECK(built.documents == 5);  // json-parseable lines
  CHECK(built.skipped == 1);    // the non-json line
  REQUIRE(built.vocabulary.size() == 2);
  CHECK(built.vocabulary.entries()[0].term == "alpha");
  CHECK(built.vocabulary.entries()[0].doc_frequency == 3);
  CHECK(built.vocabulary.entries()[1].term == "beta");
  CHECK(built.vocabulary.entries()[1].doc_frequency == 2);

  std::istringstream pass2(corpus);
  std::ostringstream stream_out;
  auto pre = preprocess(pass2, stream_out, built.vocabulary, tok,
                        SeasonSpec::day_of_week());
  CHECK(pre.documents == 3);       // two clean docs + the bad-date doc
  CHECK(pre.skipped == 3);         // non-json, label-less, dirty label
  CHECK(pre.unknown_season == 1);  // the bad-date doc
  CHECK(stream_out.str() ==
        "6\tone\t0 1\n"
        "0\ttwo\t0\n"
        "?\tone,two\t0 1\n");
}
