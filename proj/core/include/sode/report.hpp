#pragma once

// Report rendering: metric rows as CSV (with a provenance comment header so
// every run is reproducible from its report alone), comparison tables, and a
// per-season chart. All numeric formatting is locale-free and fixed-width,
// so identical runs render byte-identical files.

#include <iosfwd>
#include <string>
#include <vector>

#include "sode/prequential.hpp"

namespace sode {

// One rendered metric row. `scope` identifies what the row aggregates:
// "overall", windows "w0", "w1", ..., seasons "s0", ..., missing season "s?"
// and per-(season, label) rows "s0/<label>".
struct MetricRow {
  std::string scope;
  Count n = 0;
  double ap = 0, hl = 0, mla = 0, mlfs = 0, rmse = 0;
};

// Row extraction; ledgers with no records yield no row.
std::vector<MetricRow> overall_rows(const RunReport& rep);
std::vector<MetricRow> window_rows(const RunReport& rep);
std::vector<MetricRow> season_rows(const RunReport& rep);
std::vector<MetricRow> season_label_rows(const RunReport& rep);

// Provenance comment lines ("# key=value") echoing the effective settings:
// run id, model, config, skipped count and the sorted label universe.
void write_report_header(std::ostream& out, const RunReport& rep);
// Header + column names + rows. Columns: run,model,window,n,ap,hl,mla,mlfs,rmse
// (ap rendered with 4 decimals, the other metrics with 6).
void write_report_csv(std::ostream& out, const RunReport& rep,
                      const std::vector<MetricRow>& rows);

// Reads one report CSV back (as written by write_report_csv) and extracts its
// overall row plus the label universe, for cross-run comparison.
ComparisonEntry read_report_entry(std::istream& in, const std::string& source_name);

// Comparison rendering: a CSV with per-metric best flags, and an aligned text
// table marking each best value with '*'.
void write_comparison_csv(std::ostream& out, const ComparisonTable& table);
void write_comparison_text(std::ostream& out, const ComparisonTable& table);

// Per-season MLA line chart (self-contained SVG).
void write_season_mla_svg(std::ostream& out, const RunReport& rep);

// Shared CSV field escaping (quotes fields containing separators).
std::string csv_field(const std::string& value);

}  // namespace sode
