#include "sode/report.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "sode/errors.hpp"
#include "sode/season.hpp"

namespace sode {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ap gets 4 decimals (a percentage), the [0,1] metrics get 6.
std::string metric_text(int metric_index, double v) {
  return fmt(metric_index == 0 ? "%.4f" : "%.6f", v);
}

MetricRow make_row(std::string scope, const EvaluationLedger& ledger,
                   std::size_t label_count) {
  MetricRow row;
  row.scope = std::move(scope);
  row.n = ledger.records();
  row.ap = ledger.ap();
  row.hl = ledger.hl(label_count);
  row.mla = ledger.mla();
  row.mlfs = ledger.mlfs();
  row.rmse = ledger.rmse(label_count);
  return row;
}

void write_row(std::ostream& out, const RunReport& rep, const MetricRow& row) {
  out << csv_field(rep.config.run_id) << ',' << csv_field(rep.model_name) << ','
      << csv_field(row.scope) << ',' << row.n << ',' << metric_text(0, row.ap)
      << ',' << metric_text(1, row.hl) << ',' << metric_text(2, row.mla) << ','
      << metric_text(3, row.mlfs) << ',' << metric_text(4, row.rmse) << '\n';
}

// Splits one CSV line honoring double-quote escaping.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string> sorted_labels(const RunReport& rep) {
  std::vector<std::string> names = rep.label_names;
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<MetricRow> overall_rows(const RunReport& rep) {
  return {make_row("overall", rep.overall, rep.label_count())};
}

std::vector<MetricRow> window_rows(const RunReport& rep) {
  std::vector<MetricRow> rows;
  rows.reserve(rep.windows.size());
  for (std::size_t w = 0; w < rep.windows.size(); ++w)
    rows.push_back(
        make_row("w" + std::to_string(w), rep.windows[w], rep.label_count()));
  return rows;
}

std::vector<MetricRow> season_rows(const RunReport& rep) {
  std::vector<MetricRow> rows;
  for (const auto& [t, ledger] : rep.seasons)
    rows.push_back(
        make_row("s" + std::to_string(t), ledger, rep.label_count()));
  if (rep.missing_season.records() > 0)
    rows.push_back(make_row("s?", rep.missing_season, rep.label_count()));
  return rows;
}

std::vector<MetricRow> season_label_rows(const RunReport& rep) {
  std::vector<MetricRow> rows;
  for (const auto& [key, ledger] : rep.season_labels)
    rows.push_back(make_row("s" + std::to_string(key.first) + "/" +
                                rep.label_names.at(key.second),
                            ledger, rep.label_count()));
  return rows;
}

void write_report_header(std::ostream& out, const RunReport& rep) {
  const RunConfig& c = rep.config;
  out << "# run=" << c.run_id << '\n';
  out << "# model=" << rep.model_name << '\n';
  out << "# season=" << season_kind_name(c.model.season.kind)
      << " T=" << c.model.season.cardinality << '\n';
  out << "# m=" << c.model.min_parent_count << " alpha=" << c.model.alpha
      << " window=" << c.window << " seed=" << c.seed << '\n';
  out << "# instances=" << rep.overall.records() << " skipped=" << rep.skipped
      << '\n';
  out << "# labels=";
  const auto names = sorted_labels(rep);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out << ',';
    out << names[i];
  }
  out << '\n';
}

void write_report_csv(std::ostream& out, const RunReport& rep,
                      const std::vector<MetricRow>& rows) {
  write_report_header(out, rep);
  out << "run,model,window,n,ap,hl,mla,mlfs,rmse\n";
  for (const MetricRow& row : rows) write_row(out, rep, row);
}

ComparisonEntry read_report_entry(std::istream& in,
                                  const std::string& source_name) {
  ComparisonEntry entry;
  bool have_overall = false;
  bool have_labels = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string labels_prefix = "# labels=";
      if (line.rfind(labels_prefix, 0) == 0) {
        have_labels = true;
        std::string rest = line.substr(labels_prefix.size());
        std::string name;
        std::istringstream parts(rest);
        while (std::getline(parts, name, ','))
          entry.sorted_labels.push_back(name);
      }
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 9 || fields[2] != "overall") continue;
    entry.run_id = fields[0];
    entry.model = fields[1];
    try {
      entry.n = std::stoull(fields[3]);
      for (int m = 0; m < 5; ++m) entry.values[m] = std::stod(fields[4 + m]);
    } catch (const std::exception&) {
      throw DecodeError("malformed overall row in report '" + source_name + "'");
    }
    have_overall = true;
  }
  if (!have_overall)
    throw DecodeError("report '" + source_name + "' has no overall row");
  if (!have_labels)
    throw DecodeError("report '" + source_name + "' has no label header");
  return entry;
}

void write_comparison_csv(std::ostream& out, const ComparisonTable& table) {
  out << "run,model,n,ap,hl,mla,mlfs,rmse,"
         "best_ap,best_hl,best_mla,best_mlfs,best_rmse\n";
  for (const ComparisonRow& row : table.rows) {
    out << csv_field(row.run_id) << ',' << csv_field(row.model) << ',' << row.n;
    for (int m = 0; m < 5; ++m) out << ',' << metric_text(m, row.values[m]);
    for (int m = 0; m < 5; ++m) out << ',' << (row.best[m] ? 1 : 0);
    out << '\n';
  }
}

void write_comparison_text(std::ostream& out, const ComparisonTable& table) {
  const char* headers[8] = {"run", "model", "n",    "ap",
                            "hl",  "mla",   "mlfs", "rmse"};
  std::vector<std::vector<std::string>> cells;
  cells.reserve(table.rows.size());
  for (const ComparisonRow& row : table.rows) {
    std::vector<std::string> line;
    line.push_back(row.run_id);
    line.push_back(row.model);
    line.push_back(std::to_string(row.n));
    for (int m = 0; m < 5; ++m)
      line.push_back(metric_text(m, row.values[m]) + (row.best[m] ? "*" : ""));
    cells.push_back(std::move(line));
  }
  std::size_t widths[8];
  for (int c = 0; c < 8; ++c) {
    widths[c] = std::string(headers[c]).size();
    for (const auto& line : cells) widths[c] = std::max(widths[c], line[c].size());
  }
  auto pad = [&](const std::string& s, std::size_t w) {
    out << s << std::string(w - s.size() + 2, ' ');
  };
  for (int c = 0; c < 8; ++c) pad(headers[c], widths[c]);
  out << '\n';
  for (const auto& line : cells) {
    for (int c = 0; c < 8; ++c) pad(line[c], widths[c]);
    out << '\n';
  }
}

void write_season_mla_svg(std::ostream& out, const RunReport& rep) {
  // Fixed frame and a fixed [0,1] y-scale keep charts comparable across runs.
  const double width = 640, height = 400;
  const double left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const SeasonValue T = rep.config.model.season.cardinality;

  auto xpos = [&](SeasonValue t) {
    return T == 1 ? left + plot_w / 2
                  : left + plot_w * static_cast<double>(t) / (T - 1);
  };
  auto ypos = [&](double v) { return top + plot_h * (1.0 - v); };
  auto num = [&](double v) { return fmt("%.2f", v); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\" text-anchor=\"middle\">per-season accuracy ("
      << rep.config.run_id << ", " << rep.model_name << ")</text>\n";

  // Gridlines and y labels at 0, 0.25, ..., 1.
  for (int g = 0; g <= 4; ++g) {
    const double v = g / 4.0;
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(ypos(v)) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(ypos(v))
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(ypos(v) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">"
        << num(v) << "</text>\n";
  }
  // X labels: one per season value.
  for (SeasonValue t = 0; t < T; ++t)
    out << "<text x=\"" << num(xpos(t)) << "\" y=\"" << num(height - bottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">"
        << t << "</text>\n";
  out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\""
      << num(height - 12)
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">season</text>\n";

  std::string points;
  for (const auto& [t, ledger] : rep.seasons) {
    if (!points.empty()) points += ' ';
    points += num(xpos(t)) + "," + num(ypos(ledger.mla()));
  }
  if (!points.empty())
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
           "points=\""
        << points << "\"/>\n";
  for (const auto& [t, ledger] : rep.seasons)
    out << "<circle cx=\"" << num(xpos(t)) << "\" cy=\""
        << num(ypos(ledger.mla())) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  out << "</svg>\n";
}

}  // namespace sode
