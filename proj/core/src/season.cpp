#include "sode/season.hpp"

namespace sode {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return !s.empty();
}

unsigned parse_unsigned(std::string_view s) {
  unsigned v = 0;
  for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
  return v;
}

bool is_leap(int y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(int y, unsigned m) {
  static constexpr unsigned kDays[12] = {31, 28, 31, 30, 31, 30,
                                         31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

}  // namespace

std::optional<CivilDate> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
  CivilDate d;
  d.year = static_cast<int>(parse_unsigned(ys));
  d.month = parse_unsigned(ms);
  d.day = parse_unsigned(ds);
  if (d.month < 1 || d.month > 12) return std::nullopt;
  if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
  return d;
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(const CivilDate& d) {
  int y = d.year;
  const unsigned m = d.month;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d.day - 1; // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;             // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

unsigned weekday_of(const CivilDate& d) {
  // 1970-01-01 was a Thursday; Thursday = 3 with Monday = 0.
  const std::int64_t days = days_from_civil(d);
  return static_cast<unsigned>(((days % 7) + 7 + 3) % 7);
}

std::string_view season_kind_name(SeasonSpec::Kind kind) {
  switch (kind) {
    case SeasonSpec::Kind::DayOfWeek:
      return "dow";
    case SeasonSpec::Kind::MonthOfYear:
      return "month";
    case SeasonSpec::Kind::WeekendWeekday:
      return "weekend";
    case SeasonSpec::Kind::Column:
      break;
  }
  return "column";
}

std::optional<SeasonSpec::Kind> season_kind_from_name(std::string_view name) {
  if (name == "dow") return SeasonSpec::Kind::DayOfWeek;
  if (name == "month") return SeasonSpec::Kind::MonthOfYear;
  if (name == "weekend") return SeasonSpec::Kind::WeekendWeekday;
  if (name == "column") return SeasonSpec::Kind::Column;
  return std::nullopt;
}

std::optional<SeasonValue> SeasonSpec::season_of_date(std::string_view date) const {
  if (kind == Kind::Column) return std::nullopt;
  const auto parsed = parse_iso_date(date);
  if (!parsed) return std::nullopt;
  switch (kind) {
    case Kind::DayOfWeek:
      return weekday_of(*parsed);
    case Kind::MonthOfYear:
      return parsed->month - 1;
    case Kind::WeekendWeekday:
      return weekday_of(*parsed) >= 5 ? 1 : 0;
    case Kind::Column:
      break;
  }
  return std::nullopt;
}

}  // namespace sode
