#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sode/schema.hpp"

namespace sode {

// How the season value of an instance is derived from raw documents, and how
// many season values exist (the T of the seasonal classifier).
struct SeasonSpec {
  enum class Kind : std::uint8_t {
    DayOfWeek = 0,       // Monday = 0 .. Sunday = 6 from the document date
    MonthOfYear = 1,     // January = 0 .. December = 11
    WeekendWeekday = 2,  // weekday = 0, Saturday/Sunday = 1
    Column = 3,          // explicit season value carried by the data
  };

  Kind kind = Kind::Column;
  SeasonValue cardinality = 1;

  static SeasonSpec day_of_week() { return {Kind::DayOfWeek, 7}; }
  static SeasonSpec month_of_year() { return {Kind::MonthOfYear, 12}; }
  static SeasonSpec weekend_weekday() { return {Kind::WeekendWeekday, 2}; }
  static SeasonSpec column(SeasonValue cardinality) {
    return {Kind::Column, cardinality};
  }

  // Season of an ISO "YYYY-MM-DD" date under this spec. Empty for Column kind
  // (the data carries the value) and for unparseable dates.
  std::optional<SeasonValue> season_of_date(std::string_view date) const;

  bool operator==(const SeasonSpec&) const = default;
};

// Flag spellings of the season kinds: dow, month, weekend, column.
std::string_view season_kind_name(SeasonSpec::Kind kind);
std::optional<SeasonSpec::Kind> season_kind_from_name(std::string_view name);

// Minimal proleptic-Gregorian calendar helpers; locale-free and deterministic.
struct CivilDate {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31, validated against the month
};

// Strict "YYYY-MM-DD"; empty on any deviation (including impossible dates).
std::optional<CivilDate> parse_iso_date(std::string_view text);
// Days since 1970-01-01 (negative before).
std::int64_t days_from_civil(const CivilDate& d);
// Monday = 0 .. Sunday = 6.
unsigned weekday_of(const CivilDate& d);

}  // namespace sode
