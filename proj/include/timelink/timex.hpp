#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timelink/timeml.hpp"

namespace timelink {

// A normalized TIMEX3 value. Calendar points populate a prefix of the
// significance order year, sub-year (month, week, quarter or half), day,
// time of day; durations carry per-unit amounts; ref tokens are opaque
// relative anchors.
struct IsoValue {
  enum class Kind : std::uint8_t { Calendar, Duration, Ref };
  enum class SubYear : std::uint8_t { None, Month, Week, Quarter, Half };
  enum class TimePart : std::uint8_t {
    None, Clock, Morning, Midday, Afternoon, Evening, Night,
  };
  enum class Ref : std::uint8_t { Past, Present, Future };
  enum class Unit : std::uint8_t { Year, Month, Week, Day, Hour, Minute, Second };

  Kind kind = Kind::Calendar;

  // calendar point
  int year = 0;       // first year covered
  int year_span = 1;  // 1 = year, 10 = decade, 100 = century
  SubYear sub_year = SubYear::None;
  int sub_index = 0;  // month 1-12, week 1-53, quarter 1-4, half 1-2
  std::optional<int> day;
  TimePart time_part = TimePart::None;
  int hour = 0;
  std::optional<int> minute;
  std::optional<int> second;

  // duration, in written order
  std::vector<std::pair<Unit, int>> amounts;

  // ref token
  Ref ref = Ref::Present;

  friend bool operator==(const IsoValue&, const IsoValue&) = default;
};

// Grammar: YY (century), YYY (decade), YYYY, YYYY-MM, YYYY-Www, YYYY-Qn,
// YYYY-Hn, YYYY-MM-DD, optional time suffix Thh[:mm[:ss]] or a part-of-day
// token (TMO/TMI/TAF/TEV/TNI) on day-level points, PnX durations with an
// optional T section, and PAST_REF/PRESENT_REF/FUTURE_REF.
// Throws Error(Value) carrying the raw string otherwise.
IsoValue parse_value(std::string_view s);

// Inverse of parse_value on the supported grammar.
std::string render_value(const IsoValue& v);

// Half-open cover of a calendar point. Clock times cover their containing
// minute (an hour when minutes are absent); part-of-day tokens cover fixed
// local spans (morning [06:00,12:00), midday [12:00,14:00), afternoon
// [14:00,18:00), evening [18:00,22:00), night [22:00,24:00)).
struct Interval {
  std::chrono::sys_seconds start;
  std::chrono::sys_seconds end;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Throws Error(Anchor) for durations and ref tokens.
Interval interval_of(const IsoValue& v);

// Interval comparison outcome over two covers: disjoint, equal, or proper
// containment. Partial overlap yields nothing.
std::optional<RelType> compare_intervals(const Interval& a, const Interval& b);

// The timex-timex rule: only DATE and TIME timexes participate; values that
// do not parse to comparable calendar points yield nothing. Never throws.
std::optional<RelType> tt_rule(const Timex& a, const Timex& b);

}  // namespace timelink
