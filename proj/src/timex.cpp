#include "timelink/timex.hpp"

#include <charconv>
#include <cstdio>

#include "timelink/common.hpp"

namespace timelink {

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::sys_seconds;
using std::chrono::weekday;
using std::chrono::year;
using std::chrono::year_month;

[[noreturn]] void bad_value(std::string_view raw) {
  throw Error(Error::Kind::Value,
              "unrecognized TIMEX3 value '" + std::string(raw) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Parses the Thh[:mm[:ss]] or part-of-day tail; |raw| only for diagnostics.
void parse_time_tail(std::string_view tail, std::string_view raw, IsoValue& v) {
  if (tail == "MO") { v.time_part = IsoValue::TimePart::Morning; return; }
  if (tail == "MI") { v.time_part = IsoValue::TimePart::Midday; return; }
  if (tail == "AF") { v.time_part = IsoValue::TimePart::Afternoon; return; }
  if (tail == "EV") { v.time_part = IsoValue::TimePart::Evening; return; }
  if (tail == "NI") { v.time_part = IsoValue::TimePart::Night; return; }
  if (tail.size() != 2 && tail.size() != 5 && tail.size() != 8) bad_value(raw);
  if (!all_digits(tail.substr(0, 2))) bad_value(raw);
  v.time_part = IsoValue::TimePart::Clock;
  v.hour = to_int(tail.substr(0, 2));
  if (v.hour > 23) bad_value(raw);
  if (tail.size() >= 5) {
    if (tail[2] != ':' || !all_digits(tail.substr(3, 2))) bad_value(raw);
    v.minute = to_int(tail.substr(3, 2));
    if (*v.minute > 59) bad_value(raw);
  }
  if (tail.size() == 8) {
    if (tail[5] != ':' || !all_digits(tail.substr(6, 2))) bad_value(raw);
    v.second = to_int(tail.substr(6, 2));
    if (*v.second > 59) bad_value(raw);
  }
}

IsoValue parse_duration(std::string_view s, std::string_view raw) {
  IsoValue v;
  v.kind = IsoValue::Kind::Duration;
  bool in_time = false;
  std::size_t i = 1;  // past 'P'
  if (i >= s.size()) bad_value(raw);
  while (i < s.size()) {
    if (s[i] == 'T') {
      if (in_time) bad_value(raw);
      in_time = true;
      ++i;
      if (i >= s.size()) bad_value(raw);
      continue;
    }
    std::size_t b = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (b == i || i >= s.size()) bad_value(raw);
    int amount = to_int(s.substr(b, i - b));
    if (amount <= 0) bad_value(raw);
    IsoValue::Unit unit;
    switch (s[i]) {
      case 'Y': unit = IsoValue::Unit::Year; break;
      case 'W': unit = IsoValue::Unit::Week; break;
      case 'D': unit = IsoValue::Unit::Day; break;
      case 'M': unit = in_time ? IsoValue::Unit::Minute : IsoValue::Unit::Month; break;
      case 'H': unit = IsoValue::Unit::Hour; break;
      case 'S': unit = IsoValue::Unit::Second; break;
      default: bad_value(raw);
    }
    bool time_unit = unit == IsoValue::Unit::Hour ||
                     unit == IsoValue::Unit::Minute ||
                     unit == IsoValue::Unit::Second;
    if (time_unit != in_time) bad_value(raw);
    v.amounts.emplace_back(unit, amount);
    ++i;
  }
  if (v.amounts.empty()) bad_value(raw);
  return v;
}

// Monday of ISO week 1: the week containing January 4th.
sys_days week_one_monday(int y) {
  sys_days jan4 = sys_days(year{y} / 1 / 4);
  weekday wd{jan4};
  return jan4 - (wd - weekday{std::chrono::Monday});
}

int weeks_in_iso_year(int y) {
  return static_cast<int>(
      (week_one_monday(y + 1) - week_one_monday(y)).count() / 7);
}

}  // namespace

IsoValue parse_value(std::string_view s) {
  if (s.empty()) bad_value(s);
  if (s == "PAST_REF" || s == "PRESENT_REF" || s == "FUTURE_REF") {
    IsoValue v;
    v.kind = IsoValue::Kind::Ref;
    v.ref = s == "PAST_REF" ? IsoValue::Ref::Past
            : s == "PRESENT_REF" ? IsoValue::Ref::Present
                                 : IsoValue::Ref::Future;
    return v;
  }
  if (s[0] == 'P') return parse_duration(s, s);

  IsoValue v;
  v.kind = IsoValue::Kind::Calendar;
  std::size_t t = s.find('T');
  std::string_view date = s.substr(0, t);
  if (all_digits(date)) {
    if (date.size() == 4) {
      v.year = to_int(date);
    } else if (date.size() == 3) {
      v.year = to_int(date) * 10;
      v.year_span = 10;
    } else if (date.size() == 2) {
      v.year = to_int(date) * 100;
      v.year_span = 100;
    } else {
      bad_value(s);
    }
  } else {
    if (date.size() < 6 || date[4] != '-' || !all_digits(date.substr(0, 4))) {
      bad_value(s);
    }
    v.year = to_int(date.substr(0, 4));
    std::string_view rest = date.substr(5);
    if (rest.size() == 3 && rest[0] == 'W' && all_digits(rest.substr(1))) {
      v.sub_year = IsoValue::SubYear::Week;
      v.sub_index = to_int(rest.substr(1));
      if (v.sub_index < 1 || v.sub_index > weeks_in_iso_year(v.year)) {
        bad_value(s);
      }
    } else if (rest.size() == 2 && rest[0] == 'Q' && rest[1] >= '1' &&
               rest[1] <= '4') {
      v.sub_year = IsoValue::SubYear::Quarter;
      v.sub_index = rest[1] - '0';
    } else if (rest.size() == 2 && rest[0] == 'H' && rest[1] >= '1' &&
               rest[1] <= '2') {
      v.sub_year = IsoValue::SubYear::Half;
      v.sub_index = rest[1] - '0';
    } else if (rest.size() == 2 && all_digits(rest)) {
      v.sub_year = IsoValue::SubYear::Month;
      v.sub_index = to_int(rest);
      if (v.sub_index < 1 || v.sub_index > 12) bad_value(s);
    } else if (rest.size() == 5 && all_digits(rest.substr(0, 2)) &&
               rest[2] == '-' && all_digits(rest.substr(3))) {
      v.sub_year = IsoValue::SubYear::Month;
      v.sub_index = to_int(rest.substr(0, 2));
      v.day = to_int(rest.substr(3));
      if (!(year{v.year} / v.sub_index / *v.day).ok()) bad_value(s);
    } else {
      bad_value(s);
    }
  }
  if (t != std::string_view::npos) {
    if (!v.day.has_value()) bad_value(s);  // time needs a day-level point
    parse_time_tail(s.substr(t + 1), s, v);
  }
  return v;
}

std::string render_value(const IsoValue& v) {
  char buf[16];
  std::string out;
  switch (v.kind) {
    case IsoValue::Kind::Ref:
      return v.ref == IsoValue::Ref::Past      ? "PAST_REF"
             : v.ref == IsoValue::Ref::Present ? "PRESENT_REF"
                                               : "FUTURE_REF";
    case IsoValue::Kind::Duration: {
      out = "P";
      bool time_written = false;
      for (auto [unit, amount] : v.amounts) {
        bool time_unit = unit == IsoValue::Unit::Hour ||
                         unit == IsoValue::Unit::Minute ||
                         unit == IsoValue::Unit::Second;
        if (time_unit && !time_written) {
          out += 'T';
          time_written = true;
        }
        out += std::to_string(amount);
        switch (unit) {
          case IsoValue::Unit::Year: out += 'Y'; break;
          case IsoValue::Unit::Month: out += 'M'; break;
          case IsoValue::Unit::Week: out += 'W'; break;
          case IsoValue::Unit::Day: out += 'D'; break;
          case IsoValue::Unit::Hour: out += 'H'; break;
          case IsoValue::Unit::Minute: out += 'M'; break;
          case IsoValue::Unit::Second: out += 'S'; break;
        }
      }
      return out;
    }
    case IsoValue::Kind::Calendar: break;
  }
  if (v.year_span == 100) {
    std::snprintf(buf, sizeof buf, "%02d", v.year / 100);
  } else if (v.year_span == 10) {
    std::snprintf(buf, sizeof buf, "%03d", v.year / 10);
  } else {
    std::snprintf(buf, sizeof buf, "%04d", v.year);
  }
  out = buf;
  switch (v.sub_year) {
    case IsoValue::SubYear::None: break;
    case IsoValue::SubYear::Month:
      std::snprintf(buf, sizeof buf, "-%02d", v.sub_index);
      out += buf;
      break;
    case IsoValue::SubYear::Week:
      std::snprintf(buf, sizeof buf, "-W%02d", v.sub_index);
      out += buf;
      break;
    case IsoValue::SubYear::Quarter:
      out += "-Q" + std::to_string(v.sub_index);
      break;
    case IsoValue::SubYear::Half:
      out += "-H" + std::to_string(v.sub_index);
      break;
  }
  if (v.day) {
    std::snprintf(buf, sizeof buf, "-%02d", *v.day);
    out += buf;
  }
  switch (v.time_part) {
    case IsoValue::TimePart::None: break;
    case IsoValue::TimePart::Morning: out += "TMO"; break;
    case IsoValue::TimePart::Midday: out += "TMI"; break;
    case IsoValue::TimePart::Afternoon: out += "TAF"; break;
    case IsoValue::TimePart::Evening: out += "TEV"; break;
    case IsoValue::TimePart::Night: out += "TNI"; break;
    case IsoValue::TimePart::Clock:
      std::snprintf(buf, sizeof buf, "T%02d", v.hour);
      out += buf;
      if (v.minute) {
        std::snprintf(buf, sizeof buf, ":%02d", *v.minute);
        out += buf;
      }
      if (v.second) {
        std::snprintf(buf, sizeof buf, ":%02d", *v.second);
        out += buf;
      }
      break;
  }
  return out;
}

Interval interval_of(const IsoValue& v) {
  if (v.kind != IsoValue::Kind::Calendar) {
    throw Error(Error::Kind::Anchor,
                "'" + render_value(v) + "' cannot be placed on the timeline");
  }
  sys_days day_start{};
  sys_days day_end{};
  if (v.sub_year == IsoValue::SubYear::Week) {
    day_start = week_one_monday(v.year) + days{(v.sub_index - 1) * 7};
    day_end = day_start + days{7};
  } else if (v.day) {
    day_start = sys_days(year{v.year} / v.sub_index / *v.day);
    day_end = day_start + days{1};
  } else if (v.sub_year != IsoValue::SubYear::None) {
    int first_month = 0, month_span = 0;
    switch (v.sub_year) {
      case IsoValue::SubYear::Month:
        first_month = v.sub_index;
        month_span = 1;
        break;
      case IsoValue::SubYear::Quarter:
        first_month = v.sub_index * 3 - 2;
        month_span = 3;
        break;
      case IsoValue::SubYear::Half:
        first_month = v.sub_index * 6 - 5;
        month_span = 6;
        break;
      default: break;
    }
    year_month ym = year{v.year} / first_month;
    day_start = sys_days(ym / 1);
    day_end = sys_days((ym + std::chrono::months{month_span}) / 1);
  } else {
    day_start = sys_days(year{v.year} / 1 / 1);
    day_end = sys_days(year{v.year + v.year_span} / 1 / 1);
  }

  Interval out{day_start, day_end};
  switch (v.time_part) {
    case IsoValue::TimePart::None: break;
    case IsoValue::TimePart::Morning:
      out = {day_start + hours{6}, day_start + hours{12}};
      break;
    case IsoValue::TimePart::Midday:
      out = {day_start + hours{12}, day_start + hours{14}};
      break;
    case IsoValue::TimePart::Afternoon:
      out = {day_start + hours{14}, day_start + hours{18}};
      break;
    case IsoValue::TimePart::Evening:
      out = {day_start + hours{18}, day_start + hours{22}};
      break;
    case IsoValue::TimePart::Night:
      out = {day_start + hours{22}, day_start + hours{24}};
      break;
    case IsoValue::TimePart::Clock:
      // Seconds live inside their minute; bare hours cover the hour.
      if (v.minute) {
        out = {day_start + hours{v.hour} + minutes{*v.minute},
               day_start + hours{v.hour} + minutes{*v.minute + 1}};
      } else {
        out = {day_start + hours{v.hour}, day_start + hours{v.hour + 1}};
      }
      break;
  }
  return out;
}

std::optional<RelType> compare_intervals(const Interval& a, const Interval& b) {
  if (a == b) return RelType::Simultaneous;
  if (a.end <= b.start) return RelType::Before;
  if (b.end <= a.start) return RelType::After;
  if (b.start <= a.start && a.end <= b.end) return RelType::IsIncluded;
  if (a.start <= b.start && b.end <= a.end) return RelType::Includes;
  return std::nullopt;  // partial overlap has no label in the rule set
}

std::optional<RelType> tt_rule(const Timex& a, const Timex& b) {
  auto usable = [](const Timex& t) {
    return t.type == TimexType::Date || t.type == TimexType::Time;
  };
  if (!usable(a) || !usable(b)) return std::nullopt;
  try {
    IsoValue va = parse_value(a.value);
    IsoValue vb = parse_value(b.value);
    if (va.kind != IsoValue::Kind::Calendar ||
        vb.kind != IsoValue::Kind::Calendar) {
      return std::nullopt;
    }
    return compare_intervals(interval_of(va), interval_of(vb));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace timelink
