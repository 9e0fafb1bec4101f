#include <string>
#include <vector>

#include "doctest.h"
#include "support/util.hpp"
#include "timelink/timex.hpp"

using namespace timelink;
using timelink::testing::capture;

namespace {

// Independent day arithmetic (civil-from-days), used to cross-check the
// library's chrono-based week cover without going through chrono.
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  long long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

// 0 = Monday ... 6 = Sunday.
int weekday_mon0(long long days_since_epoch) {
  long long w = (days_since_epoch + 3) % 7;
  return static_cast<int>(w < 0 ? w + 7 : w);
}

// Monday of ISO week |w| of |y|, as days since the Unix epoch.
long long iso_week_monday(int y, int w) {
  long long jan4 = days_from_civil(y, 1, 4);
  return jan4 - weekday_mon0(jan4) + 7LL * (w - 1);
}

long long epoch_days(std::chrono::sys_seconds t) {
  return std::chrono::duration_cast<std::chrono::days>(t.time_since_epoch())
      .count();
}

Timex date(const char* value, TimexType type = TimexType::Date) {
  Timex t;
  t.tid = "t";
  t.type = type;
  t.value = value;
  return t;
}

}  // namespace

TEST_CASE("value strings parse and render back to themselves") {
  const char* samples[] = {
      "1989",     "198",        "19",         "1989-10",   "1989-10-30",
      "2015-W10", "2015-Q3",    "2015-H1",    "1988-08-10","2015-12-12T19:00",
      "2015-12-12T19:00:30",    "2015-12-12T09",           "2015-12-12TNI",
      "2015-12-12TMO",          "P18M",       "P1Y6M",     "PT2H30M",
      "P2DT6H",   "P3W",        "PAST_REF",   "PRESENT_REF",
      "FUTURE_REF",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    CHECK(render_value(parse_value(s)) == s);
  }
}

TEST_CASE("parsed shapes carry the right kind and fields") {
  IsoValue p18m = parse_value("P18M");
  CHECK(p18m.kind == IsoValue::Kind::Duration);
  REQUIRE(p18m.amounts.size() == 1);
  CHECK(p18m.amounts[0] ==
        std::pair<IsoValue::Unit, int>{IsoValue::Unit::Month, 18});

  IsoValue day = parse_value("1988-08-10");
  CHECK(day.kind == IsoValue::Kind::Calendar);
  CHECK(day.year == 1988);
  CHECK(day.sub_year == IsoValue::SubYear::Month);
  CHECK(day.sub_index == 8);
  CHECK(day.day == 10);
  CHECK(day.time_part == IsoValue::TimePart::None);

  IsoValue ref = parse_value("PRESENT_REF");
  CHECK(ref.kind == IsoValue::Kind::Ref);
  CHECK(ref.ref == IsoValue::Ref::Present);

  IsoValue decade = parse_value("198");
  CHECK(decade.year == 1980);
  CHECK(decade.year_span == 10);
  IsoValue century = parse_value("19");
  CHECK(century.year == 1900);
  CHECK(century.year_span == 100);
}

TEST_CASE("rejected value strings") {
  const char* bad[] = {
      "",      "foo",     "2015-13",    "2015-00",  "2015-02-30", "1",
      "20151", "2015-W60", "2015-Q5",   "2015-H3",  "P",          "P0M",
      "PT",    "P2X",     "PT2D",       "P2H",      "2015T19:00", "2015-12-12T25",
      "2015-12-12T19:61",
  };
  for (const char* s : bad) {
    CAPTURE(s);
    auto err = capture([s] { parse_value(s); });
    REQUIRE(err.has_value());
    CHECK(err->kind() == Error::Kind::Value);
    CHECK(err->detail().find(s) != std::string::npos);
  }
}

TEST_CASE("covers of calendar points") {
  using namespace std::chrono;
  Interval d = interval_of(parse_value("2015-12-12"));
  CHECK(d.start == sys_seconds{sys_days{year{2015} / 12 / 12}});
  CHECK(d.end == sys_seconds{sys_days{year{2015} / 12 / 13}});

  Interval m = interval_of(parse_value("2015-12-12T19:00"));
  CHECK(m.start == sys_seconds{sys_days{year{2015} / 12 / 12} + hours{19}});
  CHECK(m.end - m.start == minutes{1});

  // Seconds stay inside their minute.
  CHECK(interval_of(parse_value("2015-12-12T19:00:30")) == m);

  Interval h = interval_of(parse_value("2015-12-12T19"));
  CHECK(h.end - h.start == hours{1});

  Interval q = interval_of(parse_value("2015-Q4"));
  CHECK(q.start == sys_seconds{sys_days{year{2015} / 10 / 1}});
  CHECK(q.end == sys_seconds{sys_days{year{2016} / 1 / 1}});

  Interval c = interval_of(parse_value("19"));
  CHECK(c.start == sys_seconds{sys_days{year{1900} / 1 / 1}});
  CHECK(c.end == sys_seconds{sys_days{year{2000} / 1 / 1}});

  Interval ni = interval_of(parse_value("2015-12-12TNI"));
  CHECK(ni.start ==
        sys_seconds{sys_days{year{2015} / 12 / 12} + hours{22}});
  CHECK(ni.end == sys_seconds{sys_days{year{2015} / 12 / 13}});

  auto err = capture([] { interval_of(parse_value("P18M")); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Anchor);
  err = capture([] { interval_of(parse_value("PAST_REF")); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Anchor);
}

TEST_CASE("week covers agree with independent calendar arithmetic") {
  struct { int year, week; } probes[] = {
      {2015, 10}, {2015, 1}, {2015, 53}, {2016, 1}, {2016, 52},
      {2020, 53}, {1989, 44}, {2004, 53}, {1999, 52},
  };
  for (auto [y, w] : probes) {
    CAPTURE(y);
    CAPTURE(w);
    char value[16];
    std::snprintf(value, sizeof value, "%04d-W%02d", y, w);
    Interval got = interval_of(parse_value(value));
    long long monday = iso_week_monday(y, w);
    CHECK(epoch_days(got.start) == monday);
    CHECK(epoch_days(got.end) == monday + 7);
  }
  // 2015-W53 exists (2015-12-28 is a Monday); 2019 has no W53.
  auto err = capture([] { parse_value("2019-W53"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Value);
  CHECK(parse_value("2015-W53").sub_index == 53);
}

TEST_CASE("interval comparison covers the five outcomes") {
  auto iv = [](const char* s) { return interval_of(parse_value(s)); };
  CHECK(compare_intervals(iv("2014"), iv("2015")) == RelType::Before);
  CHECK(compare_intervals(iv("2015"), iv("2014")) == RelType::After);
  CHECK(compare_intervals(iv("2015-03"), iv("2015")) == RelType::IsIncluded);
  CHECK(compare_intervals(iv("2015"), iv("2015-03")) == RelType::Includes);
  CHECK(compare_intervals(iv("2015"), iv("2015")) == RelType::Simultaneous);
  // Shared boundary still counts as containment.
  CHECK(compare_intervals(iv("2015-01"), iv("2015")) == RelType::IsIncluded);
  // A week straddling two months compares with neither.
  CHECK(compare_intervals(iv("2015-W05"), iv("2015-01")) == std::nullopt);
  CHECK(compare_intervals(iv("2015-W05"), iv("2015-02")) == std::nullopt);
}

TEST_CASE("timex-timex rule") {
  CHECK(tt_rule(date("2015-12-12T19:00", TimexType::Time),
                date("2015-12-12")) == RelType::IsIncluded);
  CHECK(tt_rule(date("2014"), date("2015")) == RelType::Before);
  CHECK(tt_rule(date("1988-08-10"), date("1988-08-10")) ==
        RelType::Simultaneous);
  CHECK(tt_rule(date("19"), date("1988-08-10")) == RelType::Includes);
  CHECK(tt_rule(date("2015-12-12TNI", TimexType::Time),
                date("2015-12-12TEV", TimexType::Time)) == RelType::After);
  CHECK(tt_rule(date("2015-08"), date("2015-Q3")) == RelType::IsIncluded);

  // Non-participants: durations, sets, refs, unparseable values.
  CHECK(tt_rule(date("P18M", TimexType::Duration), date("2015")) ==
        std::nullopt);
  CHECK(tt_rule(date("2015-12-12", TimexType::Set), date("2015")) ==
        std::nullopt);
  CHECK(tt_rule(date("PRESENT_REF"), date("2015")) == std::nullopt);
  CHECK(tt_rule(date("next week"), date("2015")) == std::nullopt);
}

TEST_CASE("timex-timex rule is antisymmetric on a value pool") {
  const char* pool[] = {
      "2014",        "2015",    "2015-01", "2015-03",    "2015-W05",
      "2015-12-12",  "2015-12", "2015-Q1", "2015-12-12T19:00",
      "2015-12-12TNI", "19",    "198",     "1988-08-10",
  };
  for (const char* a : pool) {
    for (const char* bb : pool) {
      CAPTURE(a);
      CAPTURE(bb);
      auto fwd = tt_rule(date(a), date(bb));
      auto rev = tt_rule(date(bb), date(a));
      CHECK(fwd.has_value() == rev.has_value());
      if (fwd) CHECK(*rev == converse(*fwd));
    }
  }
}
