#include <string>

#include "doctest.h"
#include "support/util.hpp"
#include "timelink/timeml.hpp"

using namespace timelink;
using timelink::testing::capture;
using timelink::testing::kSampleXml;

namespace {

std::string surface(const Document& d, Span s) {
  return d.text.substr(s.begin, s.end - s.begin);
}

}  // namespace

TEST_CASE("a representative document parses into the model") {
  Document d = parse_timeml(kSampleXml);
  CHECK(d.doc_id == "sample_0001");
  CHECK(d.dct.tid == "t0");
  CHECK(d.dct.value == "1989-10-30");
  CHECK(d.dct.function_in_document == "CREATION_TIME");
  CHECK(!d.dct.span.valid());
  CHECK(d.dct_surface == "10/30/89");
  REQUIRE(d.dct.extra.size() == 1);
  CHECK(d.dct.extra[0].first == "temporalFunction");

  REQUIRE(d.event_tokens.size() == 3);
  CHECK(d.event_tokens[0].eid == "e1");
  CHECK(d.event_tokens[0].cls == EventClass::Reporting);
  CHECK(surface(d, d.event_tokens[0].span) == "said");
  CHECK(surface(d, d.event_tokens[2].span) == "rose");

  REQUIRE(d.timexes.size() == 2);
  CHECK(d.timexes[0].tid == "t1");
  CHECK(d.timexes[0].type == TimexType::Date);
  CHECK(surface(d, d.timexes[0].span) == "Friday");
  CHECK(d.timexes[1].type == TimexType::Duration);
  CHECK(d.timexes[1].value == "P2M");

  REQUIRE(d.signals.size() == 1);
  CHECK(surface(d, d.signals[0].span) == "on");
  REQUIRE(d.csignals.size() == 1);
  CHECK(d.csignals[0].cid == "cs1");
  CHECK(surface(d, d.csignals[0].span) == "because");

  REQUIRE(d.events.size() == 3);
  CHECK(d.events[0].eiid == "ei1");
  CHECK(d.events[0].cls == EventClass::Reporting);  // copied from the token
  CHECK(d.events[0].tense == Tense::Past);
  CHECK(d.events[0].span == d.event_tokens[0].span);
  CHECK(d.events[0].polarity == "POS");

  REQUIRE(d.tlinks.size() == 2);
  CHECK(d.tlinks[0].lid == "l1");
  CHECK(d.tlinks[0].source == "ei2");
  CHECK(d.tlinks[0].target == "t1");
  CHECK(d.tlinks[0].rel == RelType::IsIncluded);
  CHECK(d.tlinks[0].signal_id == "s1");
  CHECK(!d.tlinks[0].deduced);
  CHECK(d.tlinks[0].provenance == Provenance::Input);

  REQUIRE(d.clinks.size() == 1);
  CHECK(d.clinks[0].lid == "l3");
  CHECK(d.clinks[0].source == "ei3");
  CHECK(d.clinks[0].target == "ei2");
  CHECK(d.clinks[0].csignal_id == "cs1");

  REQUIRE(d.preserved_tail.size() == 1);
  CHECK(d.preserved_tail[0].raw.substr(0, 6) == "<SLINK");
  CHECK(d.preserved_head.empty());
  REQUIRE(d.root_attrs.size() == 1);
  CHECK(d.root_attrs[0].first == "xmlns:xsi");

  // Entities decode in text.
  CHECK(d.text.find("R&D assets") != std::string::npos);
}

TEST_CASE("serialization reaches a fixed point and reparses equal") {
  Document d = parse_timeml(kSampleXml);
  std::string once = serialize_timeml(d);
  Document d2 = parse_timeml(once);
  CHECK(d2 == d);
  std::string twice = serialize_timeml(d2);
  CHECK(twice == once);
  // Escapes survive.
  CHECK(once.find("R&amp;D") != std::string::npos);
}

TEST_CASE("unknown inline tags and head elements round-trip") {
  const char* xml = R"(<?xml version="1.0" ?>
<TimeML>
<DOCID>x1</DOCID>
<DCT><TIMEX3 tid="t0" type="DATE" value="2001-02-03" functionInDocument="CREATION_TIME">2001-02-03</TIMEX3></DCT>
<EXTRAINFO>kept verbatim &amp; untouched</EXTRAINFO>
<TEXT>One <ENAMEX TYPE="ORG">Acme</ENAMEX> unit <EVENT eid="e1" class="OCCURRENCE">closed</EVENT>.<BR/></TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB" tense="PAST" aspect="NONE"/>
</TimeML>
)";
  Document d = parse_timeml(xml);
  REQUIRE(d.preserved_head.size() == 1);
  CHECK(d.preserved_head[0].raw ==
        "<EXTRAINFO>kept verbatim &amp; untouched</EXTRAINFO>");
  REQUIRE(d.inline_tags.size() == 2);
  CHECK(d.inline_tags[0].name == "ENAMEX");
  CHECK(surface(d, d.inline_tags[0].span) == "Acme");
  CHECK(d.inline_tags[1].name == "BR");
  CHECK(d.inline_tags[1].span.length() == 0);
  Document d2 = parse_timeml(serialize_timeml(d));
  CHECK(d2 == d);
}

TEST_CASE("parse failures carry byte offsets") {
  auto err = capture([] { parse_timeml("<?xml version=\"1.0\" ?>\n<TimeML>"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  std::string xml(kSampleXml);
  std::size_t at = xml.find("</EVENT>");
  xml.replace(at, 8, "</EVNT>");
  err = capture([&xml] { parse_timeml(xml); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  REQUIRE(err->offset().has_value());
  CHECK(*err->offset() == at);
  // Bad entity, offset at the ampersand.
  const char* bad = "<TimeML><DOCID>a&oops;b</DOCID></TimeML>";
  err = capture([bad] { parse_timeml(bad); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  CHECK(*err->offset() == 16);
}

TEST_CASE("contract violations are format errors") {
  std::string xml(kSampleXml);
  auto expect_kind = [](const std::string& s, Error::Kind k) {
    auto err = capture([&s] { parse_timeml(s); });
    REQUIRE(err.has_value());
    CHECK(err->kind() == k);
  };
  // duplicate event id
  std::string dup = xml;
  std::size_t at = dup.find("e2");
  dup.replace(at, 2, "e1");
  expect_kind(dup, Error::Kind::Format);
  // unknown relType
  std::string rel = xml;
  at = rel.find("IS_INCLUDED");
  rel.replace(at, 11, "IS_INSIDE_OF");
  expect_kind(rel, Error::Kind::Format);
  // a second CREATION_TIME in the text
  std::string twice = xml;
  at = twice.find("type=\"DATE\" value=\"1989-10-27\"");
  twice.insert(at + 30, " functionInDocument=\"CREATION_TIME\"");
  expect_kind(twice, Error::Kind::Format);
  // missing DCT
  std::string nodct = xml;
  std::size_t b = nodct.find("<DCT>");
  std::size_t e = nodct.find("</DCT>") + 6;
  nodct.erase(b, e - b);
  expect_kind(nodct, Error::Kind::Format);
  // CLINK self loop
  std::string loop = xml;
  at = loop.find("target=\"ei2\"");
  loop.replace(at, 12, "target=\"ei3\"");
  expect_kind(loop, Error::Kind::Format);
}

TEST_CASE("dangling references are reference errors") {
  std::string xml(kSampleXml);
  auto expect_ref = [](const std::string& s) {
    auto err = capture([&s] { parse_timeml(s); });
    REQUIRE(err.has_value());
    CHECK(err->kind() == Error::Kind::Reference);
  };
  std::string inst = xml;
  std::size_t at = inst.find("eventID=\"e3\"");
  inst.replace(at, 12, "eventID=\"e9\"");
  expect_ref(inst);
  std::string tl = xml;
  at = tl.find("relatedToTime=\"t1\"");
  tl.replace(at, 18, "relatedToTime=\"t9\"");
  expect_ref(tl);
  std::string sig = xml;
  at = sig.find("signalID=\"s1\"");
  sig.replace(at, 13, "signalID=\"s9\"");
  expect_ref(sig);
  std::string cs = xml;
  at = cs.find("csignalID=\"cs1\"");
  cs.replace(at, 15, "csignalID=\"cs9\"");
  expect_ref(cs);
}

TEST_CASE("endpoint resolution distinguishes entity kinds") {
  Document d = parse_timeml(kSampleXml);
  CHECK(d.resolve_endpoint("ei1") == EntityKind::Event);
  CHECK(d.resolve_endpoint("t1") == EntityKind::TimexEntity);
  CHECK(d.resolve_endpoint("t0") == EntityKind::Dct);
  CHECK(d.resolve_endpoint("e1") == EntityKind::Event);  // unique instance
  CHECK(d.resolve_endpoint("nope") == std::nullopt);
  // A second instance of e1 makes the bare eid ambiguous.
  EventInstance extra = d.events[0];
  extra.eiid = "ei9";
  d.events.push_back(extra);
  CHECK(d.resolve_endpoint("e1") == std::nullopt);
  CHECK(d.instances_of("e1").size() == 2);
}

TEST_CASE("entity node order and fresh link ids") {
  Document d = parse_timeml(kSampleXml);
  auto ids = d.entity_node_ids();
  REQUIRE(ids.size() == 6);
  CHECK(ids[0] == "t0");
  CHECK(ids[1] == "t1");
  CHECK(ids[2] == "t2");
  CHECK(ids[3] == "ei1");
  int counter = 0;
  CHECK(d.fresh_link_id(counter) == "l4");  // l1..l3 are taken
  CHECK(d.fresh_link_id(counter) == "l5");
}

TEST_CASE("deduced links keep their flag across a round trip") {
  Document d = parse_timeml(kSampleXml);
  TLink t;
  t.lid = "l7";
  t.source = "ei1";
  t.target = "ei2";
  t.rel = RelType::After;
  t.deduced = true;
  t.provenance = Provenance::Deduced;
  d.tlinks.push_back(t);
  std::string xml = serialize_timeml(d);
  CHECK(xml.find("deduced=\"true\"") != std::string::npos);
  Document d2 = parse_timeml(xml);
  REQUIRE(d2.tlinks.size() == 3);
  CHECK(d2.tlinks[2].deduced);
  CHECK(d2.tlinks[2].provenance == Provenance::Deduced);
  CHECK(d2 == d);
}

TEST_CASE("file io reports the path on failure") {
  auto err = capture([] { load_timeml_file("/nonexistent/x.tml"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Io);
}
