#include "timelink/sieves.hpp"

#include <doctest.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "timelink/allen.hpp"
#include "timelink/annotation.hpp"
#include "timelink/reasoner.hpp"
#include "support/util.hpp"

using namespace timelink;

namespace {

AnnotatedDocument annotated(const char* xml, const char* ann) {
  return attach_annotations(parse_timeml(xml), parse_annotation_layer(ann));
}

AnnotatedDocument sieve_doc() { return annotated(testing::kSieveXml, testing::kSieveAnn); }

EventInstance instance(Tense tense, Aspect aspect) {
  EventInstance e;
  e.tense = tense;
  e.aspect = aspect;
  return e;
}

const Lexicons& lexicons() {
  static const Lexicons lex = load_lexicons(TL_DATA_DIR);
  return lex;
}

}  // namespace

TEST_CASE("event-DCT rule fires on the four tense/aspect profiles only") {
  CHECK(ed_rule(instance(Tense::Past, Aspect::Perfective)) == RelType::Before);
  CHECK(ed_rule(instance(Tense::Present, Aspect::Progressive)) == RelType::Includes);
  CHECK(ed_rule(instance(Tense::Present, Aspect::PerfectiveProgressive)) ==
        RelType::Includes);
  CHECK(ed_rule(instance(Tense::Future, Aspect::None)) == RelType::After);
  CHECK(ed_rule(instance(Tense::Future, Aspect::Perfective)) == RelType::After);

  CHECK(ed_rule(instance(Tense::Past, Aspect::None)) == std::nullopt);
  CHECK(ed_rule(instance(Tense::Present, Aspect::None)) == std::nullopt);
  CHECK(ed_rule(instance(Tense::Present, Aspect::Perfective)) == std::nullopt);
  CHECK(ed_rule(instance(Tense::None, Aspect::None)) == std::nullopt);
}

TEST_CASE("event-timex preposition rule labels by sense and attaches signals") {
  AnnotatedDocument ad = sieve_doc();
  const Lexicons& lex = lexicons();

  // "acquired in March": TimePoint preposition on the event head.
  CHECK(et_rule(ad, "ei12", "t1", lex) == EtVerdict{RelType::IsIncluded, ""});
  // "remained until Friday": EndTime preposition inside an annotated SIGNAL.
  CHECK(et_rule(ad, "ei14", "t4", lex) == EtVerdict{RelType::EndedBy, "s1"});

  // The preposition hangs off acquired, not sold.
  CHECK(et_rule(ad, "ei11", "t1", lex) == std::nullopt);
  // Rules never cross sentences and never touch the DCT.
  CHECK(et_rule(ad, "ei1", "t1", lex) == std::nullopt);
  CHECK(et_rule(ad, "ei1", "t0", lex) == std::nullopt);
}

TEST_CASE("duration templates label begin and end timexes before other rules") {
  AnnotatedDocument ad = sieve_doc();
  const Lexicons& lex = lexicons();

  // "from Tuesday to Thursday"
  CHECK(et_rule(ad, "ei13", "t2", lex) == EtVerdict{RelType::BegunBy, ""});
  CHECK(et_rule(ad, "ei13", "t3", lex) == EtVerdict{RelType::EndedBy, ""});
  // "between April and June"
  CHECK(et_rule(ad, "ei15", "t5", lex) == EtVerdict{RelType::BegunBy, ""});
  CHECK(et_rule(ad, "ei15", "t6", lex) == EtVerdict{RelType::EndedBy, ""});
  // "in 2001 - 2004": the pattern outranks the TimePoint preposition.
  CHECK(et_rule(ad, "ei16", "t7", lex) == EtVerdict{RelType::BegunBy, ""});
  CHECK(et_rule(ad, "ei16", "t8", lex) == EtVerdict{RelType::EndedBy, ""});
}

TEST_CASE("bare temporal modifier on the event head means containment") {
  AnnotatedDocument ad = annotated(testing::kBareXml, testing::kBareAnn);
  CHECK(et_rule(ad, "ei1", "t1", lexicons()) == EtVerdict{RelType::IsIncluded, ""});
}

TEST_CASE("event-event dependency rules cover passive, locative, and control") {
  AnnotatedDocument ad = sieve_doc();
  const Lexicons& lex = lexicons();

  // Logical subject of a passive: "touched off by the collapse".
  CHECK(ee_rule(ad, "ei1", "ei2", lex) == RelType::After);
  // The reversed pair sees the -INV path and the converse label.
  CHECK(ee_rule(ad, "ei2", "ei1", lex) == RelType::Before);

  // Control chains: aspectual governors, then general verbs.
  CHECK(ee_rule(ad, "ei3", "ei4", lex) == RelType::Begins);        // began to rise
  CHECK(ee_rule(ad, "ei5", "ei6", lex) == RelType::Ends);          // stopped building
  CHECK(ee_rule(ad, "ei7", "ei8", lex) == RelType::Before);        // attempted to block
  CHECK(ee_rule(ad, "ei9", "ei10", lex) == RelType::Simultaneous); // have been working to develop

  // Continuation governor: same chain with a continuation lemma.
  AnnotatedDocument kept = sieve_doc();
  kept.layer.tokens[19].lemma = "continue";
  CHECK(ee_rule(kept, "ei5", "ei6", lex) == RelType::Includes);

  // No trigger: events of different sentences without coreference.
  CHECK(ee_rule(ad, "ei1", "ei3", lex) == std::nullopt);
}

TEST_CASE("tense-profile rows label same-sentence verb pairs in surface order") {
  AnnotatedDocument ad = sieve_doc();
  const Lexicons& lex = lexicons();

  // "sold the unit it had acquired": perfect on the second verb.
  CHECK(ee_rule(ad, "ei11", "ei12", lex) == RelType::After);
  CHECK(ee_rule(ad, "ei12", "ei11", lex) == RelType::Before);
}

TEST_CASE("reporting governor rules read the bundled tense table") {
  AnnotatedDocument ad = annotated(testing::kTwoSentXml, testing::kTwoSentAnn);
  const Lexicons& lex = lexicons();

  // "Commanders said the assault began": reporting verb dominates.
  CHECK(ee_rule(ad, "ei3", "ei4", lex) == RelType::After);
  CHECK(ee_rule(ad, "ei4", "ei3", lex) == RelType::Before);

  // PAST/PAST with no aspect cue and no domination stays unlabeled.
  CHECK(ee_rule(ad, "ei1", "ei2", lex) == std::nullopt);
}

TEST_CASE("coreferring instances are simultaneous even across sentences") {
  AnnotatedDocument ad = sieve_doc();
  CHECK(ee_rule(ad, "ei4", "ei10", lexicons()) == RelType::Simultaneous);
  CHECK(ee_rule(ad, "ei10", "ei4", lexicons()) == RelType::Simultaneous);
}

TEST_CASE("rule sieve unions the per-kind rules and stays consistent") {
  AnnotatedDocument ad = sieve_doc();
  const Lexicons& lex = lexicons();
  auto pairs = candidate_pairs(ad, Task::Temporal);
  auto links = apply_rule_sieve(ad, pairs, lex);

  REQUIRE(links.size() == 53);
  std::map<std::pair<std::string, std::string>, const TLink*> by_pair;
  for (const auto& link : links) {
    CHECK(link.lid.empty());
    CHECK(link.provenance == Provenance::Rule);
    CHECK_FALSE(link.deduced);
    by_pair[{link.source, link.target}] = &link;
  }
  REQUIRE(by_pair.size() == 53);

  auto rel = [&](const std::string& a, const std::string& b) {
    auto it = by_pair.find({a, b});
    REQUIRE(it != by_pair.end());
    return it->second->rel;
  };

  // Event-event and event-timex verdicts, as exercised above.
  CHECK(rel("ei1", "ei2") == RelType::After);
  CHECK(rel("ei3", "ei4") == RelType::Begins);
  CHECK(rel("ei5", "ei6") == RelType::Ends);
  CHECK(rel("ei7", "ei8") == RelType::Before);
  CHECK(rel("ei9", "ei10") == RelType::Simultaneous);
  CHECK(rel("ei11", "ei12") == RelType::After);
  CHECK(rel("ei12", "t1") == RelType::IsIncluded);
  CHECK(rel("ei13", "t2") == RelType::BegunBy);
  CHECK(rel("ei13", "t3") == RelType::EndedBy);
  CHECK(rel("ei14", "t4") == RelType::EndedBy);
  CHECK(by_pair.at({"ei14", "t4"})->signal_id == "s1");
  CHECK(rel("ei15", "t5") == RelType::BegunBy);
  CHECK(rel("ei15", "t6") == RelType::EndedBy);
  CHECK(rel("ei16", "t7") == RelType::BegunBy);
  CHECK(rel("ei16", "t8") == RelType::EndedBy);

  // Event-DCT hits.
  CHECK(rel("ei9", "t0") == RelType::Includes);
  CHECK(rel("ei12", "t0") == RelType::Before);
  CHECK(rel("ei13", "t0") == RelType::After);

  // Value comparisons label every DATE pair; spot-check orientation.
  CHECK(rel("t0", "t1") == RelType::After);
  CHECK(rel("t1", "t5") == RelType::Before);
  CHECK(rel("t2", "t4") == RelType::After);
  CHECK(rel("t7", "t8") == RelType::Before);

  int event_links = 0;
  for (const auto& [key, link] : by_pair) {
    if (key.first[0] == 'e') ++event_links;
  }
  CHECK(event_links == 17);  // 6 E-E + 8 E-T + 3 E-D; the rest are timex pairs

  // The union of rule labels admits a consistent interpretation.
  Document closed = ad.doc;
  for (const auto& link : links) closed.tlinks.push_back(link);
  auto result = check_document(closed, profile_chain(strict_profile()));
  CHECK(result.consistent);

  // Pure function of the inputs.
  CHECK(apply_rule_sieve(ad, pairs, lex) == links);
}

TEST_CASE("rule sieve on the two-sentence document labels six pairs") {
  AnnotatedDocument ad = annotated(testing::kTwoSentXml, testing::kTwoSentAnn);
  auto links = apply_rule_sieve(ad, candidate_pairs(ad, Task::Temporal), lexicons());

  REQUIRE(links.size() == 6);
  std::map<std::pair<std::string, std::string>, std::pair<RelType, std::string>> got;
  for (const auto& link : links) {
    got[{link.source, link.target}] = {link.rel, link.signal_id};
  }
  using Entry = std::pair<RelType, std::string>;
  CHECK(got.at({"ei3", "ei4"}) == Entry{RelType::After, ""});
  CHECK(got.at({"ei2", "t1"}) == Entry{RelType::IsIncluded, "s2"});
  CHECK(got.at({"ei4", "t2"}) == Entry{RelType::IsIncluded, "s3"});
  CHECK(got.at({"t0", "t1"}) == Entry{RelType::After, ""});
  CHECK(got.at({"t0", "t2"}) == Entry{RelType::After, ""});
  CHECK(got.at({"t1", "t2"}) == Entry{RelType::Before, ""});
}

TEST_CASE("bare-modifier document yields exactly one labeled pair") {
  AnnotatedDocument ad = annotated(testing::kBareXml, testing::kBareAnn);
  auto pairs = candidate_pairs(ad, Task::Temporal);
  REQUIRE(pairs.size() == 3);  // E-T, E-D, T-T against an incomparable DCT

  auto links = apply_rule_sieve(ad, pairs, lexicons());
  REQUIRE(links.size() == 1);
  CHECK(links[0].source == "ei1");
  CHECK(links[0].target == "t1");
  CHECK(links[0].rel == RelType::IsIncluded);
  CHECK(links[0].signal_id.empty());
}

TEST_CASE("empty candidate list produces an empty labeling") {
  AnnotatedDocument ad = annotated(testing::kBareXml, testing::kBareAnn);
  CHECK(apply_rule_sieve(ad, {}, lexicons()).empty());
}
