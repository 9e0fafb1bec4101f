#include "timelink/lexicons.hpp"

#include <doctest.h>

#include <string>
#include <vector>

#include "timelink/common.hpp"
#include "support/util.hpp"

using namespace timelink;
using timelink::testing::capture;

TEST_CASE("bundled lexicon directory loads with the expected table sizes") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);
  CHECK(lex.event_signals.entries.size() == 138);
  CHECK(lex.timex_signals.entries.size() == 50);
  CHECK(lex.preposition_senses.size() == 18);
  CHECK(lex.aspectual_verbs.size() == 21);
  CHECK(lex.tense_rules.size() == 12);
  CHECK(lex.causal_verbs.entries.size() == 96);
  CHECK(lex.causal_signals.entries.size() == 65);
  CHECK(lex.dep_path_whitelist.size() == 32);
  CHECK(lex.signal_dep_labels.size() == 12);

  // Spot checks against the shipped tables.
  CHECK(lex.event_signals.cluster_of({"in", "advance", "of"}) == "prior to");
  CHECK(lex.timex_signals.cluster_of({"up", "to", "a", "maximum", "of"}) == "up to");
  CHECK(lex.preposition_senses.at("until") == PrepSense::EndTime);
  CHECK(lex.preposition_senses.at("on") == PrepSense::TimePoint);
  CHECK(lex.aspectual_verbs.at("resume") == AspectualKind::Initiation);
  CHECK(lex.aspectual_verbs.at("halt") == AspectualKind::Termination);
  CHECK(lex.aspectual_verbs.at("maintain") == AspectualKind::Continuation);
}

TEST_CASE("missing lexicon directory fails with the offending path") {
  auto err = capture([] { load_lexicons("/nonexistent"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Io);
  CHECK(err->detail().find("/nonexistent/temporal_signals_event.tsv") != std::string::npos);
}

TEST_CASE("signal matching is greedy, longest-first, and non-overlapping") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);
  std::vector<std::string> forms = {"He",  "arrived", "as", "soon",   "as",
                                    "possible", ",",  "as", "planned"};
  auto matches = lex.event_signals.find(forms);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0] == SignalMatch{2, 4, "as soon as"});
  CHECK(matches[1] == SignalMatch{7, 7, "as"});

  // Lookup is case-insensitive on the input side.
  CHECK(lex.event_signals.find({"Prior", "To"}) ==
        std::vector<SignalMatch>{{0, 1, "prior to"}});

  // Unknown token sequences produce no matches and no cluster.
  CHECK(lex.event_signals.find({"banana"}).empty());
  CHECK(lex.event_signals.cluster_of({"banana"}) == std::nullopt);
}

TEST_CASE("signal lexicon parse enforces the two-column shape") {
  auto err = capture([] { parse_signal_lexicon("before\tbefore\nafter\n"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  CHECK(err->detail().find("line 2") != std::string::npos);

  err = capture([] { parse_signal_lexicon(" \tcluster\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("empty signal text") != std::string::npos);
}

TEST_CASE("causal verb lookup returns all senses in file order") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);

  auto influence = lex.causal_verbs.find("influence");
  REQUIRE(influence.size() == 2);
  CHECK(influence[0]->category == CausalCategory::Cause);
  CHECK(influence[1]->category == CausalCategory::Affect);

  auto lead = lex.causal_verbs.find("lead");
  REQUIRE(lead.size() == 1);
  CHECK(lead[0]->category == CausalCategory::Link);
  CHECK(lead[0]->particle == "to");
  CHECK(lead[0]->direction == CausalLabel::Clink);

  auto stem = lex.causal_verbs.find("stem");
  REQUIRE(stem.size() == 1);
  CHECK(stem[0]->category == CausalCategory::Link);
  CHECK(stem[0]->particle == "from");
  CHECK(stem[0]->direction == CausalLabel::ClinkR);

  auto make = lex.causal_verbs.find("make");
  REQUIRE(make.size() == 1);
  CHECK(make[0]->category == CausalCategory::CauseAmbiguous);
  CHECK(is_ambiguous(make[0]->category));
  CHECK_FALSE(is_ambiguous(CausalCategory::Cause));
  CHECK(make[0]->particle.empty());

  CHECK(lex.causal_verbs.find("walk").empty());
}

TEST_CASE("causal verb parse rejects unknown categories") {
  auto err = capture([] { parse_causal_verbs("melt\tMELT\n"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  CHECK(err->detail().find("MELT") != std::string::npos);
}

TEST_CASE("causal signal patterns match whole-token windows") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);

  // Gapped pattern: an adverb may intervene before the final preposition.
  auto matches = lex.causal_signals.find(
      {"The", "flight", "was", "cancelled", "due", "entirely", "to", "fog"});
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == SignalMatch{4, 6, "due to"});

  // Tokenized clitic form of the same connective family.
  matches = lex.causal_signals.find({"maybe", "that", "'s", "why", "it", "failed"});
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == SignalMatch{1, 3, "is why"});

  // Literal and regex hits over the same window are all reported, sorted by
  // start then descending length.
  matches = lex.causal_signals.find({"because", "of", "the", "storm"});
  REQUIRE(matches.size() == 2);
  CHECK(matches[0] == SignalMatch{0, 1, "because of"});
  CHECK(matches[1] == SignalMatch{0, 0, "because"});

  // A regex hit may not stop mid-token.
  CHECK(lex.causal_signals.find({"it", "was", "due", "tomorrow"}).empty());

  // Literal entries compare whole tokens, not substrings.
  CHECK(lex.causal_signals.find({"he", "has", "left"}).empty());
}

TEST_CASE("causal signal parse validates kind and regex syntax") {
  auto err = capture([] { parse_causal_signals("glob\tdue to\tdue to\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("unknown kind") != std::string::npos);

  err = capture([] { parse_causal_signals("regex\tdue ([a-z]+\\s?to\tdue to\n"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
  CHECK(err->detail().find("line 1") != std::string::npos);
}

TEST_CASE("tense rule rows carry context, wildcard aspect, and label") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);

  int reporting = 0;
  int reichenbach = 0;
  for (const auto& rule : lex.tense_rules) {
    if (rule.context == TenseRuleContext::Reporting) ++reporting;
    if (rule.context == TenseRuleContext::Reichenbach) ++reichenbach;
  }
  CHECK(reporting == 5);
  CHECK(reichenbach == 7);

  // REPORTING PAST PAST NONE -> AFTER pins the anaphoric reading.
  const TenseRule& first = lex.tense_rules.front();
  CHECK(first.context == TenseRuleContext::Reporting);
  CHECK(first.governing == Tense::Past);
  CHECK(first.governed == Tense::Past);
  REQUIRE(first.governed_aspect.has_value());
  CHECK(*first.governed_aspect == Aspect::None);
  CHECK(first.label == RelType::After);

  // Wildcard aspect rows parse to an absent aspect.
  bool saw_wildcard = false;
  for (const auto& rule : lex.tense_rules) {
    if (rule.context == TenseRuleContext::Reporting && rule.governing == Tense::Past &&
        rule.governed == Tense::Future) {
      saw_wildcard = true;
      CHECK_FALSE(rule.governed_aspect.has_value());
      CHECK(rule.label == RelType::Before);
    }
  }
  CHECK(saw_wildcard);
}

TEST_CASE("tense rule parse rejects unknown fields") {
  auto err = capture([] {
    parse_tense_rules("REPORTING\tPAST\tPAST\tNONE\tAFTER\nNARRATIVE\tPAST\tPAST\t*\tAFTER\n");
  });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("line 2") != std::string::npos);
  CHECK(err->detail().find("NARRATIVE") != std::string::npos);

  err = capture([] { parse_tense_rules("REPORTING\tPAST\tSOMETIME\t*\tAFTER\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("SOMETIME") != std::string::npos);

  err = capture([] { parse_tense_rules("REPORTING\tPAST\tPAST\t*\tNEARBY\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("NEARBY") != std::string::npos);
}

TEST_CASE("dependency label tables preserve file order") {
  Lexicons lex = load_lexicons(TL_DATA_DIR);
  CHECK(lex.dep_path_whitelist.front() == "SBJ");
  CHECK(lex.signal_dep_labels.front() == "TMP");

  auto err = capture([] { parse_label_list("SBJ\tOBJ\n"); });
  REQUIRE(err.has_value());
  CHECK(err->kind() == Error::Kind::Parse);
}

TEST_CASE("preposition sense and aspectual tables reject unknown values") {
  auto err = capture([] { parse_preposition_senses("at\tSomewhen\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("Somewhen") != std::string::npos);

  err = capture([] { parse_aspectual_verbs("begin\tSTART\n"); });
  REQUIRE(err.has_value());
  CHECK(err->detail().find("START") != std::string::npos);
}
