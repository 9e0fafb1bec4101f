// Deterministic rule classifiers for event-DCT, event-timex, and event-event
// pairs. Rules are precision-first: each returns a label only when its trigger
// pattern holds, and the first matching rule per pair kind wins.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "timelink/annotation.hpp"
#include "timelink/labels.hpp"
#include "timelink/lexicons.hpp"
#include "timelink/timeml.hpp"

namespace timelink {

// Tense/aspect rule for an event against the document creation time:
// PAST+PERFECTIVE -> BEFORE, PRESENT+PROGRESSIVE -> INCLUDES,
// PRESENT+PERFECTIVE_PROGRESSIVE -> INCLUDES, FUTURE -> AFTER.
std::optional<RelType> ed_rule(const EventInstance& e);

// Event-timex rule verdict: the label plus the id of the SIGNAL span covering
// the trigger token, when one does.
struct EtVerdict {
  RelType label = RelType::Before;
  std::string signal_id;

  friend bool operator==(const EtVerdict&, const EtVerdict&) = default;
};

// Same-sentence event-timex rules, tried in order:
//   1. duration patterns "between T1 and T2", "from T1 to/until T2", "T1 - T2"
//      (opener at most 4 tokens before T1, connector at most 2 after T1 and
//      at most 4 before T2; the hyphen form requires adjacency): the pattern's
//      begin timex -> BEGUN_BY, its end timex -> ENDED_BY, for every event in
//      the sentence;
//   2. temporal preposition joining E to T (preposition heads a TMP arc from
//      the event head, timex head hangs off it via PMOD), labeled by sense:
//      TimePoint -> IS_INCLUDED, TimePreceding -> BEFORE, TimeFollowing ->
//      AFTER, Duration -> DURING, StartTime -> BEGUN_BY, EndTime -> ENDED_BY;
//   3. bare timex on a TMP arc from the event head -> IS_INCLUDED.
std::optional<EtVerdict> et_rule(const AnnotatedDocument& ad, const std::string& eiid,
                                 const std::string& tid, const Lexicons& lex);

// Event-event rules, tried in order; all but the last need one sentence:
//   1. dependency path: LGS-PMOD -> AFTER, LOC-PMOD -> IS_INCLUDED,
//      OPRD / OPRD-IM -> by the governing verb: aspectual initiation ->
//      BEGINS, termination -> ENDS, continuation -> INCLUDES, general verb
//      with PERFECTIVE_PROGRESSIVE -> SIMULTANEOUS, general verb -> BEFORE.
//      An -INV path matches the reversed pair and yields the converse.
//   2. reporting governor: a REPORTING event dominating the other picks the
//      first matching (governing tense, governed tense, governed aspect) row
//      of the bundled table; converse when the governor is second in the pair.
//   3. tense-profile rows over same-sentence verb pairs in surface order,
//      from the same table; converse when the pair is given reversed.
//   4. coreferring instances -> SIMULTANEOUS (the only cross-sentence rule).
std::optional<RelType> ee_rule(const AnnotatedDocument& ad, const std::string& e1,
                               const std::string& e2, const Lexicons& lex);

// Union of the value-comparison, event-DCT, event-timex, and event-event rules
// over candidate pairs. Output links keep pair order, carry provenance=rule
// and an empty lid; unlabeled pairs are simply absent.
std::vector<TLink> apply_rule_sieve(const AnnotatedDocument& ad,
                                    const std::vector<EntityPair>& pairs,
                                    const Lexicons& lex);

}  // namespace timelink
