// Causal relation extraction: the causal-verb rule sieve, CLINK candidate
// filtering, 3-class classification, TLINK post-editing, cross-document
// propagation, and one-round self-training.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "timelink/annotation.hpp"
#include "timelink/labels.hpp"
#include "timelink/lexicons.hpp"
#include "timelink/linear.hpp"
#include "timelink/timeml.hpp"

namespace timelink {

// Verb-keyed causal sieve. Fires when a lexicon verb lies strictly between
// the two event spans with an admissible dependency configuration on both
// sides; the verb category picks the rule block and the causal direction.
// Clink means pair.e1 causes pair.e2; ClinkR the converse.
std::optional<CausalLabel> causal_verb_rule(const EntityPair& pair,
                                            const AnnotatedDocument& ad,
                                            const CausalVerbLexicon& verbs);

// Keeps a pair iff a causal signal in an event's sentence is dependency-
// connected to that event, the two events share no direct SBJ/OBJ/COORD-CONJ/
// VC/LOC-PMOD/OPRD(-IM) relation, and fewer than five entities lie between.
bool clink_candidate_filter(const EntityPair& pair, const AnnotatedDocument& ad,
                            const CausalSignalLexicon& signals);

// Three-way causal decision for a filtered pair; tlink_label fills the
// pair-label feature slot. confidence, when given, receives the margin.
CausalLabel classify_clink(const LinearModel& model, const FeatureEncoders& enc,
                           const EntityPair& pair, const AnnotatedDocument& ad,
                           std::optional<RelType> tlink_label,
                           double* confidence = nullptr);

// Rewrites the temporal layer so every cause precedes its effect: for each
// clink, a link on the same ordered pair becomes BEFORE, one on the reversed
// pair becomes AFTER, and absent both a fresh BEFORE link is appended with
// ids continuing the shared numbering. Edits carry the post-edit provenance;
// all other links are untouched.
std::vector<TLink> post_edit_tlinks(std::vector<TLink> tlinks,
                                    const std::vector<CLink>& clinks);

// Cross-document event identity over a topical document cluster; each group
// lists (document index, eiid) members naming the same real-world event.
struct CorefPartition {
  std::vector<std::vector<std::pair<std::size_t, std::string>>> groups;
};

// Copies each clink whose confidence reaches conf_threshold onto every
// coreferent unlabeled event pair in the cluster. Returns the new links per
// document with propagated provenance and no confidence; existing labels are
// never overwritten, no event links to itself, and a second pass adds
// nothing once the first pass is applied.
std::vector<std::vector<CLink>> propagate_clinks(
    const std::vector<const Document*>& cluster, const CorefPartition& coref,
    double conf_threshold = 1.75);

// Unlabeled candidate for classification; tlink_label as in classify_clink.
struct CausalCandidate {
  EntityPair pair;
  const AnnotatedDocument* ad = nullptr;
  std::optional<RelType> tlink_label;
};

// One self-training round: classifies the candidates and returns only the
// positive decisions (confidence at least conf_threshold) as labeled
// examples for retraining.
std::vector<TrainExample> self_train(const LinearModel& model,
                                     const FeatureEncoders& enc,
                                     const std::vector<CausalCandidate>& unlabeled,
                                     double conf_threshold = 0.0);

}  // namespace timelink
