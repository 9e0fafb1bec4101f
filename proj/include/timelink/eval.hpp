#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "timelink/allen.hpp"
#include "timelink/reasoner.hpp"
#include "timelink/timeml.hpp"

namespace timelink {

// Precision/recall/F1 with the raw counts that produced them, so reports can
// be micro-averaged by summing. f1 = 2PR/(P+R), 0 when P+R = 0; a ratio with
// a zero denominator is 0 by convention.
struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int p_num = 0;
  int p_den = 0;
  int r_num = 0;
  int r_den = 0;
  // Temporal awareness only: a side that fails the consistency check is
  // scored over its raw annotated edges instead of reduce/closure.
  bool sys_consistent = true;
  bool ref_consistent = true;
};

// Recomputes the ratios of a report from its counts, preserving the flags.
ScoreReport finish_report(ScoreReport r);

// Sums counts across reports and recomputes the ratios; flags are ANDed.
ScoreReport micro_average(const std::vector<ScoreReport>& reports);

// Graph-based TLINK score. Entities are aligned by character span (the DCT
// by role), so the two documents may use different ids; a span present on
// only one side throws Error(Alignment) naming the unmatched spans.
// P = |edges of reduce(sys) entailed by closure(ref)| / |reduce(sys)|, R the
// mirror image; an edge is entailed when the verifying side's relation set
// for the pair is a subset of the edge's set. An inconsistent side keeps its
// raw edge set (no reduction, no closure) and clears its report flag.
ScoreReport temporal_awareness(const Document& sys, const Document& ref,
                               const MappingProfile& profile);

// Exact-match CLINK score over directed (cause, effect) pairs after the same
// span alignment. Stored links are already direction-normalized, so a
// CLINK-R(a,b) in one doc matches a CLINK(b,a) in the other.
ScoreReport clink_prf(const Document& sys, const Document& ref);

// One timegraph query: does |relation| hold between the entities at the two
// spans of the named document?
struct QaQuestion {
  std::string doc_id;
  Span e1;
  RelType relation = RelType::Before;
  Span e2;
  bool gold_yes = true;
};

// Tab-separated, one question per line: doc id, e1 span as "begin:end",
// relation label, e2 span, YES or NO. Blank lines and '#' comments are
// skipped. Malformed lines throw Error(Format) with the line number.
std::vector<QaQuestion> parse_questions(const std::string& text);
std::vector<QaQuestion> load_questions(const std::string& path);

struct QaReport {
  ScoreReport scores;    // P = correct/answered, R = correct/questions
  double coverage = 0.0; // answered/questions
  int questions = 0;
  int answered = 0;      // YES or NO came back; UNKNOWN is unanswered
  int correct = 0;
  int unresolved = 0;    // doc id or a span failed to resolve
};

// Answers each question against its document's closure via timegraph_answer.
// A question whose document is unknown or whose span matches no entity is
// counted unresolved, not thrown; questions against an inconsistent document
// are left unanswered.
QaReport qa_evaluate(const std::vector<Document>& docs,
                     const std::vector<QaQuestion>& questions,
                     const MappingProfile& profile);

// Partitions indices 0..labels.size()-1 into k folds, per-label counts
// differing by at most one across folds, deterministic per seed. Indices are
// ascending within each fold. Throws Error(Fold) when k < 2 or k exceeds the
// instance count.
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<std::string>& labels, int k, std::uint64_t seed);

// Line-oriented "key TAB value" report text.
std::string render_report(const ScoreReport& r);
std::string render_report(const QaReport& r);

}  // namespace timelink
