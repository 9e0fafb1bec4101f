#include "timelink/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "timelink/common.hpp"

namespace timelink {
namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string span_text(const Span& s) {
  return std::to_string(s.begin) + ":" + std::to_string(s.end);
}

double ratio(int num, int den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / den;
}

// Entities of one kind grouped by span; values are ids in document order.
using SpanGroups = std::map<std::pair<std::size_t, std::size_t>,
                            std::vector<std::string>>;

SpanGroups timex_groups(const Document& doc) {
  SpanGroups out;
  for (const Timex& t : doc.timexes)
    out[{t.span.begin, t.span.end}].push_back(t.tid);
  return out;
}

SpanGroups event_groups(const Document& doc) {
  SpanGroups out;
  for (const EventInstance& e : doc.events)
    out[{e.span.begin, e.span.end}].push_back(e.eiid);
  return out;
}

// Pairs same-span ids in order; a span with surplus on either side is
// unmatched. Timexes and events align within their own kind only.
void align_groups(const SpanGroups& sys, const SpanGroups& ref,
                  std::map<std::string, std::string>& s2r,
                  std::vector<std::string>& sys_only,
                  std::vector<std::string>& ref_only) {
  for (const auto& [span, sys_ids] : sys) {
    auto it = ref.find(span);
    const std::size_t matched =
        it == ref.end() ? 0 : std::min(sys_ids.size(), it->second.size());
    for (std::size_t i = 0; i < matched; ++i) s2r[sys_ids[i]] = it->second[i];
    if (sys_ids.size() > matched)
      sys_only.push_back(span_text({span.first, span.second}));
    if (it != ref.end() && it->second.size() > matched)
      ref_only.push_back(span_text({span.first, span.second}));
  }
  for (const auto& [span, ref_ids] : ref) {
    if (!sys.count(span))
      ref_only.push_back(span_text({span.first, span.second}));
    (void)ref_ids;
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

// System id -> reference id over the full entity inventory (DCT by role,
// everything else by span). Any leftover on either side is an error.
std::map<std::string, std::string> align_entities(const Document& sys,
                                                  const Document& ref) {
  std::map<std::string, std::string> s2r;
  std::vector<std::string> sys_only, ref_only;
  if (sys.dct.tid.empty() != ref.dct.tid.empty()) {
    (sys.dct.tid.empty() ? ref_only : sys_only).push_back("dct");
  } else if (!sys.dct.tid.empty()) {
    s2r[sys.dct.tid] = ref.dct.tid;
  }
  align_groups(timex_groups(sys), timex_groups(ref), s2r, sys_only, ref_only);
  align_groups(event_groups(sys), event_groups(ref), s2r, sys_only, ref_only);
  if (!sys_only.empty() || !ref_only.empty()) {
    std::string msg = "entity inventories differ";
    if (!sys_only.empty()) msg += "; system only: " + join(sys_only);
    if (!ref_only.empty()) msg += "; reference only: " + join(ref_only);
    throw Error(Error::Kind::Alignment, msg);
  }
  return s2r;
}

std::map<std::string, std::string> invert(
    const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out[v] = k;
  return out;
}

// Claimed edges verified against the other side: reduce(claim) when the
// claiming side is consistent, its raw edges otherwise. An empty relation in
// the verifier (a contradicted raw pair) verifies nothing.
void score_side(const TemporalGraph& claim, bool claim_consistent,
                const TemporalGraph& verifier,
                const std::map<std::string, std::string>& to_verifier,
                int& num, int& den) {
  const TemporalGraph claimed = claim_consistent ? reduce(claim) : claim;
  num = 0;
  den = 0;
  for (const TemporalGraph::Edge& e : claimed.edges()) {
    ++den;
    const std::string& a = claimed.nodes()[e.i];
    const std::string& b = claimed.nodes()[e.j];
    AllenSet got = verifier.relation(to_verifier.at(a), to_verifier.at(b));
    if (!got.empty() && got.subset_of(e.rel)) ++num;
  }
}

std::optional<std::pair<std::size_t, std::size_t>> parse_span_field(
    std::string_view s) {
  std::size_t colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::size_t begin = 0, end = 0;
  auto b = s.substr(0, colon);
  auto e = s.substr(colon + 1);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), begin);
  auto re = std::from_chars(e.data(), e.data() + e.size(), end);
  if (rb.ec != std::errc() || rb.ptr != b.data() + b.size()) return std::nullopt;
  if (re.ec != std::errc() || re.ptr != e.data() + e.size()) return std::nullopt;
  return std::make_pair(begin, end);
}

// First entity whose span matches exactly: in-text timexes, then event
// instances in document order.
std::optional<std::string> entity_at(const Document& doc, const Span& span) {
  for (const Timex& t : doc.timexes)
    if (t.span.valid() && t.span.begin == span.begin && t.span.end == span.end)
      return t.tid;
  for (const EventInstance& e : doc.events)
    if (e.span.valid() && e.span.begin == span.begin && e.span.end == span.end)
      return e.eiid;
  return std::nullopt;
}

}  // namespace

ScoreReport finish_report(ScoreReport r) {
  r.precision = ratio(r.p_num, r.p_den);
  r.recall = ratio(r.r_num, r.r_den);
  const double sum = r.precision + r.recall;
  r.f1 = sum == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / sum;
  return r;
}

ScoreReport micro_average(const std::vector<ScoreReport>& reports) {
  ScoreReport out;
  for (const ScoreReport& r : reports) {
    out.p_num += r.p_num;
    out.p_den += r.p_den;
    out.r_num += r.r_num;
    out.r_den += r.r_den;
    out.sys_consistent = out.sys_consistent && r.sys_consistent;
    out.ref_consistent = out.ref_consistent && r.ref_consistent;
  }
  return finish_report(out);
}

ScoreReport temporal_awareness(const Document& sys, const Document& ref,
                               const MappingProfile& profile) {
  const auto s2r = align_entities(sys, ref);
  const auto r2s = invert(s2r);
  const TemporalGraph gs = graph_of(sys, profile);
  const TemporalGraph gr = graph_of(ref, profile);
  const ClosureResult cs = path_consistency(gs);
  const ClosureResult cr = path_consistency(gr);
  ScoreReport out;
  out.sys_consistent = cs.consistent;
  out.ref_consistent = cr.consistent;
  score_side(gs, cs.consistent, cr.consistent ? cr.closure : gr, s2r,
             out.p_num, out.p_den);
  score_side(gr, cr.consistent, cs.consistent ? cs.closure : gs, r2s,
             out.r_num, out.r_den);
  return finish_report(out);
}

ScoreReport clink_prf(const Document& sys, const Document& ref) {
  const auto s2r = align_entities(sys, ref);
  std::set<std::pair<std::string, std::string>> claimed, gold;
  for (const CLink& cl : sys.clinks) {
    auto s = s2r.find(cl.source);
    auto t = s2r.find(cl.target);
    if (s == s2r.end() || t == s2r.end())
      throw Error(Error::Kind::Reference,
                  "clink " + cl.lid + " references a non-entity id");
    claimed.insert({s->second, t->second});
  }
  for (const CLink& cl : ref.clinks) gold.insert({cl.source, cl.target});
  ScoreReport out;
  for (const auto& pair : claimed)
    if (gold.count(pair)) ++out.p_num;
  out.p_den = static_cast<int>(claimed.size());
  out.r_num = out.p_num;
  out.r_den = static_cast<int>(gold.size());
  return finish_report(out);
}

std::vector<QaQuestion> parse_questions(const std::string& text) {
  std::vector<QaQuestion> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const std::string where = "questions line " + std::to_string(line_no);
    if (fields.size() != 5)
      throw Error(Error::Kind::Format,
                  where + ": expected 5 tab-separated fields, got " +
                      std::to_string(fields.size()));
    QaQuestion q;
    q.doc_id = fields[0];
    auto s1 = parse_span_field(fields[1]);
    auto s2 = parse_span_field(fields[3]);
    if (!s1 || !s2)
      throw Error(Error::Kind::Format,
                  where + ": span must be 'begin:end' character offsets");
    q.e1 = {s1->first, s1->second};
    q.e2 = {s2->first, s2->second};
    auto rel = rel_type_from(fields[2]);
    if (!rel)
      throw Error(Error::Kind::Format,
                  where + ": unknown relation label '" + fields[2] + "'");
    q.relation = *rel;
    if (fields[4] == "YES") {
      q.gold_yes = true;
    } else if (fields[4] == "NO") {
      q.gold_yes = false;
    } else {
      throw Error(Error::Kind::Format,
                  where + ": gold answer must be YES or NO, got '" +
                      fields[4] + "'");
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QaQuestion> load_questions(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Error::Kind::Io, "cannot read questions file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_questions(buf.str());
}

QaReport qa_evaluate(const std::vector<Document>& docs,
                     const std::vector<QaQuestion>& questions,
                     const MappingProfile& profile) {
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < docs.size(); ++i)
    by_id.emplace(docs[i].doc_id, i);  // first document with the id wins
  std::vector<std::optional<ClosureResult>> closures(docs.size());
  QaReport report;
  report.questions = static_cast<int>(questions.size());
  for (const QaQuestion& q : questions) {
    auto doc_it = by_id.find(q.doc_id);
    if (doc_it == by_id.end()) {
      ++report.unresolved;
      continue;
    }
    const Document& doc = docs[doc_it->second];
    auto id1 = entity_at(doc, q.e1);
    auto id2 = entity_at(doc, q.e2);
    if (!id1 || !id2) {
      ++report.unresolved;
      continue;
    }
    std::optional<ClosureResult>& closure = closures[doc_it->second];
    if (!closure) closure = path_consistency(graph_of(doc, profile));
    if (!closure->consistent) continue;  // unanswered, not unresolved
    Answer a =
        timegraph_answer(closure->closure, *id1, q.relation, *id2, profile);
    if (a == Answer::Unknown) continue;
    ++report.answered;
    if ((a == Answer::Yes) == q.gold_yes) ++report.correct;
  }
  report.scores.p_num = report.correct;
  report.scores.p_den = report.answered;
  report.scores.r_num = report.correct;
  report.scores.r_den = report.questions;
  report.scores = finish_report(report.scores);
  report.coverage = ratio(report.answered, report.questions);
  return report;
}

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<std::string>& labels, int k, std::uint64_t seed) {
  if (k < 2)
    throw Error(Error::Kind::Fold,
                "fold count must be at least 2, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > labels.size())
    throw Error(Error::Kind::Fold,
                "cannot split " + std::to_string(labels.size()) +
                    " instances into " + std::to_string(k) + " folds");
  // Label groups in first-seen order, each shuffled by a hand-rolled
  // Fisher-Yates so the partition is identical across standard libraries.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = groups.try_emplace(labels[i]);
    if (fresh) order.push_back(labels[i]);
    it->second.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::size_t pos = 0;  // dealing position carries across label groups
  for (const std::string& label : order) {
    std::vector<std::size_t>& members = groups[label];
    for (std::size_t i = members.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t idx : members) {
      folds[pos % static_cast<std::size_t>(k)].push_back(idx);
      ++pos;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

std::string render_report(const ScoreReport& r) {
  std::ostringstream out;
  out << "precision\t" << format_number(r.precision) << "\n"
      << "recall\t" << format_number(r.recall) << "\n"
      << "f1\t" << format_number(r.f1) << "\n"
      << "p_num\t" << r.p_num << "\n"
      << "p_den\t" << r.p_den << "\n"
      << "r_num\t" << r.r_num << "\n"
      << "r_den\t" << r.r_den << "\n"
      << "sys_consistent\t" << (r.sys_consistent ? "true" : "false") << "\n"
      << "ref_consistent\t" << (r.ref_consistent ? "true" : "false") << "\n";
  return out.str();
}

std::string render_report(const QaReport& r) {
  std::ostringstream out;
  out << "coverage\t" << format_number(r.coverage) << "\n"
      << "precision\t" << format_number(r.scores.precision) << "\n"
      << "recall\t" << format_number(r.scores.recall) << "\n"
      << "f1\t" << format_number(r.scores.f1) << "\n"
      << "questions\t" << r.questions << "\n"
      << "answered\t" << r.answered << "\n"
      << "correct\t" << r.correct << "\n"
      << "unresolved\t" << r.unresolved << "\n";
  return out.str();
}

}  // namespace timelink
