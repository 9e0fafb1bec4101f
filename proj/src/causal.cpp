#include "timelink/causal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "timelink/common.hpp"
#include "timelink/features.hpp"

namespace timelink {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const Token* tok(const AnnotatedDocument& ad, int i) {
  if (i < 0 || i >= static_cast<int>(ad.layer.tokens.size())) return nullptr;
  return &ad.layer.tokens[i];
}

// Document-level index range [first, last] of a sentence.
std::pair<int, int> sentence_range(const AnnotatedDocument& ad, int sentence) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(ad.layer.tokens.size()); ++i) {
    if (ad.layer.tokens[i].sentence != sentence) continue;
    if (first < 0) first = i;
    last = i;
  }
  return {first, last};
}

bool edge(const AnnotatedDocument& ad, int parent, int child, std::string_view label) {
  const Token* c = tok(ad, child);
  return c && parent >= 0 && child != parent && c->head == parent && c->deprel == label;
}

std::vector<int> children(const AnnotatedDocument& ad, int parent, std::string_view label) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ad.layer.tokens.size()); ++i)
    if (i != parent && ad.layer.tokens[i].head == parent && ad.layer.tokens[i].deprel == label)
      out.push_back(i);
  return out;
}

// dep1: the admissible relations between the verb and the first event.
bool dep1_admissible(const AnnotatedDocument& ad, int v, int e1) {
  // SBJ, climbing verb chains: a passive participle's subject attaches to
  // the auxiliary, so walk v up through VC links while looking for e1.
  for (int w = v; w >= 0;) {
    if (edge(ad, w, e1, "SBJ")) return true;
    const Token* wt = tok(ad, w);
    if (!wt || wt->deprel != "VC") break;
    w = wt->head;
  }
  const Token* vt = tok(ad, v);
  if (vt && vt->head == e1 &&
      (vt->deprel == "NMOD" || vt->deprel == "APPO" || vt->deprel == "ADV"))
    return true;  // v modifies e1
  // PRD-IM: e1 is subject of a copula whose predicative opens onto v.
  const Token* et = tok(ad, e1);
  if (et && et->deprel == "SBJ" && et->head >= 0) {
    for (int c : children(ad, et->head, "PRD"))
      if (c == v || edge(ad, c, v, "IM")) return true;
  }
  // PRP-IM: v heads a purpose adverbial of e1.
  for (int c : children(ad, e1, "PRP"))
    if (c == v || edge(ad, c, v, "IM")) return true;
  return false;
}

// dep2: how the second event hangs off the verb.
enum class Dep2 { None, Obj, LgsPmod, Oprd, OprdIm, AdvPmod, DirPmod, AmodPmod };

// Entries with a particle only admit routes through a preposition token whose
// form equals the particle; bare entries admit every route.
Dep2 dep2_route(const AnnotatedDocument& ad, int v, int e2, const std::string& particle) {
  auto prep_ok = [&](int p) {
    return particle.empty() || lower(ad.layer.tokens[p].form) == particle;
  };
  if (particle.empty()) {
    if (edge(ad, v, e2, "OBJ")) return Dep2::Obj;
    if (edge(ad, v, e2, "OPRD")) return Dep2::Oprd;
    for (int c : children(ad, v, "OPRD"))
      if (edge(ad, c, e2, "IM")) return Dep2::OprdIm;
  }
  for (int p : children(ad, v, "LGS"))
    if (edge(ad, p, e2, "PMOD") && prep_ok(p)) return Dep2::LgsPmod;
  for (int p : children(ad, v, "ADV"))
    if (edge(ad, p, e2, "PMOD") && prep_ok(p)) return Dep2::AdvPmod;
  for (int p : children(ad, v, "DIR"))
    if (edge(ad, p, e2, "PMOD") && prep_ok(p)) return Dep2::DirPmod;
  for (int p : children(ad, v, "AMOD"))
    if (edge(ad, p, e2, "PMOD") && prep_ok(p)) return Dep2::AmodPmod;
  return Dep2::None;
}

std::optional<CausalLabel> apply_category(const CausalVerbEntry& entry, Dep2 route) {
  if (route == Dep2::None) return std::nullopt;
  switch (entry.category) {
    case CausalCategory::Affect:
      if (route == Dep2::Obj) return CausalLabel::Clink;
      return std::nullopt;
    case CausalCategory::Link:
      if (route == Dep2::Obj || route == Dep2::AdvPmod || route == Dep2::DirPmod ||
          route == Dep2::AmodPmod)
        return entry.direction;
      return std::nullopt;
    case CausalCategory::Cause:
    case CausalCategory::Enable:
    case CausalCategory::Prevent:
      if (route == Dep2::Obj || route == Dep2::Oprd || route == Dep2::OprdIm ||
          route == Dep2::AdvPmod)
        return CausalLabel::Clink;
      if (route == Dep2::LgsPmod) return CausalLabel::ClinkR;
      return std::nullopt;
    case CausalCategory::CauseAmbiguous:
    case CausalCategory::EnableAmbiguous:
    case CausalCategory::PreventAmbiguous:
      if (route == Dep2::Oprd || route == Dep2::OprdIm || route == Dep2::AdvPmod)
        return CausalLabel::Clink;
      return std::nullopt;
  }
  return std::nullopt;
}

// First token of the span whose head lies outside it.
int span_root(const AnnotatedDocument& ad, int first, int last) {
  for (int i = first; i <= last; ++i) {
    int h = ad.layer.tokens[i].head;
    if (h < first || h > last) return i;
  }
  return first;
}

// A signal inside the event's sentence counts when a dependency path reaches
// the event head.
bool signal_connected(const AnnotatedDocument& ad, const CausalSignalLexicon& signals,
                      const AnnotatedDocument::TokRange& range) {
  const Token* head = tok(ad, range.head);
  if (!head) return false;
  auto [sb, se] = sentence_range(ad, head->sentence);
  if (sb < 0) return false;
  std::vector<std::string> forms;
  forms.reserve(se - sb + 1);
  for (int i = sb; i <= se; ++i) forms.push_back(ad.layer.tokens[i].form);
  for (const SignalMatch& m : signals.find(forms)) {
    int root = span_root(ad, sb + m.first, sb + m.last);
    if (root == range.head) return true;
    if (!ad.dep_labels_between(root, range.head).empty()) return true;
  }
  return false;
}

// Direct dependency configurations that rule a pair out as a causal candidate.
bool forbidden_direct(const AnnotatedDocument& ad, int a, int b) {
  for (const char* label : {"SBJ", "OBJ", "VC", "OPRD"})
    if (edge(ad, a, b, label)) return true;
  for (int c : children(ad, a, "COORD"))
    if (edge(ad, c, b, "CONJ")) return true;
  for (int c : children(ad, a, "LOC"))
    if (edge(ad, c, b, "PMOD")) return true;
  for (int c : children(ad, a, "OPRD"))
    if (edge(ad, c, b, "IM")) return true;
  return false;
}

// Largest numeric id over both link layers; fresh ids continue from there.
int max_numeric_lid(const std::vector<TLink>& tlinks, const std::vector<CLink>& clinks) {
  int max_seen = 0;
  auto scan = [&max_seen](const std::string& lid) {
    if (lid.size() < 2 || lid[0] != 'l') return;
    int v = 0;
    auto [p, ec] = std::from_chars(lid.data() + 1, lid.data() + lid.size(), v);
    if (ec == std::errc() && p == lid.data() + lid.size()) max_seen = std::max(max_seen, v);
  };
  for (const TLink& t : tlinks) scan(t.lid);
  for (const CLink& c : clinks) scan(c.lid);
  return max_seen;
}

}  // namespace

std::optional<CausalLabel> causal_verb_rule(const EntityPair& pair,
                                            const AnnotatedDocument& ad,
                                            const CausalVerbLexicon& verbs) {
  if (pair.e1 == pair.e2) return std::nullopt;
  const AnnotatedDocument::TokRange* r1 = ad.tokens_of(pair.e1);
  const AnnotatedDocument::TokRange* r2 = ad.tokens_of(pair.e2);
  if (!r1 || !r2) return std::nullopt;
  int lo = std::min(r1->last, r2->last);
  int hi = std::max(r1->first, r2->first);
  for (int v = lo + 1; v < hi; ++v) {
    const Token& t = ad.layer.tokens[v];
    if (t.pos.rfind("VB", 0) != 0) continue;
    auto entries = verbs.find(lower(t.lemma));
    if (entries.empty() || !dep1_admissible(ad, v, r1->head)) continue;
    for (const CausalVerbEntry* entry : entries) {
      auto fired = apply_category(*entry, dep2_route(ad, v, r2->head, entry->particle));
      if (fired) return fired;
    }
  }
  return std::nullopt;
}

bool clink_candidate_filter(const EntityPair& pair, const AnnotatedDocument& ad,
                            const CausalSignalLexicon& signals) {
  if (pair.e1 == pair.e2) return false;
  const AnnotatedDocument::TokRange* r1 = ad.tokens_of(pair.e1);
  const AnnotatedDocument::TokRange* r2 = ad.tokens_of(pair.e2);
  if (!r1 || !r2) return false;
  int distance = ad.entity_distance(pair.e1, pair.e2);
  if (distance < 0 || distance >= 5) return false;
  if (forbidden_direct(ad, r1->head, r2->head) || forbidden_direct(ad, r2->head, r1->head))
    return false;
  return signal_connected(ad, signals, *r1) || signal_connected(ad, signals, *r2);
}

CausalLabel classify_clink(const LinearModel& model, const FeatureEncoders& enc,
                           const EntityPair& pair, const AnnotatedDocument& ad,
                           std::optional<RelType> tlink_label, double* confidence) {
  RuleExtras extras;
  extras.pair_label = tlink_label;
  Prediction p = predict(model, featurize(pair, ad, enc, extras));
  auto label = causal_label_from(p.label);
  if (!label)
    throw Error(Error::Kind::Value,
                "model label '" + p.label + "' is not a causal label");
  if (confidence) *confidence = p.confidence;
  return *label;
}

std::vector<TLink> post_edit_tlinks(std::vector<TLink> tlinks,
                                    const std::vector<CLink>& clinks) {
  int counter = max_numeric_lid(tlinks, clinks) + 1;
  for (const CLink& c : clinks) {
    if (c.source == c.target) continue;
    bool touched = false;
    for (TLink& t : tlinks) {
      if (t.source == c.source && t.target == c.target) {
        t.rel = RelType::Before;
        t.provenance = Provenance::PostEdit;
        touched = true;
      } else if (t.source == c.target && t.target == c.source) {
        t.rel = RelType::After;
        t.provenance = Provenance::PostEdit;
        touched = true;
      }
    }
    if (!touched) {
      TLink fresh;
      fresh.lid = "l" + std::to_string(counter++);
      fresh.source = c.source;
      fresh.target = c.target;
      fresh.rel = RelType::Before;
      fresh.provenance = Provenance::PostEdit;
      tlinks.push_back(std::move(fresh));
    }
  }
  return tlinks;
}

std::vector<std::vector<CLink>> propagate_clinks(
    const std::vector<const Document*>& cluster, const CorefPartition& coref,
    double conf_threshold) {
  std::map<std::pair<std::size_t, std::string>, std::size_t> group_of;
  for (std::size_t g = 0; g < coref.groups.size(); ++g)
    for (const auto& member : coref.groups[g]) group_of[member] = g;

  // Pairs already labeled per document, in both orientations.
  std::vector<std::set<std::pair<std::string, std::string>>> labeled(cluster.size());
  for (std::size_t d = 0; d < cluster.size(); ++d) {
    for (const CLink& c : cluster[d]->clinks) {
      labeled[d].emplace(c.source, c.target);
      labeled[d].emplace(c.target, c.source);
    }
  }

  std::vector<std::vector<CLink>> out(cluster.size());
  std::vector<int> counters(cluster.size(), 0);
  for (std::size_t d = 0; d < cluster.size(); ++d) {
    for (const CLink& c : cluster[d]->clinks) {
      if (c.confidence < conf_threshold) continue;
      auto gs = group_of.find({d, c.source});
      auto gt = group_of.find({d, c.target});
      if (gs == group_of.end() || gt == group_of.end()) continue;
      for (const auto& [sd, sid] : coref.groups[gs->second]) {
        for (const auto& [td, tid] : coref.groups[gt->second]) {
          if (sd != td || sid == tid) continue;
          if (sd == d && sid == c.source && tid == c.target) continue;
          const Document& target_doc = *cluster[sd];
          if (!target_doc.find_instance(sid) || !target_doc.find_instance(tid)) continue;
          if (labeled[sd].count({sid, tid})) continue;
          CLink fresh;
          fresh.lid = target_doc.fresh_link_id(counters[sd]);
          fresh.source = sid;
          fresh.target = tid;
          fresh.provenance = Provenance::Propagated;
          labeled[sd].emplace(sid, tid);
          labeled[sd].emplace(tid, sid);
          out[sd].push_back(std::move(fresh));
        }
      }
    }
  }
  return out;
}

std::vector<TrainExample> self_train(const LinearModel& model,
                                     const FeatureEncoders& enc,
                                     const std::vector<CausalCandidate>& unlabeled,
                                     double conf_threshold) {
  std::vector<TrainExample> out;
  for (const CausalCandidate& cand : unlabeled) {
    if (!cand.ad) throw Error(Error::Kind::Annotation, "candidate without document context");
    RuleExtras extras;
    extras.pair_label = cand.tlink_label;
    FeatureVector x = featurize(cand.pair, *cand.ad, enc, extras);
    Prediction p = predict(model, x);
    auto label = causal_label_from(p.label);
    if (!label || *label == CausalLabel::NoRel) continue;
    if (p.confidence < conf_threshold) continue;
    out.push_back({std::move(x), p.label});
  }
  return out;
}

}  // namespace timelink
