#include "timelink/sieves.hpp"

#include <algorithm>
#include <cctype>

#include "timelink/timex.hpp"

namespace timelink {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// True when |anc| is a strict ancestor of |tok| in the dependency forest.
bool dominates(const AnnotationLayer& layer, int anc, int tok) {
  std::size_t steps = 0;
  for (int at = layer.tokens[tok].head; at >= 0 && steps < layer.tokens.size();
       at = layer.tokens[at].head, ++steps) {
    if (at == anc) return true;
  }
  return false;
}

// First SIGNAL span covering |tok|, by document order.
std::string covering_signal(const AnnotatedDocument& ad, int tok) {
  for (const auto& sig : ad.doc.signals) {
    auto it = ad.entity_tokens.find(sig.sid);
    if (it == ad.entity_tokens.end()) continue;
    if (it->second.first <= tok && tok <= it->second.last) return sig.sid;
  }
  return "";
}

struct SentTimex {
  std::string tid;
  int first = -1;
  int last = -1;
};

// In-text timexes of one sentence, document order.
std::vector<SentTimex> sentence_timexes(const AnnotatedDocument& ad, int sentence) {
  std::vector<SentTimex> out;
  for (const auto& tmx : ad.doc.timexes) {
    auto it = ad.entity_tokens.find(tmx.tid);
    if (it == ad.entity_tokens.end()) continue;
    if (ad.layer.tokens[it->second.first].sentence != sentence) continue;
    out.push_back({tmx.tid, it->second.first, it->second.last});
  }
  return out;
}

struct DurationHit {
  std::string begin_tid, end_tid;
  int opener = -1;  // trigger for the begin timex
  int closer = -1;  // trigger for the end timex
};

// Surface duration templates over one sentence. Openers are scanned left to
// right; each may claim at most one (T1, T2) pair.
std::vector<DurationHit> duration_hits(const AnnotatedDocument& ad, int sentence) {
  auto timexes = sentence_timexes(ad, sentence);
  std::vector<DurationHit> hits;
  if (timexes.size() < 2) return hits;

  const auto& toks = ad.layer.tokens;
  auto timex_starting_in = [&](int lo, int hi) -> const SentTimex* {
    for (const auto& t : timexes) {
      if (t.first > lo && t.first <= hi) return &t;
    }
    return nullptr;
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].sentence != sentence) continue;
    int at = static_cast<int>(i);
    std::string form = lower(toks[i].form);
    if (form == "between" || form == "from") {
      const SentTimex* t1 = timex_starting_in(at, at + 4);
      if (t1 == nullptr) continue;
      for (int c = t1->last + 1; c <= t1->last + 2 && c < static_cast<int>(toks.size()) &&
                                 toks[c].sentence == sentence;
           ++c) {
        std::string cf = lower(toks[c].form);
        bool connects = form == "between" ? cf == "and" : (cf == "to" || cf == "until");
        if (!connects) continue;
        const SentTimex* t2 = timex_starting_in(c, c + 4);
        if (t2 != nullptr && t2->tid != t1->tid) {
          hits.push_back({t1->tid, t2->tid, at, c});
        }
        break;
      }
    }
  }

  // "T1 - T2" with strict adjacency.
  for (const auto& t1 : timexes) {
    int h = t1.last + 1;
    if (h + 1 >= static_cast<int>(toks.size()) || toks[h].sentence != sentence) continue;
    std::string hf = toks[h].form;
    if (hf != "-" && hf != "--") continue;
    for (const auto& t2 : timexes) {
      if (t2.first == h + 1 && t2.tid != t1.tid) {
        hits.push_back({t1.tid, t2.tid, h, h});
      }
    }
  }
  return hits;
}

RelType sense_label(PrepSense s) {
  switch (s) {
    case PrepSense::TimePoint: return RelType::IsIncluded;
    case PrepSense::TimePreceding: return RelType::Before;
    case PrepSense::TimeFollowing: return RelType::After;
    case PrepSense::Duration: return RelType::During;
    case PrepSense::StartTime: return RelType::BegunBy;
    case PrepSense::EndTime: return RelType::EndedBy;
  }
  return RelType::IsIncluded;
}

// First table row matching (context, tenses, aspect); absent aspect = any.
std::optional<RelType> tense_table(const Lexicons& lex, TenseRuleContext ctx,
                                   Tense governing, Tense governed, Aspect governed_aspect) {
  for (const auto& rule : lex.tense_rules) {
    if (rule.context != ctx) continue;
    if (rule.governing != governing || rule.governed != governed) continue;
    if (rule.governed_aspect.has_value() && *rule.governed_aspect != governed_aspect) {
      continue;
    }
    return rule.label;
  }
  return std::nullopt;
}

// Dependency-path rules with |gov| the governing (dominating) instance.
std::optional<RelType> dep_rule(const AnnotatedDocument& ad, const std::string& path,
                                const EventInstance& gov, const std::string& gov_id,
                                const Lexicons& lex) {
  if (path == "LGS-PMOD") return RelType::After;
  if (path == "LOC-PMOD") return RelType::IsIncluded;
  if (path == "OPRD" || path == "OPRD-IM") {
    const Token* head = ad.head_token(gov_id);
    if (head != nullptr) {
      auto it = lex.aspectual_verbs.find(lower(head->lemma));
      if (it != lex.aspectual_verbs.end()) {
        switch (it->second) {
          case AspectualKind::Initiation: return RelType::Begins;
          case AspectualKind::Termination: return RelType::Ends;
          case AspectualKind::Continuation: return RelType::Includes;
        }
      }
    }
    if (gov.aspect == Aspect::PerfectiveProgressive) return RelType::Simultaneous;
    return RelType::Before;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RelType> ed_rule(const EventInstance& e) {
  if (e.tense == Tense::Past && e.aspect == Aspect::Perfective) return RelType::Before;
  if (e.tense == Tense::Present && e.aspect == Aspect::Progressive) return RelType::Includes;
  if (e.tense == Tense::Present && e.aspect == Aspect::PerfectiveProgressive) {
    return RelType::Includes;
  }
  if (e.tense == Tense::Future) return RelType::After;
  return std::nullopt;
}

std::optional<EtVerdict> et_rule(const AnnotatedDocument& ad, const std::string& eiid,
                                 const std::string& tid, const Lexicons& lex) {
  const auto* er = ad.tokens_of(eiid);
  const auto* tr = ad.tokens_of(tid);
  if (er == nullptr || tr == nullptr) return std::nullopt;
  const auto& toks = ad.layer.tokens;
  int sentence = toks[er->head].sentence;
  if (toks[tr->head].sentence != sentence) return std::nullopt;

  for (const auto& hit : duration_hits(ad, sentence)) {
    if (hit.begin_tid == tid) {
      return EtVerdict{RelType::BegunBy, covering_signal(ad, hit.opener)};
    }
    if (hit.end_tid == tid) {
      return EtVerdict{RelType::EndedBy, covering_signal(ad, hit.closer)};
    }
  }

  int prep = toks[tr->head].head;
  if (prep >= 0 && toks[tr->head].deprel == "PMOD" && toks[prep].head == er->head &&
      toks[prep].deprel == "TMP") {
    auto it = lex.preposition_senses.find(lower(toks[prep].form));
    if (it != lex.preposition_senses.end()) {
      return EtVerdict{sense_label(it->second), covering_signal(ad, prep)};
    }
  }

  if (toks[tr->head].head == er->head && toks[tr->head].deprel == "TMP") {
    return EtVerdict{RelType::IsIncluded, ""};
  }
  return std::nullopt;
}

std::optional<RelType> ee_rule(const AnnotatedDocument& ad, const std::string& e1,
                               const std::string& e2, const Lexicons& lex) {
  const EventInstance* a = ad.doc.find_instance(e1);
  const EventInstance* b = ad.doc.find_instance(e2);
  const auto* ra = ad.tokens_of(e1);
  const auto* rb = ad.tokens_of(e2);
  if (a == nullptr || b == nullptr || ra == nullptr || rb == nullptr) return std::nullopt;

  const auto& toks = ad.layer.tokens;
  if (toks[ra->head].sentence == toks[rb->head].sentence) {
    if (auto path = ad.dep_path(e1, e2)) {
      if (auto label = dep_rule(ad, *path, *a, e1, lex)) return label;
      if (path->size() > 4 && path->ends_with("-INV")) {
        std::string base = path->substr(0, path->size() - 4);
        if (auto label = dep_rule(ad, base, *b, e2, lex)) return converse(*label);
      }
    }

    auto reporting = [&](const EventInstance& gov, const EventInstance& sub, int gov_head,
                         int sub_head) -> std::optional<RelType> {
      if (gov.cls != EventClass::Reporting) return std::nullopt;
      if (!dominates(ad.layer, gov_head, sub_head)) return std::nullopt;
      return tense_table(lex, TenseRuleContext::Reporting, gov.tense, sub.tense, sub.aspect);
    };
    if (auto label = reporting(*a, *b, ra->head, rb->head)) return label;
    if (auto label = reporting(*b, *a, rb->head, ra->head)) return converse(*label);

    if (a->pos == WordPos::Verb && b->pos == WordPos::Verb) {
      bool a_first = ra->first <= rb->first;
      const EventInstance& first = a_first ? *a : *b;
      const EventInstance& second = a_first ? *b : *a;
      if (auto label = tense_table(lex, TenseRuleContext::Reichenbach, first.tense,
                                   second.tense, second.aspect)) {
        return a_first ? *label : converse(*label);
      }
    }
  }

  if (ad.coreferent(e1, e2)) return RelType::Simultaneous;
  return std::nullopt;
}

std::vector<TLink> apply_rule_sieve(const AnnotatedDocument& ad,
                                    const std::vector<EntityPair>& pairs,
                                    const Lexicons& lex) {
  std::vector<TLink> out;
  auto emit = [&](const EntityPair& pair, RelType rel, std::string signal_id) {
    TLink link;
    link.source = pair.e1;
    link.target = pair.e2;
    link.rel = rel;
    link.signal_id = std::move(signal_id);
    link.provenance = Provenance::Rule;
    out.push_back(std::move(link));
  };

  for (const auto& pair : pairs) {
    switch (pair.kind) {
      case PairKind::TT: {
        const Timex* ta = ad.doc.find_timex(pair.e1);
        const Timex* tb = ad.doc.find_timex(pair.e2);
        if (ta == nullptr || tb == nullptr) break;
        if (auto rel = tt_rule(*ta, *tb)) emit(pair, *rel, "");
        break;
      }
      case PairKind::ED: {
        const EventInstance* e = ad.doc.find_instance(pair.e1);
        if (e == nullptr) break;
        if (auto rel = ed_rule(*e)) emit(pair, *rel, "");
        break;
      }
      case PairKind::ET: {
        if (auto verdict = et_rule(ad, pair.e1, pair.e2, lex)) {
          emit(pair, verdict->label, verdict->signal_id);
        }
        break;
      }
      case PairKind::EE: {
        if (auto rel = ee_rule(ad, pair.e1, pair.e2, lex)) emit(pair, *rel, "");
        break;
      }
    }
  }
  return out;
}

}  // namespace timelink
