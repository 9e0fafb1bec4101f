#include "timelink/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "timelink/common.hpp"

namespace timelink {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

int parse_int(const std::string& s, const char* what, std::size_t line_no, std::size_t offset) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) {
    throw Error(Error::Kind::Parse,
                "line " + std::to_string(line_no) + ": bad " + std::string(what) + " '" + s + "'",
                offset);
  }
  return value;
}

}  // namespace

AnnotationLayer parse_annotation_layer(const std::string& text) {
  AnnotationLayer layer;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  int sentence = 0;
  std::size_t sent_start = 0;      // doc index of the sentence's first token
  std::size_t sent_len = 0;
  std::vector<std::pair<std::size_t, int>> pending_heads;  // token index, 1-based head

  auto close_sentence = [&] {
    if (sent_len == 0) return;
    for (auto [tok, head] : pending_heads) {
      if (head == 0) {
        layer.tokens[tok].head = -1;
      } else if (static_cast<std::size_t>(head) > sent_len) {
        throw Error(Error::Kind::Parse,
                    "token " + std::to_string(tok + 1) + ": head " + std::to_string(head) +
                        " exceeds sentence length " + std::to_string(sent_len));
      } else {
        layer.tokens[tok].head = static_cast<int>(sent_start) + head - 1;
      }
    }
    pending_heads.clear();
    ++sentence;
    sent_start = layer.tokens.size();
    sent_len = 0;
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    std::size_t line_offset = pos;
    pos = eol + 1;

    if (line.empty()) {
      close_sentence();
      if (eol == text.size()) break;
      continue;
    }
    if (line[0] == '#') {
      auto cols = split_tabs(line);
      if (cols[0] == "#coref") {
        if (cols.size() < 3) {
          throw Error(Error::Kind::Parse,
                      "line " + std::to_string(line_no) + ": #coref needs at least two ids",
                      line_offset);
        }
        layer.coref.emplace_back(cols.begin() + 1, cols.end());
      }
      if (eol == text.size()) break;
      continue;
    }

    auto cols = split_tabs(line);
    if (cols.size() != 8 && cols.size() != 9) {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": expected 8 or 9 tab-separated columns, got " +
                      std::to_string(cols.size()),
                  line_offset);
    }
    int id = parse_int(cols[0], "token id", line_no, line_offset);
    if (static_cast<std::size_t>(id) != sent_len + 1) {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": token id " + cols[0] +
                      " out of sequence, expected " + std::to_string(sent_len + 1),
                  line_offset);
    }
    if (cols[1].empty()) {
      throw Error(Error::Kind::Parse, "line " + std::to_string(line_no) + ": empty token form",
                  line_offset);
    }
    Token tok;
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.pos = cols[3];
    tok.chunk = cols[4];
    int head = parse_int(cols[5], "head", line_no, line_offset);
    tok.deprel = cols[6];
    if (cols[7] != "0" && cols[7] != "1") {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": main-verb flag must be 0 or 1, got '" +
                      cols[7] + "'",
                  line_offset);
    }
    tok.main_verb = cols[7] == "1";
    if (cols.size() == 9) tok.supersense = cols[8];
    tok.sentence = sentence;
    pending_heads.emplace_back(layer.tokens.size(), head);
    layer.tokens.push_back(std::move(tok));
    ++sent_len;
    if (eol == text.size()) break;
  }
  close_sentence();
  layer.sentence_count = sentence;
  return layer;
}

AnnotationLayer load_annotation_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_annotation_layer(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

std::optional<double> SimilarityTable::lookup(const std::string& a, const std::string& b) const {
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = scores.find(key);
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

SimilarityTable parse_similarity_table(const std::string& text) {
  SimilarityTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw Error(Error::Kind::Parse, "line " + std::to_string(line_no) +
                                          ": expected lemma, lemma, score columns");
    }
    std::size_t used = 0;
    double score = 0.0;
    try {
      score = std::stod(cols[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cols[2].size()) {
      throw Error(Error::Kind::Parse,
                  "line " + std::to_string(line_no) + ": bad score '" + cols[2] + "'");
    }
    auto key = cols[0] <= cols[1] ? std::make_pair(cols[0], cols[1])
                                  : std::make_pair(cols[1], cols[0]);
    table.scores[key] = score;
  }
  return table;
}

SimilarityTable load_similarity_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_similarity_table(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

std::string chunk_base(const std::string& chunk) {
  if (chunk.size() >= 2 && (chunk[0] == 'B' || chunk[0] == 'I') && chunk[1] == '-') {
    return chunk.substr(2);
  }
  return chunk;
}

std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::TT: return "TT";
    case PairKind::ED: return "ED";
    case PairKind::ET: return "ET";
    case PairKind::EE: return "EE";
  }
  return "";
}

const AnnotatedDocument::TokRange* AnnotatedDocument::tokens_of(const std::string& id) const {
  auto it = entity_tokens.find(id);
  if (it == entity_tokens.end()) return nullptr;
  return &it->second;
}

const Token* AnnotatedDocument::head_token(const std::string& id) const {
  const TokRange* range = tokens_of(id);
  if (range == nullptr || range->head < 0) return nullptr;
  return &layer.tokens[range->head];
}

int AnnotatedDocument::sentence_of(const std::string& id) const {
  const Token* head = head_token(id);
  return head != nullptr ? head->sentence : -1;
}

int AnnotatedDocument::text_index(const std::string& id) const {
  auto it = std::find(text_order.begin(), text_order.end(), id);
  if (it == text_order.end()) return -1;
  return static_cast<int>(it - text_order.begin());
}

int AnnotatedDocument::entity_distance(const std::string& a, const std::string& b) const {
  int ia = text_index(a);
  int ib = text_index(b);
  if (ia < 0 || ib < 0 || ia == ib) return -1;
  return std::abs(ia - ib) - 1;
}

std::optional<std::string> AnnotatedDocument::main_event_of(int sentence) const {
  for (const auto& id : text_order) {
    if (doc.find_instance(id) == nullptr) continue;
    const TokRange* range = tokens_of(id);
    if (range == nullptr || range->first < 0) continue;
    if (layer.tokens[range->first].sentence != sentence) continue;
    for (int t = range->first; t <= range->last; ++t) {
      if (layer.tokens[t].main_verb) return id;
    }
  }
  return std::nullopt;
}

bool AnnotatedDocument::is_main_event(const std::string& eiid) const {
  int sent = sentence_of(eiid);
  if (sent < 0) return false;
  return main_event_of(sent) == eiid;
}

std::vector<std::string> AnnotatedDocument::dep_labels_between(int tok_a, int tok_b) const {
  std::vector<std::string> labels;
  if (tok_a < 0 || tok_b < 0 || tok_a == tok_b) return labels;
  const auto& toks = layer.tokens;
  if (toks[tok_a].sentence != toks[tok_b].sentence) return labels;
  std::vector<int> chain_a;
  for (int t = tok_a; t >= 0; t = toks[t].head) chain_a.push_back(t);
  std::vector<int> chain_b;
  int meet = -1;
  for (int t = tok_b; t >= 0; t = toks[t].head) {
    auto hit = std::find(chain_a.begin(), chain_a.end(), t);
    if (hit != chain_a.end()) {
      meet = t;
      chain_a.erase(hit, chain_a.end());
      break;
    }
    chain_b.push_back(t);
  }
  if (meet < 0) return labels;  // different trees of the sentence forest
  for (int t : chain_a) labels.push_back(toks[t].deprel);
  for (auto it = chain_b.rbegin(); it != chain_b.rend(); ++it) {
    labels.push_back(toks[*it].deprel);
  }
  return labels;
}

std::optional<std::string> AnnotatedDocument::dep_path(const std::string& e1,
                                                       const std::string& e2) const {
  const TokRange* r1 = tokens_of(e1);
  const TokRange* r2 = tokens_of(e2);
  if (r1 == nullptr || r2 == nullptr || r1->head < 0 || r2->head < 0) return std::nullopt;
  int tok_a = r1->head;
  int tok_b = r2->head;
  if (tok_a == tok_b) return std::nullopt;
  const auto& toks = layer.tokens;
  if (toks[tok_a].sentence != toks[tok_b].sentence) return std::nullopt;

  std::vector<int> chain_a;  // tok_a up to root
  for (int t = tok_a; t >= 0; t = toks[t].head) chain_a.push_back(t);
  std::vector<int> chain_b;
  int meet = -1;
  for (int t = tok_b; t >= 0; t = toks[t].head) {
    auto hit = std::find(chain_a.begin(), chain_a.end(), t);
    if (hit != chain_a.end()) {
      meet = t;
      chain_a.erase(hit, chain_a.end());  // keep the strict descendants of meet
      break;
    }
    chain_b.push_back(t);
  }
  if (meet < 0) return std::nullopt;

  auto join_top_down = [&](const std::vector<int>& chain) {
    // chain holds descendants bottom-up; emit their arc labels top-down.
    std::string out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      if (!out.empty()) out += '-';
      out += toks[*it].deprel;
    }
    return out;
  };

  if (chain_b.empty()) {
    // tok_b dominates tok_a.
    return join_top_down(chain_a) + "-INV";
  }
  if (chain_a.empty()) {
    return join_top_down(chain_b);
  }
  return join_top_down(chain_a) + "-" + join_top_down(chain_b);
}

std::optional<double> AnnotatedDocument::wn_sim(const std::string& a, const std::string& b) const {
  if (!sim.has_value()) return std::nullopt;
  const Token* ta = head_token(a);
  const Token* tb = head_token(b);
  if (ta == nullptr || tb == nullptr) return std::nullopt;
  return sim->lookup(ta->lemma, tb->lemma);
}

bool AnnotatedDocument::coreferent(const std::string& eiid_a, const std::string& eiid_b) const {
  for (const auto& group : layer.coref) {
    bool has_a = std::find(group.begin(), group.end(), eiid_a) != group.end();
    bool has_b = std::find(group.begin(), group.end(), eiid_b) != group.end();
    if (has_a && has_b) return true;
  }
  return false;
}

namespace {

AnnotatedDocument::TokRange range_for_span(const std::vector<Token>& toks, Span span) {
  AnnotatedDocument::TokRange range;
  if (!span.valid()) return range;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].begin < span.end && span.begin < toks[i].end) {
      if (range.first < 0) range.first = static_cast<int>(i);
      range.last = static_cast<int>(i);
    }
  }
  if (range.first < 0) return range;
  // Head: first token whose parent lies outside the range, else the last.
  range.head = range.last;
  for (int t = range.first; t <= range.last; ++t) {
    int head = toks[t].head;
    if (head < range.first || head > range.last) {
      range.head = t;
      break;
    }
  }
  return range;
}

}  // namespace

AnnotatedDocument attach_annotations(Document doc, AnnotationLayer layer,
                                     std::optional<SimilarityTable> sim) {
  const std::string& text = doc.text;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < layer.tokens.size(); ++i) {
    while (cursor < text.size() && std::isspace(static_cast<unsigned char>(text[cursor]))) {
      ++cursor;
    }
    Token& tok = layer.tokens[i];
    if (cursor >= text.size()) {
      throw Error(Error::Kind::Alignment,
                  "annotation layer has " + std::to_string(layer.tokens.size()) +
                      " tokens but document text ends after " + std::to_string(i));
    }
    if (text.compare(cursor, tok.form.size(), tok.form) != 0) {
      throw Error(Error::Kind::Alignment,
                  "annotation token " + std::to_string(i + 1) + " '" + tok.form +
                      "' does not match document text",
                  cursor);
    }
    tok.begin = cursor;
    tok.end = cursor + tok.form.size();
    cursor = tok.end;
  }
  while (cursor < text.size() && std::isspace(static_cast<unsigned char>(text[cursor]))) {
    ++cursor;
  }
  if (cursor != text.size()) {
    throw Error(Error::Kind::Alignment,
                "annotation layer ends after " + std::to_string(layer.tokens.size()) +
                    " tokens but document text continues",
                cursor);
  }

  AnnotatedDocument ad;
  ad.doc = std::move(doc);
  ad.layer = std::move(layer);
  ad.sim = std::move(sim);

  for (const auto& inst : ad.doc.events) {
    ad.entity_tokens[inst.eiid] = range_for_span(ad.layer.tokens, inst.span);
  }
  for (const auto& tx : ad.doc.timexes) {
    ad.entity_tokens[tx.tid] = range_for_span(ad.layer.tokens, tx.span);
  }
  for (const auto& sig : ad.doc.signals) {
    ad.entity_tokens[sig.sid] = range_for_span(ad.layer.tokens, sig.span);
  }
  for (const auto& cs : ad.doc.csignals) {
    ad.entity_tokens[cs.cid] = range_for_span(ad.layer.tokens, cs.span);
  }

  struct Positioned {
    std::size_t begin;
    std::string id;
  };
  std::vector<Positioned> order;
  for (const auto& inst : ad.doc.events) {
    if (inst.span.valid()) order.push_back({inst.span.begin, inst.eiid});
  }
  for (const auto& tx : ad.doc.timexes) {
    if (tx.span.valid()) order.push_back({tx.span.begin, tx.tid});
  }
  std::sort(order.begin(), order.end(), [](const Positioned& a, const Positioned& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.id < b.id;
  });
  for (auto& p : order) ad.text_order.push_back(std::move(p.id));
  return ad;
}

std::vector<EntityPair> candidate_pairs(const AnnotatedDocument& ad, Task task) {
  std::vector<EntityPair> pairs;
  std::size_t entity_count = ad.doc.events.size() + ad.doc.timexes.size() + 1;  // DCT
  if (entity_count < 2) return pairs;

  std::vector<std::string> instances;  // text order
  std::vector<std::string> timexes;
  for (const auto& id : ad.text_order) {
    if (ad.doc.find_instance(id) != nullptr) {
      instances.push_back(id);
    } else {
      timexes.push_back(id);
    }
  }
  auto sent = [&](const std::string& id) { return ad.sentence_of(id); };

  if (task == Task::Causal) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      int si = sent(instances[i]);
      if (si < 0) continue;
      for (std::size_t j = i + 1; j < instances.size(); ++j) {
        if (sent(instances[j]) == si) {
          pairs.push_back({PairKind::EE, instances[i], instances[j], true});
        }
      }
      for (std::size_t j = 0; j < instances.size(); ++j) {
        if (sent(instances[j]) == si + 1) {
          pairs.push_back({PairKind::EE, instances[i], instances[j], false});
        }
      }
    }
    return pairs;
  }

  for (int s = 0; s + 1 < ad.layer.sentence_count; ++s) {
    auto m1 = ad.main_event_of(s);
    auto m2 = ad.main_event_of(s + 1);
    if (m1.has_value() && m2.has_value()) {
      pairs.push_back({PairKind::EE, *m1, *m2, false});
    }
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    int si = sent(instances[i]);
    if (si < 0) continue;
    for (std::size_t j = i + 1; j < instances.size(); ++j) {
      if (sent(instances[j]) == si) {
        pairs.push_back({PairKind::EE, instances[i], instances[j], true});
      }
    }
  }
  for (const auto& e : instances) {
    int se = sent(e);
    if (se < 0) continue;
    for (const auto& t : timexes) {
      if (sent(t) == se) {
        pairs.push_back({PairKind::ET, e, t, true});
      }
    }
  }
  for (const auto& e : instances) {
    pairs.push_back({PairKind::ED, e, ad.doc.dct.tid, false});
  }
  std::vector<std::string> all_timexes;
  all_timexes.push_back(ad.doc.dct.tid);
  all_timexes.insert(all_timexes.end(), timexes.begin(), timexes.end());
  for (std::size_t i = 0; i < all_timexes.size(); ++i) {
    for (std::size_t j = i + 1; j < all_timexes.size(); ++j) {
      pairs.push_back({PairKind::TT, all_timexes[i], all_timexes[j], false});
    }
  }
  return pairs;
}

}  // namespace timelink
