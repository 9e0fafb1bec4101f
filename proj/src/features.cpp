#include "timelink/features.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "timelink/common.hpp"

namespace timelink {

namespace {

// Block selectors; values are internal to the schema builders below.
enum Field : int {
  kPosE1, kPosE2, kChunkE1, kChunkE2, kSamePos,
  kEntityOrder, kSentenceDistance, kEntityDistance,
  kClassE1, kTenseE1, kAspectE1, kPolarityE1,
  kClassE2, kTenseE2, kAspectE2, kPolarityE2,
  kSameClass, kSameTenseAspect, kSamePolarity,
  kTimexType, kDepPath, kMainVerbE1, kMainVerbE2,
  kTempSignalCluster, kTempSignalPosition, kTempSignalDep,
  kCausSignalCluster, kCausSignalPosition, kCausSignalDep,
  kWnSim, kTimexDctLabel, kE1DctLabel, kE2DctLabel, kPairLabel,
};

const std::vector<std::string> kPositions = {"BETWEEN", "BEFORE", "BEGIN", "AFTER"};
const std::vector<std::string> kSimBuckets = {"sim<=0.0", "0.0<sim<=0.5",
                                              "0.5<sim<=1.0", "sim>1.0"};

std::vector<std::string> sorted_clusters(const std::vector<std::string>& raw) {
  std::vector<std::string> out = raw;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> cluster_inventory(const SignalLexicon& lex) {
  std::vector<std::string> raw;
  raw.reserve(lex.entries.size());
  for (const auto& e : lex.entries) raw.push_back(e.cluster);
  return sorted_clusters(raw);
}

std::vector<std::string> cluster_inventory(const CausalSignalLexicon& lex) {
  std::vector<std::string> raw;
  raw.reserve(lex.entries.size());
  for (const auto& e : lex.entries) raw.push_back(e.cluster);
  return sorted_clusters(raw);
}

std::vector<std::string> label_slot_values() {
  std::vector<std::string> out{"NONE"};
  for (int i = 0; i < kRelTypeCount; ++i)
    out.push_back(to_string(static_cast<RelType>(i)));
  return out;
}

std::vector<FeatureBlock> schema_blocks(FeatureSchema schema, const Lexicons& lex) {
  using Kind = FeatureBlock::Kind;
  std::vector<FeatureBlock> blocks;
  auto fitted = [&](int f, const char* n) {
    blocks.push_back({f, n, Kind::Fitted, {}});
  };
  auto fixed = [&](int f, const char* n, std::vector<std::string> v) {
    blocks.push_back({f, n, Kind::Fixed, std::move(v)});
  };
  auto binary = [&](int f, const char* n) {
    blocks.push_back({f, n, Kind::Binary, {}});
  };
  auto bag = [&](int f, const char* n, std::vector<std::string> v) {
    blocks.push_back({f, n, Kind::Bag, std::move(v)});
  };

  switch (schema) {
    case FeatureSchema::EventDct:
      fitted(kPosE1, "pos-e1");
      fitted(kChunkE1, "chunk-e1");
      fitted(kClassE1, "class-e1");
      fitted(kTenseE1, "tense-e1");
      fitted(kAspectE1, "aspect-e1");
      fitted(kPolarityE1, "polarity-e1");
      fitted(kTimexType, "timex-type");
      binary(kMainVerbE1, "main-verb-e1");
      break;
    case FeatureSchema::EventTimex:
      fitted(kPosE1, "pos-e1");
      fitted(kPosE2, "pos-e2");
      fitted(kChunkE1, "chunk-e1");
      fitted(kChunkE2, "chunk-e2");
      binary(kSamePos, "same-pos");
      binary(kEntityOrder, "entity-order");
      binary(kSentenceDistance, "sentence-distance");
      binary(kEntityDistance, "entity-distance");
      fitted(kClassE1, "class-e1");
      fitted(kTenseE1, "tense-e1");
      fitted(kAspectE1, "aspect-e1");
      fitted(kPolarityE1, "polarity-e1");
      fitted(kTimexType, "timex-type");
      binary(kMainVerbE1, "main-verb-e1");
      binary(kMainVerbE2, "main-verb-e2");
      fixed(kTempSignalCluster, "temp-signal-cluster", cluster_inventory(lex.timex_signals));
      fixed(kTempSignalPosition, "temp-signal-position", kPositions);
      bag(kTempSignalDep, "temp-signal-dep", lex.signal_dep_labels);
      fixed(kTimexDctLabel, "timex-dct-label", label_slot_values());
      break;
    case FeatureSchema::EventEvent:
    case FeatureSchema::Causal:
      fitted(kPosE1, "pos-e1");
      fitted(kPosE2, "pos-e2");
      fitted(kChunkE1, "chunk-e1");
      fitted(kChunkE2, "chunk-e2");
      binary(kSamePos, "same-pos");
      binary(kSentenceDistance, "sentence-distance");
      binary(kEntityDistance, "entity-distance");
      fitted(kClassE1, "class-e1");
      fitted(kTenseE1, "tense-e1");
      fitted(kAspectE1, "aspect-e1");
      fitted(kPolarityE1, "polarity-e1");
      fitted(kClassE2, "class-e2");
      fitted(kTenseE2, "tense-e2");
      fitted(kAspectE2, "aspect-e2");
      fitted(kPolarityE2, "polarity-e2");
      binary(kSameClass, "same-class");
      binary(kSameTenseAspect, "same-tense-aspect");
      binary(kSamePolarity, "same-polarity");
      fixed(kDepPath, "dep-path", lex.dep_path_whitelist);
      binary(kMainVerbE1, "main-verb-e1");
      binary(kMainVerbE2, "main-verb-e2");
      fixed(kTempSignalCluster, "temp-signal-cluster", cluster_inventory(lex.event_signals));
      fixed(kTempSignalPosition, "temp-signal-position", kPositions);
      bag(kTempSignalDep, "temp-signal-dep", lex.signal_dep_labels);
      if (schema == FeatureSchema::Causal) {
        fixed(kCausSignalCluster, "caus-signal-cluster", cluster_inventory(lex.causal_signals));
        fixed(kCausSignalPosition, "caus-signal-position", kPositions);
        bag(kCausSignalDep, "caus-signal-dep", lex.signal_dep_labels);
      }
      fixed(kWnSim, "wn-sim", kSimBuckets);
      if (schema == FeatureSchema::EventEvent) {
        fixed(kE1DctLabel, "e1-dct-label", label_slot_values());
        fixed(kE2DctLabel, "e2-dct-label", label_slot_values());
      } else {
        fixed(kPairLabel, "pair-label", label_slot_values());
      }
      break;
  }
  return blocks;
}

void bind_matchers(FeatureEncoders& enc, const Lexicons& lex) {
  enc.temporal_matcher = enc.schema == FeatureSchema::EventTimex ? lex.timex_signals
                                                                 : lex.event_signals;
  if (enc.schema == FeatureSchema::Causal) enc.causal_matcher = lex.causal_signals;
}

// Resolved endpoints; i2/t2 and the token ranges depend on the schema.
struct View {
  const EventInstance* i1 = nullptr;
  const EventInstance* i2 = nullptr;
  const Timex* t2 = nullptr;
  const AnnotatedDocument::TokRange* r1 = nullptr;
  const AnnotatedDocument::TokRange* r2 = nullptr;
  const Token* h1 = nullptr;
  const Token* h2 = nullptr;
};

View resolve(const EntityPair& pair, const AnnotatedDocument& ad, FeatureSchema schema) {
  PairKind want = schema == FeatureSchema::EventDct    ? PairKind::ED
                  : schema == FeatureSchema::EventTimex ? PairKind::ET
                                                        : PairKind::EE;
  if (pair.kind != want)
    throw Error(Error::Kind::Shape, to_string(pair.kind) + " pair does not fit the " +
                                        to_string(schema) + " feature schema");
  View v;
  v.i1 = ad.doc.find_instance(pair.e1);
  if (v.i1 == nullptr)
    throw Error(Error::Kind::Reference, "unknown event instance '" + pair.e1 + "'");
  v.r1 = ad.tokens_of(pair.e1);
  v.h1 = ad.head_token(pair.e1);
  if (v.r1 == nullptr || v.h1 == nullptr)
    throw Error(Error::Kind::Annotation, "no aligned tokens for '" + pair.e1 + "'");
  if (schema == FeatureSchema::EventDct || schema == FeatureSchema::EventTimex) {
    v.t2 = ad.doc.find_timex(pair.e2);
    if (v.t2 == nullptr)
      throw Error(Error::Kind::Reference, "unknown timex '" + pair.e2 + "'");
  } else {
    v.i2 = ad.doc.find_instance(pair.e2);
    if (v.i2 == nullptr)
      throw Error(Error::Kind::Reference, "unknown event instance '" + pair.e2 + "'");
  }
  if (schema != FeatureSchema::EventDct) {
    v.r2 = ad.tokens_of(pair.e2);
    v.h2 = ad.head_token(pair.e2);
    if (v.r2 == nullptr || v.h2 == nullptr)
      throw Error(Error::Kind::Annotation, "no aligned tokens for '" + pair.e2 + "'");
  }
  return v;
}

// The chosen signal occurrence for a pair, if any.
struct SignalInfo {
  bool found = false;
  std::string cluster;
  std::string position;
  std::vector<std::string> labels;
};

int sentence_start(const AnnotationLayer& layer, int sentence) {
  for (std::size_t t = 0; t < layer.tokens.size(); ++t)
    if (layer.tokens[t].sentence == sentence) return static_cast<int>(t);
  return -1;
}

// Scans the sentences of both endpoints; prefers the first match strictly
// between them, else the first by text order. The dependency labels join the
// match's internal root to both entity heads.
template <typename Lexicon>
SignalInfo find_signal(const AnnotatedDocument& ad, const Lexicon& lex,
                       const AnnotatedDocument::TokRange& ra,
                       const AnnotatedDocument::TokRange& rb) {
  const auto& toks = ad.layer.tokens;
  int sa = toks[ra.first].sentence;
  int sb = toks[rb.first].sentence;
  std::vector<int> sentences{std::min(sa, sb)};
  if (sa != sb) sentences.push_back(std::max(sa, sb));

  std::vector<SignalMatch> found;
  for (int s : sentences) {
    int start = sentence_start(ad.layer, s);
    if (start < 0) continue;
    std::vector<std::string> forms;
    for (std::size_t t = static_cast<std::size_t>(start);
         t < toks.size() && toks[t].sentence == s; ++t)
      forms.push_back(toks[t].form);
    for (SignalMatch m : lex.find(forms)) {
      m.first += start;
      m.last += start;
      found.push_back(std::move(m));
    }
  }
  if (found.empty()) return {};

  const auto& lo = ra.first <= rb.first ? ra : rb;
  const auto& hi = ra.first <= rb.first ? rb : ra;
  auto between = [&](const SignalMatch& m) {
    return m.first > lo.last && m.last < hi.first;
  };
  const SignalMatch* pick = nullptr;
  for (const auto& m : found)
    if (between(m)) {
      pick = &m;
      break;
    }
  if (pick == nullptr) pick = &found.front();

  SignalInfo info;
  info.found = true;
  info.cluster = pick->cluster;
  if (between(*pick))
    info.position = "BETWEEN";
  else if (pick->first == sentence_start(ad.layer, toks[pick->first].sentence))
    info.position = "BEGIN";
  else if (pick->first > hi.last)
    info.position = "AFTER";
  else
    info.position = "BEFORE";

  int root = pick->first;
  for (int t = pick->first; t <= pick->last; ++t) {
    int head = toks[t].head;
    if (head < pick->first || head > pick->last) {
      root = t;
      break;
    }
  }
  for (const std::string& l : ad.dep_labels_between(root, ra.head)) info.labels.push_back(l);
  for (const std::string& l : ad.dep_labels_between(root, rb.head)) info.labels.push_back(l);
  return info;
}

std::string label_or_none(const std::optional<RelType>& r) {
  return r.has_value() ? to_string(*r) : "NONE";
}

std::string sim_bucket(double v) {
  if (v <= 0.0) return kSimBuckets[0];
  if (v <= 0.5) return kSimBuckets[1];
  if (v <= 1.0) return kSimBuckets[2];
  return kSimBuckets[3];
}

std::optional<std::string> categorical_value(int field, const EntityPair& pair,
                                             const View& v, const AnnotatedDocument& ad,
                                             const RuleExtras& extras,
                                             const SignalInfo& temp, const SignalInfo& caus) {
  switch (field) {
    case kPosE1: return v.h1->pos;
    case kPosE2: return v.h2->pos;
    case kChunkE1: return chunk_base(v.h1->chunk);
    case kChunkE2: return chunk_base(v.h2->chunk);
    case kClassE1: return std::string(to_string(v.i1->cls));
    case kTenseE1: return std::string(to_string(v.i1->tense));
    case kAspectE1: return std::string(to_string(v.i1->aspect));
    case kPolarityE1: return v.i1->polarity;
    case kClassE2: return std::string(to_string(v.i2->cls));
    case kTenseE2: return std::string(to_string(v.i2->tense));
    case kAspectE2: return std::string(to_string(v.i2->aspect));
    case kPolarityE2: return v.i2->polarity;
    case kTimexType: return std::string(to_string(v.t2->type));
    case kDepPath: return ad.dep_path(pair.e1, pair.e2);
    case kWnSim: {
      std::optional<double> s = ad.wn_sim(pair.e1, pair.e2);
      if (!s.has_value()) return std::nullopt;
      return sim_bucket(*s);
    }
    case kTempSignalCluster:
      return temp.found ? std::optional<std::string>(temp.cluster) : std::nullopt;
    case kTempSignalPosition:
      return temp.found ? std::optional<std::string>(temp.position) : std::nullopt;
    case kCausSignalCluster:
      return caus.found ? std::optional<std::string>(caus.cluster) : std::nullopt;
    case kCausSignalPosition:
      return caus.found ? std::optional<std::string>(caus.position) : std::nullopt;
    case kTimexDctLabel: return label_or_none(extras.e2_dct);
    case kE1DctLabel: return label_or_none(extras.e1_dct);
    case kE2DctLabel: return label_or_none(extras.e2_dct);
    case kPairLabel: return label_or_none(extras.pair_label);
    default: return std::nullopt;
  }
}

bool binary_value(int field, const EntityPair& pair, const View& v,
                  const AnnotatedDocument& ad) {
  switch (field) {
    case kSamePos: return v.h2 != nullptr && v.h1->pos == v.h2->pos;
    case kEntityOrder: return ad.text_index(pair.e1) < ad.text_index(pair.e2);
    case kSentenceDistance: return ad.sentence_of(pair.e1) != ad.sentence_of(pair.e2);
    case kEntityDistance: return ad.entity_distance(pair.e1, pair.e2) != 0;
    case kSameClass: return v.i2 != nullptr && v.i1->cls == v.i2->cls;
    case kSameTenseAspect:
      return v.i2 != nullptr && v.i1->tense == v.i2->tense && v.i1->aspect == v.i2->aspect;
    case kSamePolarity: return v.i2 != nullptr && v.i1->polarity == v.i2->polarity;
    case kMainVerbE1: return ad.is_main_event(pair.e1);
    case kMainVerbE2:
      if (v.i2 != nullptr) return ad.is_main_event(pair.e2);
      return v.h2 != nullptr && v.h2->main_verb;
    default: return false;
  }
}

const char* kind_word(FeatureBlock::Kind k) {
  switch (k) {
    case FeatureBlock::Kind::Fitted: return "fitted";
    case FeatureBlock::Kind::Fixed: return "fixed";
    case FeatureBlock::Kind::Binary: return "binary";
    case FeatureBlock::Kind::Bag: return "bag";
  }
  return "?";
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

std::vector<std::string> tab_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

[[noreturn]] void format_error(std::size_t line_no, const std::string& what) {
  throw Error(Error::Kind::Format, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string to_string(FeatureSchema s) {
  switch (s) {
    case FeatureSchema::EventDct: return "EVENT-DCT";
    case FeatureSchema::EventTimex: return "EVENT-TIMEX";
    case FeatureSchema::EventEvent: return "EVENT-EVENT";
    case FeatureSchema::Causal: return "CAUSAL";
  }
  return "?";
}

std::optional<FeatureSchema> feature_schema_from(std::string_view s) {
  if (s == "EVENT-DCT") return FeatureSchema::EventDct;
  if (s == "EVENT-TIMEX") return FeatureSchema::EventTimex;
  if (s == "EVENT-EVENT") return FeatureSchema::EventEvent;
  if (s == "CAUSAL") return FeatureSchema::Causal;
  return std::nullopt;
}

bool FeatureVector::test(std::uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return it != entries.end() && it->first == index;
}

std::uint32_t FeatureBlock::width() const {
  return kind == Kind::Binary ? 1 : static_cast<std::uint32_t>(values.size());
}

std::uint32_t FeatureEncoders::dim() const {
  std::uint32_t total = 0;
  for (const auto& b : blocks) total += b.width();
  return total;
}

const FeatureBlock* FeatureEncoders::block(std::string_view name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

std::uint32_t FeatureEncoders::offset_of(std::size_t block_index) const {
  std::uint32_t off = 0;
  for (std::size_t i = 0; i < block_index && i < blocks.size(); ++i) off += blocks[i].width();
  return off;
}

std::optional<std::uint32_t> FeatureEncoders::index_of(std::string_view block_name,
                                                       std::string_view value) const {
  std::uint32_t off = 0;
  for (const auto& b : blocks) {
    if (b.name == block_name) {
      if (b.kind == FeatureBlock::Kind::Binary)
        return value == "1" ? std::optional<std::uint32_t>(off) : std::nullopt;
      for (std::size_t j = 0; j < b.values.size(); ++j)
        if (b.values[j] == value) return off + static_cast<std::uint32_t>(j);
      return std::nullopt;
    }
    off += b.width();
  }
  return std::nullopt;
}

FeatureEncoders fit_encoders(
    FeatureSchema schema,
    const std::vector<std::pair<EntityPair, const AnnotatedDocument*>>& corpus,
    const Lexicons& lex) {
  if (corpus.empty()) throw Error(Error::Kind::Training, "empty training corpus");
  FeatureEncoders enc;
  enc.schema = schema;
  enc.blocks = schema_blocks(schema, lex);
  bind_matchers(enc, lex);
  const SignalInfo none;
  for (const auto& [pair, ad] : corpus) {
    if (ad == nullptr)
      throw Error(Error::Kind::Annotation, "training pair without document context");
    View v = resolve(pair, *ad, schema);
    for (auto& b : enc.blocks) {
      if (b.kind != FeatureBlock::Kind::Fitted) continue;
      auto val = categorical_value(b.field, pair, v, *ad, {}, none, none);
      if (!val.has_value()) continue;
      if (std::find(b.values.begin(), b.values.end(), *val) == b.values.end())
        b.values.push_back(*val);
    }
  }
  return enc;
}

FeatureVector featurize(const EntityPair& pair, const AnnotatedDocument& ad,
                        const FeatureEncoders& enc, const RuleExtras& extras) {
  View v = resolve(pair, ad, enc.schema);
  SignalInfo temp;
  SignalInfo caus;
  if (enc.schema != FeatureSchema::EventDct)
    temp = find_signal(ad, enc.temporal_matcher, *v.r1, *v.r2);
  if (enc.schema == FeatureSchema::Causal)
    caus = find_signal(ad, enc.causal_matcher, *v.r1, *v.r2);

  std::vector<std::uint32_t> hot;
  std::uint32_t off = 0;
  for (const auto& b : enc.blocks) {
    switch (b.kind) {
      case FeatureBlock::Kind::Binary:
        if (binary_value(b.field, pair, v, ad)) hot.push_back(off);
        break;
      case FeatureBlock::Kind::Bag: {
        const auto& labels = b.field == kCausSignalDep ? caus.labels : temp.labels;
        for (const auto& l : labels) {
          auto it = std::find(b.values.begin(), b.values.end(), l);
          if (it != b.values.end())
            hot.push_back(off + static_cast<std::uint32_t>(it - b.values.begin()));
        }
        break;
      }
      default: {
        auto val = categorical_value(b.field, pair, v, ad, extras, temp, caus);
        if (val.has_value()) {
          auto it = std::find(b.values.begin(), b.values.end(), *val);
          if (it != b.values.end())
            hot.push_back(off + static_cast<std::uint32_t>(it - b.values.begin()));
        }
        break;
      }
    }
    off += b.width();
  }
  std::sort(hot.begin(), hot.end());
  hot.erase(std::unique(hot.begin(), hot.end()), hot.end());

  FeatureVector out;
  out.dim = off;
  out.entries.reserve(hot.size());
  for (std::uint32_t i : hot) out.entries.emplace_back(i, 1.0);
  return out;
}

std::string render_encoders(const FeatureEncoders& enc) {
  std::ostringstream out;
  out << "timelink-encoders 1\n";
  out << "schema\t" << to_string(enc.schema) << "\n";
  out << "blocks\t" << enc.blocks.size() << "\n";
  for (const auto& b : enc.blocks) {
    out << "block\t" << b.name << "\t" << kind_word(b.kind) << "\t" << b.width() << "\n";
    if (b.kind != FeatureBlock::Kind::Binary)
      for (const auto& v : b.values) out << "value\t" << v << "\n";
  }
  out << "end\n";
  return out.str();
}

FeatureEncoders parse_encoders(const std::string& text, const Lexicons& lex) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t at = 0;
  auto next = [&]() -> const std::string& {
    if (at >= lines.size()) format_error(lines.size() + 1, "unexpected end of file");
    return lines[at++];
  };

  if (next() != "timelink-encoders 1")
    throw Error(Error::Kind::Format, "unsupported encoder format: '" + lines[0] + "'");

  auto schema_line = tab_fields(next());
  if (schema_line.size() != 2 || schema_line[0] != "schema")
    format_error(at, "expected 'schema'");
  auto schema = feature_schema_from(schema_line[1]);
  if (!schema.has_value()) format_error(at, "unknown schema '" + schema_line[1] + "'");

  FeatureEncoders enc;
  enc.schema = *schema;
  enc.blocks = schema_blocks(*schema, lex);
  bind_matchers(enc, lex);

  auto count_line = tab_fields(next());
  if (count_line.size() != 2 || count_line[0] != "blocks")
    format_error(at, "expected 'blocks'");
  if (count_line[1] != std::to_string(enc.blocks.size()))
    format_error(at, "expected " + std::to_string(enc.blocks.size()) + " blocks, got " +
                         count_line[1]);

  for (auto& b : enc.blocks) {
    auto head = tab_fields(next());
    if (head.size() != 4 || head[0] != "block") format_error(at, "expected 'block'");
    if (head[1] != b.name)
      format_error(at, "expected block '" + b.name + "', got '" + head[1] + "'");
    if (head[2] != kind_word(b.kind))
      format_error(at, "block '" + b.name + "' kind mismatch");
    std::size_t width = 0;
    try {
      width = std::stoul(head[3]);
    } catch (const std::exception&) {
      format_error(at, "bad block width '" + head[3] + "'");
    }
    if (b.kind == FeatureBlock::Kind::Binary) {
      if (width != 1) format_error(at, "binary block '" + b.name + "' must have width 1");
      continue;
    }
    b.values.clear();
    for (std::size_t j = 0; j < width; ++j) {
      auto val = tab_fields(next());
      if (val.size() != 2 || val[0] != "value") format_error(at, "expected 'value'");
      b.values.push_back(val[1]);
    }
  }
  if (next() != "end") format_error(at, "expected 'end'");
  return enc;
}

void save_encoders(const std::string& path, const FeatureEncoders& enc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Kind::Io, "cannot open '" + path + "' for writing");
  out << render_encoders(enc);
  if (!out) throw Error(Error::Kind::Io, "cannot write '" + path + "'");
}

FeatureEncoders load_encoders(const std::string& path, const Lexicons& lex) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_encoders(buf.str(), lex);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

}  // namespace timelink
