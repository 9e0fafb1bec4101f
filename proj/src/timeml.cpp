#include "timelink/timeml.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "timelink/common.hpp"

namespace timelink {

namespace {

constexpr const char* kEventClassNames[] = {
    "REPORTING", "PERCEPTION", "ASPECTUAL", "I_ACTION",
    "I_STATE",   "STATE",      "OCCURRENCE",
};
constexpr const char* kTenseNames[] = {
    "PAST", "PRESENT", "FUTURE", "INFINITIVE", "PRESPART", "PASTPART", "NONE",
};
constexpr const char* kAspectNames[] = {
    "PROGRESSIVE", "PERFECTIVE", "PERFECTIVE_PROGRESSIVE", "NONE",
};
constexpr const char* kWordPosNames[] = {
    "ADJECTIVE", "NOUN", "VERB", "PREPOSITION", "OTHER",
};
constexpr const char* kTimexTypeNames[] = {"DATE", "TIME", "DURATION", "SET"};

template <typename E, std::size_t N>
std::optional<E> enum_from(const char* const (&names)[N], std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (s == names[i]) return static_cast<E>(i);
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(EventClass v) {
  return kEventClassNames[static_cast<int>(v)];
}
const char* to_string(Tense v) { return kTenseNames[static_cast<int>(v)]; }
const char* to_string(Aspect v) { return kAspectNames[static_cast<int>(v)]; }
const char* to_string(WordPos v) { return kWordPosNames[static_cast<int>(v)]; }
const char* to_string(TimexType v) {
  return kTimexTypeNames[static_cast<int>(v)];
}

std::optional<EventClass> event_class_from(std::string_view s) {
  return enum_from<EventClass>(kEventClassNames, s);
}
std::optional<Tense> tense_from(std::string_view s) {
  return enum_from<Tense>(kTenseNames, s);
}
std::optional<Aspect> aspect_from(std::string_view s) {
  return enum_from<Aspect>(kAspectNames, s);
}
std::optional<WordPos> word_pos_from(std::string_view s) {
  return enum_from<WordPos>(kWordPosNames, s);
}
std::optional<TimexType> timex_type_from(std::string_view s) {
  return enum_from<TimexType>(kTimexTypeNames, s);
}

// ---------------------------------------------------------------------------
// Document queries

const Timex* Document::find_timex(std::string_view tid) const {
  if (dct.tid == tid) return &dct;
  for (const Timex& t : timexes) {
    if (t.tid == tid) return &t;
  }
  return nullptr;
}

const EventInstance* Document::find_instance(std::string_view eiid) const {
  for (const EventInstance& e : events) {
    if (e.eiid == eiid) return &e;
  }
  return nullptr;
}

const EventToken* Document::find_event_token(std::string_view eid) const {
  for (const EventToken& e : event_tokens) {
    if (e.eid == eid) return &e;
  }
  return nullptr;
}

std::optional<EntityKind> Document::resolve_endpoint(
    std::string_view id) const {
  if (find_instance(id)) return EntityKind::Event;
  if (const Timex* t = find_timex(id)) {
    return t->tid == dct.tid ? EntityKind::Dct : EntityKind::TimexEntity;
  }
  if (find_event_token(id) && instances_of(id).size() == 1) {
    return EntityKind::Event;
  }
  return std::nullopt;
}

std::vector<const EventInstance*> Document::instances_of(
    std::string_view eid) const {
  std::vector<const EventInstance*> out;
  for (const EventInstance& e : events) {
    if (e.eid == eid) out.push_back(&e);
  }
  return out;
}

std::vector<std::string> Document::entity_node_ids() const {
  std::vector<std::string> out;
  out.reserve(1 + timexes.size() + events.size());
  out.push_back(dct.tid);
  for (const Timex& t : timexes) out.push_back(t.tid);
  for (const EventInstance& e : events) out.push_back(e.eiid);
  return out;
}

std::string Document::fresh_link_id(int& counter) const {
  int max_seen = 0;
  auto scan = [&max_seen](const std::string& lid) {
    if (lid.size() < 2 || lid[0] != 'l') return;
    int v = 0;
    const char* first = lid.data() + 1;
    const char* last = lid.data() + lid.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last) max_seen = std::max(max_seen, v);
  };
  for (const TLink& t : tlinks) scan(t.lid);
  for (const CLink& c : clinks) scan(c.lid);
  if (counter <= max_seen) counter = max_seen + 1;
  return "l" + std::to_string(counter++);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void fail_parse(const std::string& msg, std::size_t at) {
  throw Error(Error::Kind::Parse, msg, at);
}

bool name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c == ':';
}
bool name_char(char c) {
  return name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}
bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

std::string decode_entities(std::string_view s, std::size_t base) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos) {
      fail_parse("unterminated character entity", base + i);
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "amp") {
      out += '&';
    } else if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (!name.empty() && name[0] == '#') {
      std::string_view digits = name.substr(1);
      int radix = 10;
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        radix = 16;
        digits = digits.substr(1);
      }
      unsigned long cp = 0;
      auto [p, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), cp, radix);
      if (ec != std::errc() || p != digits.data() + digits.size() ||
          cp > 0x10ffff) {
        fail_parse("bad numeric character entity", base + i);
      }
      // UTF-8 encode.
      if (cp < 0x80) {
        out += static_cast<char>(cp);
      } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
      } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
      } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
      }
    } else {
      fail_parse("unknown character entity '&" + std::string(name) + ";'",
                 base + i);
    }
    i = semi;
  }
  return out;
}

struct RawAttr {
  std::string name;
  std::string value;
  std::size_t offset = 0;  // of the attribute name
};

struct Tag {
  std::string name;
  std::vector<RawAttr> attrs;
  std::string raw_attrs;  // source text between name and the tag end
  bool closing = false;
  bool self_closing = false;
  std::size_t begin = 0;  // offset of '<'
};

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  Document doc;
  bool saw_dct = false;
  bool saw_text = false;
  // Source offsets for post-pass diagnostics.
  std::vector<std::size_t> instance_offsets;
  std::vector<std::size_t> tlink_offsets;
  std::vector<std::size_t> clink_offsets;

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }

  void skip_ws() {
    while (!eof() && is_ws(src[pos])) ++pos;
  }

  void expect(char c, const char* what) {
    if (eof() || src[pos] != c) {
      fail_parse(std::string("expected ") + what, pos);
    }
    ++pos;
  }

  std::string read_name() {
    if (eof() || !name_start(src[pos])) fail_parse("expected a name", pos);
    std::size_t b = pos;
    while (!eof() && name_char(src[pos])) ++pos;
    return std::string(src.substr(b, pos - b));
  }

  // Reads one tag starting at '<'. Validates attribute syntax.
  Tag read_tag() {
    Tag t;
    t.begin = pos;
    expect('<', "'<'");
    if (!eof() && src[pos] == '/') {
      ++pos;
      t.closing = true;
      t.name = read_name();
      skip_ws();
      expect('>', "'>' after close tag");
      return t;
    }
    t.name = read_name();
    std::size_t attrs_begin = pos;
    while (true) {
      std::size_t before = pos;
      skip_ws();
      if (eof()) fail_parse("unterminated tag", t.begin);
      if (src[pos] == '>') {
        t.raw_attrs = std::string(src.substr(attrs_begin, before - attrs_begin));
        if (before != pos) {
          t.raw_attrs += std::string(src.substr(before, pos - before));
        }
        ++pos;
        return t;
      }
      if (src[pos] == '/') {
        std::size_t slash = pos;
        ++pos;
        expect('>', "'>' after '/'");
        t.self_closing = true;
        t.raw_attrs = std::string(src.substr(attrs_begin, slash - attrs_begin));
        return t;
      }
      if (before == pos) fail_parse("expected whitespace before attribute", pos);
      RawAttr a;
      a.offset = pos;
      a.name = read_name();
      skip_ws();
      expect('=', "'=' in attribute");
      skip_ws();
      if (eof() || (src[pos] != '"' && src[pos] != '\'')) {
        fail_parse("expected quoted attribute value", pos);
      }
      char quote = src[pos];
      ++pos;
      std::size_t vb = pos;
      while (!eof() && src[pos] != quote && src[pos] != '<') ++pos;
      if (eof() || src[pos] != quote) {
        fail_parse("unterminated attribute value", vb);
      }
      a.value = decode_entities(src.substr(vb, pos - vb), vb);
      ++pos;
      t.attrs.push_back(std::move(a));
    }
  }

  // Skips an element (the open tag is already consumed) without interpreting
  // it; quoted attribute values may contain '<' or '>'.
  void skip_element_body(const Tag& open) {
    if (open.self_closing) return;
    int depth = 1;
    while (depth > 0) {
      std::size_t lt = src.find('<', pos);
      if (lt == std::string_view::npos) {
        fail_parse("unterminated element '" + open.name + "'", open.begin);
      }
      pos = lt;
      Tag t = read_tag();
      if (t.closing) {
        --depth;
      } else if (!t.self_closing) {
        ++depth;
      }
    }
  }

  static std::optional<std::string> take(std::vector<RawAttr>& attrs,
                                         std::string_view name) {
    for (auto it = attrs.begin(); it != attrs.end(); ++it) {
      if (it->name == name) {
        std::string v = std::move(it->value);
        attrs.erase(it);
        return v;
      }
    }
    return std::nullopt;
  }

  static std::string require(Tag& t, std::string_view name) {
    auto v = take(t.attrs, name);
    if (!v) {
      throw Error(Error::Kind::Format,
                  t.name + " is missing the " + std::string(name) +
                      " attribute",
                  t.begin);
    }
    return *v;
  }

  static AttrList leftovers(Tag& t) {
    AttrList out;
    out.reserve(t.attrs.size());
    for (RawAttr& a : t.attrs) {
      out.emplace_back(std::move(a.name), std::move(a.value));
    }
    return out;
  }

  // Reads text content up to the next '<' and decodes entities.
  std::string read_text_run() {
    std::size_t b = pos;
    while (!eof() && src[pos] != '<') ++pos;
    return decode_entities(src.substr(b, pos - b), b);
  }

  Timex parse_timex_attrs(Tag& tag) {
    Timex t;
    t.tid = require(tag, "tid");
    std::string type = require(tag, "type");
    auto ty = timex_type_from(type);
    if (!ty) {
      throw Error(Error::Kind::Format, "unknown TIMEX3 type '" + type + "'",
                  tag.begin);
    }
    t.type = *ty;
    t.value = require(tag, "value");
    if (t.value.empty()) {
      throw Error(Error::Kind::Format, "TIMEX3 '" + t.tid + "' has empty value",
                  tag.begin);
    }
    t.function_in_document = take(tag.attrs, "functionInDocument").value_or("");
    t.anchor_time_id = take(tag.attrs, "anchorTimeID").value_or("");
    t.extra = leftovers(tag);
    return t;
  }

  void parse_dct(const Tag& open) {
    if (saw_dct) {
      throw Error(Error::Kind::Format, "more than one DCT element", open.begin);
    }
    if (open.self_closing) {
      throw Error(Error::Kind::Format, "DCT must contain a TIMEX3", open.begin);
    }
    skip_ws();
    Tag inner = read_tag();
    if (inner.closing || inner.name != "TIMEX3") {
      throw Error(Error::Kind::Format, "DCT must contain a TIMEX3",
                  inner.begin);
    }
    doc.dct = parse_timex_attrs(inner);
    if (doc.dct.function_in_document != "CREATION_TIME") {
      throw Error(Error::Kind::Format,
                  "the DCT TIMEX3 must have functionInDocument=CREATION_TIME",
                  inner.begin);
    }
    if (!inner.self_closing) {
      doc.dct_surface = read_text_run();
      Tag close = read_tag();
      if (!close.closing || close.name != "TIMEX3") {
        fail_parse("expected </TIMEX3>", close.begin);
      }
    }
    skip_ws();
    Tag close = read_tag();
    if (!close.closing || close.name != "DCT") {
      fail_parse("expected </DCT>", close.begin);
    }
    saw_dct = true;
  }

  void parse_text(const Tag& open) {
    if (saw_text) {
      throw Error(Error::Kind::Format, "more than one TEXT element",
                  open.begin);
    }
    saw_text = true;
    if (open.self_closing) return;
    struct Frame {
      Tag tag;
      std::size_t text_begin;
    };
    std::vector<Frame> stack;
    while (true) {
      if (eof()) fail_parse("unterminated TEXT element", open.begin);
      if (src[pos] != '<') {
        doc.text += read_text_run();
        continue;
      }
      Tag t = read_tag();
      if (t.closing) {
        if (stack.empty()) {
          if (t.name != "TEXT") {
            fail_parse("mismatched close tag </" + t.name + ">", t.begin);
          }
          return;
        }
        if (stack.back().tag.name != t.name) {
          fail_parse("mismatched close tag </" + t.name + ">", t.begin);
        }
        Frame f = std::move(stack.back());
        stack.pop_back();
        finish_inline(f.tag, Span{f.text_begin, doc.text.size()});
        continue;
      }
      if (t.self_closing) {
        finish_inline(t, Span{doc.text.size(), doc.text.size()});
        continue;
      }
      stack.push_back(Frame{std::move(t), doc.text.size()});
    }
  }

  void finish_inline(Tag& tag, Span span) {
    if (tag.name == "EVENT") {
      EventToken e;
      e.eid = require(tag, "eid");
      std::string cls = require(tag, "class");
      auto c = event_class_from(cls);
      if (!c) {
        throw Error(Error::Kind::Format, "unknown EVENT class '" + cls + "'",
                    tag.begin);
      }
      e.cls = *c;
      e.span = span;
      e.extra = leftovers(tag);
      doc.event_tokens.push_back(std::move(e));
    } else if (tag.name == "TIMEX3") {
      Timex t = parse_timex_attrs(tag);
      if (t.function_in_document == "CREATION_TIME") {
        throw Error(Error::Kind::Format,
                    "in-text TIMEX3 '" + t.tid +
                        "' claims functionInDocument=CREATION_TIME",
                    tag.begin);
      }
      t.span = span;
      doc.timexes.push_back(std::move(t));
    } else if (tag.name == "SIGNAL") {
      Signal s;
      s.sid = require(tag, "sid");
      s.span = span;
      s.extra = leftovers(tag);
      doc.signals.push_back(std::move(s));
    } else if (tag.name == "CSIGNAL") {
      CausalSignal s;
      s.cid = require(tag, "id");
      s.span = span;
      s.extra = leftovers(tag);
      doc.csignals.push_back(std::move(s));
    } else {
      InlineTag i;
      i.name = std::move(tag.name);
      i.raw_attrs = std::move(tag.raw_attrs);
      i.span = span;
      doc.inline_tags.push_back(std::move(i));
    }
  }

  void parse_makeinstance(Tag& tag) {
    EventInstance e;
    e.eiid = require(tag, "eiid");
    e.eid = require(tag, "eventID");
    auto read_enum = [&tag](std::string_view attr, auto from, auto dflt,
                            const char* what) {
      auto raw = take(tag.attrs, attr);
      if (!raw) return dflt;
      auto v = from(*raw);
      if (!v) {
        throw Error(Error::Kind::Format,
                    std::string("unknown ") + what + " '" + *raw + "'",
                    tag.begin);
      }
      return *v;
    };
    e.tense = read_enum("tense", tense_from, Tense::None, "tense");
    e.aspect = read_enum("aspect", aspect_from, Aspect::None, "aspect");
    e.pos = read_enum("pos", word_pos_from, WordPos::Other, "pos");
    e.polarity = take(tag.attrs, "polarity").value_or("POS");
    e.modality = take(tag.attrs, "modality").value_or("");
    e.extra = leftovers(tag);
    instance_offsets.push_back(tag.begin);
    doc.events.push_back(std::move(e));
  }

  void parse_tlink(Tag& tag) {
    TLink t;
    t.lid = require(tag, "lid");
    std::string rel = require(tag, "relType");
    auto r = rel_type_from(rel);
    if (!r) {
      throw Error(Error::Kind::Format, "unknown relType '" + rel + "'",
                  tag.begin);
    }
    t.rel = *r;
    auto pick = [&tag](std::string_view a, std::string_view b,
                       const char* what) {
      auto va = take(tag.attrs, a);
      auto vb = take(tag.attrs, b);
      if (va.has_value() == vb.has_value()) {
        throw Error(Error::Kind::Format,
                    std::string("TLINK needs exactly one ") + what, tag.begin);
      }
      return va ? *va : *vb;
    };
    t.source = pick("eventInstanceID", "timeID",
                    "of eventInstanceID or timeID");
    t.target = pick("relatedToEventInstance", "relatedToTime",
                    "of relatedToEventInstance or relatedToTime");
    t.signal_id = take(tag.attrs, "signalID").value_or("");
    auto ded = take(tag.attrs, "deduced");
    if (ded) {
      if (*ded != "true" && *ded != "false") {
        throw Error(Error::Kind::Format,
                    "deduced must be \"true\" or \"false\"", tag.begin);
      }
      t.deduced = *ded == "true";
    }
    t.provenance = t.deduced ? Provenance::Deduced : Provenance::Input;
    t.extra = leftovers(tag);
    tlink_offsets.push_back(tag.begin);
    doc.tlinks.push_back(std::move(t));
  }

  void parse_clink(Tag& tag) {
    CLink c;
    c.lid = require(tag, "id");
    c.source = require(tag, "source");
    c.target = require(tag, "target");
    c.csignal_id = take(tag.attrs, "csignalID").value_or("");
    c.provenance = Provenance::Input;
    c.extra = leftovers(tag);
    clink_offsets.push_back(tag.begin);
    doc.clinks.push_back(std::move(c));
  }

  void parse_docid(const Tag& open) {
    if (open.self_closing) return;
    doc.doc_id = read_text_run();
    Tag close = read_tag();
    if (!close.closing || close.name != "DOCID") {
      fail_parse("expected </DOCID>", close.begin);
    }
  }

  void keep_raw(const Tag& open) {
    skip_element_body(open);
    RawElement r;
    r.raw = std::string(src.substr(open.begin, pos - open.begin));
    (saw_text ? doc.preserved_tail : doc.preserved_head).push_back(std::move(r));
  }

  void expect_empty_content(const Tag& open) {
    if (open.self_closing) return;
    skip_ws();
    Tag close = read_tag();
    if (!close.closing || close.name != open.name) {
      fail_parse("expected </" + open.name + ">", close.begin);
    }
  }

  void run() {
    skip_ws();
    if (src.substr(pos, 5) == "<?xml") {
      std::size_t end = src.find("?>", pos);
      if (end == std::string_view::npos) {
        fail_parse("unterminated XML declaration", pos);
      }
      pos = end + 2;
      skip_ws();
    }
    Tag root = read_tag();
    if (root.closing || root.name != "TimeML") {
      fail_parse("expected the TimeML root element", root.begin);
    }
    for (RawAttr& a : root.attrs) {
      doc.root_attrs.emplace_back(std::move(a.name), std::move(a.value));
    }
    if (!root.self_closing) {
      while (true) {
        skip_ws();
        if (eof()) fail_parse("missing </TimeML>", src.size());
        if (src[pos] != '<') fail_parse("unexpected text outside TEXT", pos);
        Tag t = read_tag();
        if (t.closing) {
          if (t.name != "TimeML") {
            fail_parse("mismatched close tag </" + t.name + ">", t.begin);
          }
          break;
        }
        if (t.name == "DOCID") {
          parse_docid(t);
        } else if (t.name == "DCT") {
          parse_dct(t);
        } else if (t.name == "TEXT") {
          parse_text(t);
        } else if (t.name == "MAKEINSTANCE") {
          parse_makeinstance(t);
          expect_empty_content(t);
        } else if (t.name == "TLINK") {
          parse_tlink(t);
          expect_empty_content(t);
        } else if (t.name == "CLINK") {
          parse_clink(t);
          expect_empty_content(t);
        } else {
          keep_raw(t);
        }
      }
    }
    skip_ws();
    if (!eof()) fail_parse("content after </TimeML>", pos);
    validate();
  }

  void validate() {
    if (!saw_dct) {
      throw Error(Error::Kind::Format, "missing DCT element");
    }
    if (!saw_text) {
      throw Error(Error::Kind::Format, "missing TEXT element");
    }
    auto check_unique = [](std::unordered_set<std::string>& seen,
                           const std::string& id, const char* kind,
                           std::size_t at) {
      if (!seen.insert(id).second) {
        throw Error(Error::Kind::Format,
                    std::string("duplicate ") + kind + " id '" + id + "'", at);
      }
    };
    std::unordered_set<std::string> tids, eids, eiids, sids, cids, lids;
    check_unique(tids, doc.dct.tid, "TIMEX3", std::string::npos);
    for (const Timex& t : doc.timexes) {
      check_unique(tids, t.tid, "TIMEX3", std::string::npos);
    }
    for (const EventToken& e : doc.event_tokens) {
      check_unique(eids, e.eid, "EVENT", std::string::npos);
    }
    for (const Signal& s : doc.signals) {
      check_unique(sids, s.sid, "SIGNAL", std::string::npos);
    }
    for (const CausalSignal& s : doc.csignals) {
      check_unique(cids, s.cid, "CSIGNAL", std::string::npos);
    }
    for (const Timex& t : doc.timexes) {
      if (!t.anchor_time_id.empty() && !tids.count(t.anchor_time_id)) {
        throw Error(Error::Kind::Reference,
                    "TIMEX3 '" + t.tid + "' anchors to unknown time '" +
                        t.anchor_time_id + "'");
      }
    }
    for (std::size_t i = 0; i < doc.events.size(); ++i) {
      EventInstance& e = doc.events[i];
      check_unique(eiids, e.eiid, "MAKEINSTANCE", instance_offsets[i]);
      const EventToken* tok = doc.find_event_token(e.eid);
      if (!tok) {
        throw Error(Error::Kind::Reference,
                    "MAKEINSTANCE '" + e.eiid + "' names unknown event '" +
                        e.eid + "'",
                    instance_offsets[i]);
      }
      e.cls = tok->cls;
      e.span = tok->span;
    }
    for (std::size_t i = 0; i < doc.tlinks.size(); ++i) {
      const TLink& t = doc.tlinks[i];
      check_unique(lids, t.lid, "link", tlink_offsets[i]);
      for (const std::string* id : {&t.source, &t.target}) {
        if (!doc.find_instance(*id) && !doc.find_timex(*id)) {
          throw Error(Error::Kind::Reference,
                      "TLINK '" + t.lid + "' references unknown entity '" +
                          *id + "'",
                      tlink_offsets[i]);
        }
      }
      if (!t.signal_id.empty() && !sids.count(t.signal_id)) {
        throw Error(Error::Kind::Reference,
                    "TLINK '" + t.lid + "' references unknown signal '" +
                        t.signal_id + "'",
                    tlink_offsets[i]);
      }
    }
    for (std::size_t i = 0; i < doc.clinks.size(); ++i) {
      const CLink& c = doc.clinks[i];
      check_unique(lids, c.lid, "link", clink_offsets[i]);
      for (const std::string* id : {&c.source, &c.target}) {
        if (!doc.find_instance(*id)) {
          throw Error(Error::Kind::Reference,
                      "CLINK '" + c.lid + "' references unknown instance '" +
                          *id + "'",
                      clink_offsets[i]);
        }
      }
      if (c.source == c.target) {
        throw Error(Error::Kind::Format,
                    "CLINK '" + c.lid + "' relates an instance to itself",
                    clink_offsets[i]);
      }
      if (!c.csignal_id.empty() && !cids.count(c.csignal_id)) {
        throw Error(Error::Kind::Reference,
                    "CLINK '" + c.lid + "' references unknown causal signal '" +
                        c.csignal_id + "'",
                    clink_offsets[i]);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Serialization

void escape_text(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void escape_attr(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

void put_attr(std::string& out, std::string_view name, std::string_view value) {
  out += ' ';
  out += name;
  out += "=\"";
  escape_attr(out, value);
  out += '"';
}

void put_extras(std::string& out, const AttrList& extra) {
  for (const auto& [k, v] : extra) put_attr(out, k, v);
}

std::string timex_open_tag(const Timex& t) {
  std::string out = "<TIMEX3";
  put_attr(out, "tid", t.tid);
  put_attr(out, "type", to_string(t.type));
  put_attr(out, "value", t.value);
  if (!t.function_in_document.empty()) {
    put_attr(out, "functionInDocument", t.function_in_document);
  }
  if (!t.anchor_time_id.empty()) {
    put_attr(out, "anchorTimeID", t.anchor_time_id);
  }
  put_extras(out, t.extra);
  out += '>';
  return out;
}

// One in-text annotation to re-insert around doc.text.
struct Mark {
  Span span;
  std::string open;
  std::string close;  // empty means self-closing
  std::size_t ord = 0;
};

void render_text(std::string& out, const Document& doc) {
  std::vector<Mark> marks;
  std::size_t ord = 0;
  for (const EventToken& e : doc.event_tokens) {
    std::string open = "<EVENT";
    put_attr(open, "eid", e.eid);
    put_attr(open, "class", to_string(e.cls));
    put_extras(open, e.extra);
    open += '>';
    marks.push_back({e.span, std::move(open), "</EVENT>", ord++});
  }
  for (const Timex& t : doc.timexes) {
    marks.push_back({t.span, timex_open_tag(t), "</TIMEX3>", ord++});
  }
  for (const Signal& s : doc.signals) {
    std::string open = "<SIGNAL";
    put_attr(open, "sid", s.sid);
    put_extras(open, s.extra);
    open += '>';
    marks.push_back({s.span, std::move(open), "</SIGNAL>", ord++});
  }
  for (const CausalSignal& s : doc.csignals) {
    std::string open = "<CSIGNAL";
    put_attr(open, "id", s.cid);
    put_extras(open, s.extra);
    open += '>';
    marks.push_back({s.span, std::move(open), "</CSIGNAL>", ord++});
  }
  for (const InlineTag& t : doc.inline_tags) {
    if (t.span.length() == 0) {
      marks.push_back({t.span, "<" + t.name + t.raw_attrs + "/>", "", ord++});
    } else {
      marks.push_back(
          {t.span, "<" + t.name + t.raw_attrs + ">", "</" + t.name + ">",
           ord++});
    }
  }
  for (const Mark& m : marks) {
    if (!m.span.valid() || m.span.begin > m.span.end ||
        m.span.end > doc.text.size()) {
      throw Error(Error::Kind::Shape, "in-text span out of range");
    }
  }

  // Insertion points: closes first, then empty tags, then opens. Opens that
  // reach further come first; closes of later-opened spans come first.
  enum : int { kClose = 0, kEmpty = 1, kOpen = 2 };
  struct Point {
    std::size_t at;
    int kind;
    std::size_t other;  // the span's far end
    std::size_t ord;
    const Mark* mark;
  };
  std::vector<Point> points;
  for (const Mark& m : marks) {
    if (m.close.empty()) {
      points.push_back({m.span.begin, kEmpty, m.span.end, m.ord, &m});
    } else {
      points.push_back({m.span.begin, kOpen, m.span.end, m.ord, &m});
      points.push_back({m.span.end, kClose, m.span.begin, m.ord, &m});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) {
              if (a.at != b.at) return a.at < b.at;
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.kind == kClose) {
                if (a.other != b.other) return a.other > b.other;
                return a.ord > b.ord;
              }
              if (a.other != b.other) return a.other > b.other;
              return a.ord < b.ord;
            });

  std::vector<const Mark*> stack;
  std::size_t cursor = 0;
  for (const Point& p : points) {
    escape_text(out, std::string_view(doc.text).substr(cursor, p.at - cursor));
    cursor = p.at;
    switch (p.kind) {
      case kOpen:
        stack.push_back(p.mark);
        out += p.mark->open;
        break;
      case kEmpty:
        out += p.mark->open;
        break;
      case kClose:
        if (stack.empty() || stack.back() != p.mark) {
          throw Error(Error::Kind::Shape, "overlapping in-text spans");
        }
        stack.pop_back();
        out += p.mark->close;
        break;
    }
  }
  escape_text(out, std::string_view(doc.text).substr(cursor));
}

}  // namespace

Document parse_timeml(std::string_view xml) {
  Parser p;
  p.src = xml;
  p.run();
  return std::move(p.doc);
}

std::string serialize_timeml(const Document& doc) {
  std::string out = "<?xml version=\"1.0\" ?>\n<TimeML";
  put_extras(out, doc.root_attrs);
  out += ">\n";
  if (!doc.doc_id.empty()) {
    out += "<DOCID>";
    escape_text(out, doc.doc_id);
    out += "</DOCID>\n";
  }
  out += "\n<DCT>";
  out += timex_open_tag(doc.dct);
  escape_text(out, doc.dct_surface);
  out += "</TIMEX3></DCT>\n";
  for (const RawElement& r : doc.preserved_head) {
    out += r.raw;
    out += '\n';
  }
  out += "\n<TEXT>";
  render_text(out, doc);
  out += "</TEXT>\n\n";
  for (const EventInstance& e : doc.events) {
    out += "<MAKEINSTANCE";
    put_attr(out, "eiid", e.eiid);
    put_attr(out, "eventID", e.eid);
    put_attr(out, "pos", to_string(e.pos));
    put_attr(out, "tense", to_string(e.tense));
    put_attr(out, "aspect", to_string(e.aspect));
    put_attr(out, "polarity", e.polarity);
    if (!e.modality.empty()) put_attr(out, "modality", e.modality);
    put_extras(out, e.extra);
    out += "/>\n";
  }
  for (const RawElement& r : doc.preserved_tail) {
    out += r.raw;
    out += '\n';
  }
  for (const TLink& t : doc.tlinks) {
    out += "<TLINK";
    if (!t.lid.empty()) put_attr(out, "lid", t.lid);
    put_attr(out, "relType", to_string(t.rel));
    auto endpoint = [&doc, &out, &t](const std::string& id, const char* ev,
                                     const char* tm) {
      if (doc.find_instance(id)) {
        put_attr(out, ev, id);
      } else if (doc.find_timex(id)) {
        put_attr(out, tm, id);
      } else {
        throw Error(Error::Kind::Reference,
                    "TLINK '" + t.lid + "' references unknown entity '" + id +
                        "'");
      }
    };
    endpoint(t.source, "eventInstanceID", "timeID");
    endpoint(t.target, "relatedToEventInstance", "relatedToTime");
    if (!t.signal_id.empty()) put_attr(out, "signalID", t.signal_id);
    if (t.deduced) put_attr(out, "deduced", "true");
    put_extras(out, t.extra);
    out += "/>\n";
  }
  for (const CLink& c : doc.clinks) {
    out += "<CLINK";
    if (!c.lid.empty()) put_attr(out, "id", c.lid);
    put_attr(out, "source", c.source);
    put_attr(out, "target", c.target);
    if (!c.csignal_id.empty()) put_attr(out, "csignalID", c.csignal_id);
    put_extras(out, c.extra);
    out += "/>\n";
  }
  out += "</TimeML>\n";
  return out;
}

Document load_timeml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Error::Kind::Io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_timeml(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.offset());
  }
}

void save_timeml_file(const Document& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Error::Kind::Io, "cannot open '" + path + "' for writing");
  }
  out << serialize_timeml(doc);
  if (!out) {
    throw Error(Error::Kind::Io, "failed writing '" + path + "'");
  }
}

}  // namespace timelink
