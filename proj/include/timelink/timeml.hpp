#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "timelink/labels.hpp"

namespace timelink {

// Character range [begin, end) into Document::text. Entities outside the text
// (the DCT) carry an invalid span.
struct Span {
  std::size_t begin = std::string::npos;
  std::size_t end = std::string::npos;

  bool valid() const { return begin != std::string::npos; }
  std::size_t length() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class EventClass : std::uint8_t {
  Reporting, Perception, Aspectual, IAction, IState, State, Occurrence,
};
enum class Tense : std::uint8_t {
  Past, Present, Future, Infinitive, PresPart, PastPart, None,
};
enum class Aspect : std::uint8_t {
  Progressive, Perfective, PerfectiveProgressive, None,
};
enum class WordPos : std::uint8_t { Adjective, Noun, Verb, Preposition, Other };
enum class TimexType : std::uint8_t { Date, Time, Duration, Set };

const char* to_string(EventClass v);
const char* to_string(Tense v);
const char* to_string(Aspect v);
const char* to_string(WordPos v);
const char* to_string(TimexType v);
std::optional<EventClass> event_class_from(std::string_view s);
std::optional<Tense> tense_from(std::string_view s);
std::optional<Aspect> aspect_from(std::string_view s);
std::optional<WordPos> word_pos_from(std::string_view s);
std::optional<TimexType> timex_type_from(std::string_view s);

// Attributes beyond the modeled ones, preserved verbatim in original order.
using AttrList = std::vector<std::pair<std::string, std::string>>;

// The in-text EVENT tag.
struct EventToken {
  std::string eid;
  EventClass cls = EventClass::Occurrence;
  Span span;
  AttrList extra;
  friend bool operator==(const EventToken&, const EventToken&) = default;
};

// EVENT joined with one MAKEINSTANCE: what the pipeline actually relates.
struct EventInstance {
  std::string eiid;
  std::string eid;
  EventClass cls = EventClass::Occurrence;
  Tense tense = Tense::None;
  Aspect aspect = Aspect::None;
  WordPos pos = WordPos::Other;
  std::string polarity = "POS";
  std::string modality;  // empty when absent
  Span span;             // the event token's span
  AttrList extra;
  friend bool operator==(const EventInstance&, const EventInstance&) = default;
};

struct Timex {
  std::string tid;
  TimexType type = TimexType::Date;
  std::string value;
  std::string function_in_document;  // e.g. CREATION_TIME; empty when absent
  std::string anchor_time_id;
  Span span;  // invalid for the DCT
  AttrList extra;
  friend bool operator==(const Timex&, const Timex&) = default;
};

struct Signal {
  std::string sid;
  Span span;
  AttrList extra;
  friend bool operator==(const Signal&, const Signal&) = default;
};

struct CausalSignal {
  std::string cid;  // serialized as the CSIGNAL id attribute
  Span span;
  AttrList extra;
  friend bool operator==(const CausalSignal&, const CausalSignal&) = default;
};

struct TLink {
  std::string lid;
  std::string source;  // eiid or tid
  std::string target;  // eiid or tid
  RelType rel = RelType::Before;
  std::string signal_id;
  bool deduced = false;
  Provenance provenance = Provenance::Input;
  AttrList extra;
  friend bool operator==(const TLink&, const TLink&) = default;
};

// Directed causal link; source is the causing event instance.
struct CLink {
  std::string lid;  // serialized as the CLINK id attribute
  std::string source;
  std::string target;
  std::string csignal_id;
  Provenance provenance = Provenance::Input;
  double confidence = 0.0;  // classifier margin; in-memory only
  friend bool operator==(const CLink& a, const CLink& b) {
    return a.lid == b.lid && a.source == b.source && a.target == b.target &&
           a.csignal_id == b.csignal_id && a.provenance == b.provenance &&
           a.extra == b.extra;  // confidence is transient
  }
  AttrList extra;
};

// An element kept verbatim: SLINK/ALINK and anything unmodeled.
struct RawElement {
  std::string raw;
  friend bool operator==(const RawElement&, const RawElement&) = default;
};

// Unknown in-text tag, preserved positionally for round-trip.
struct InlineTag {
  std::string name;
  std::string raw_attrs;  // attribute source text, verbatim (may be empty)
  Span span;
  friend bool operator==(const InlineTag&, const InlineTag&) = default;
};

enum class EntityKind { Event, TimexEntity, Dct };

struct Document {
  std::string doc_id;
  std::string text;          // TEXT content with tags stripped
  Timex dct;                 // functionInDocument = CREATION_TIME
  std::string dct_surface;   // surface string inside the DCT element
  std::vector<Timex> timexes;           // document order
  std::vector<EventToken> event_tokens; // document order
  std::vector<EventInstance> events;    // MAKEINSTANCE order
  std::vector<Signal> signals;
  std::vector<CausalSignal> csignals;
  std::vector<TLink> tlinks;
  std::vector<CLink> clinks;
  std::vector<RawElement> preserved_head;  // unmodeled elements before TEXT
  std::vector<RawElement> preserved_tail;  // SLINK/ALINK/unmodeled after TEXT
  std::vector<InlineTag> inline_tags;      // unmodeled in-text tags
  AttrList root_attrs;                     // attributes of the TimeML root

  const Timex* find_timex(std::string_view tid) const;  // includes the DCT
  const EventInstance* find_instance(std::string_view eiid) const;
  const EventToken* find_event_token(std::string_view eid) const;
  // Link-endpoint resolution: eiid, tid, or an eid with a unique instance.
  std::optional<EntityKind> resolve_endpoint(std::string_view id) const;
  // Instances of one event token, in MAKEINSTANCE order.
  std::vector<const EventInstance*> instances_of(std::string_view eid) const;

  // Reasoner node order: DCT, in-text timexes, event instances.
  std::vector<std::string> entity_node_ids() const;

  // An unused link id "l<n>" above every existing numeric TLINK/CLINK id.
  std::string fresh_link_id(int& counter) const;

  friend bool operator==(const Document&, const Document&) = default;
};

// Parses a TimeML file. Unknown tags and attributes are preserved verbatim;
// ids are checked unique per kind and link endpoints must resolve.
// Throws Error(Parse) with a byte offset on syntax problems, Error(Format) on
// contract violations, Error(Reference) on dangling ids.
Document parse_timeml(std::string_view xml);

// Deterministic serialization; deduced TLinks carry deduced="true".
// parse(serialize(parse(x))) == parse(x) for any accepted x.
std::string serialize_timeml(const Document& doc);

Document load_timeml_file(const std::string& path);
void save_timeml_file(const Document& doc, const std::string& path);

}  // namespace timelink
