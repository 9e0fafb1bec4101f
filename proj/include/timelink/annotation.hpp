// Sidecar token annotations, document alignment, and candidate pair generation.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "timelink/timeml.hpp"

namespace timelink {

// One token of the sidecar layer. head is a document-level token index, -1 for
// sentence roots. begin/end are character offsets, filled by attach_annotations.
struct Token {
  std::string form;
  std::string lemma;
  std::string pos;
  std::string chunk;
  std::string deprel;
  std::string supersense;
  int head = -1;
  bool main_verb = false;
  int sentence = 0;
  std::size_t begin = std::string::npos;
  std::size_t end = std::string::npos;
};

// Token records plus the event-coreference partition (sets of eiid).
struct AnnotationLayer {
  std::vector<Token> tokens;
  std::vector<std::vector<std::string>> coref;
  int sentence_count = 0;
};

// Sidecar format: one token per line, tab-separated columns
//   ID FORM LEMMA POS CHUNK HEAD DEPREL MAINVERB [SUPERSENSE]
// ID and HEAD are 1-based within the sentence, HEAD 0 marks the root.
// Blank lines separate sentences. Lines "#coref\teiid..." declare coreference
// sets; other "#" lines are comments.
AnnotationLayer parse_annotation_layer(const std::string& text);
AnnotationLayer load_annotation_file(const std::string& path);

// Word-pair similarity scores; keys are unordered lemma pairs.
struct SimilarityTable {
  std::map<std::pair<std::string, std::string>, double> scores;

  std::optional<double> lookup(const std::string& a, const std::string& b) const;
};

// Format: lemma1 TAB lemma2 TAB score, one pair per line.
SimilarityTable parse_similarity_table(const std::string& text);
SimilarityTable load_similarity_file(const std::string& path);

enum class PairKind { TT, ED, ET, EE };
std::string to_string(PairKind k);

// Chunk tag without its B-/I- prefix.
std::string chunk_base(const std::string& chunk);

// Candidate pair; for ET the timex is always e2. Contextual queries go through
// the AnnotatedDocument the pair was generated from.
struct EntityPair {
  PairKind kind = PairKind::EE;
  std::string e1;
  std::string e2;
  bool same_sentence = false;

  friend bool operator==(const EntityPair&, const EntityPair&) = default;
};

// Document plus aligned token layer; exposes the context lookups the sieves
// and featurizers need. Entity ids are eiids and tids; the DCT has no tokens.
struct AnnotatedDocument {
  struct TokRange {
    int first = -1;
    int last = -1;
    int head = -1;
  };

  Document doc;
  AnnotationLayer layer;
  std::optional<SimilarityTable> sim;
  std::unordered_map<std::string, TokRange> entity_tokens;
  std::vector<std::string> text_order;  // in-text entities by character position

  const Token* head_token(const std::string& id) const;
  const TokRange* tokens_of(const std::string& id) const;
  int sentence_of(const std::string& id) const;  // -1 when the entity has no tokens
  int text_index(const std::string& id) const;   // -1 when not an in-text entity
  // In-text entities strictly between a and b; -1 when either has no position.
  int entity_distance(const std::string& a, const std::string& b) const;
  bool is_main_event(const std::string& eiid) const;
  // First instance in the sentence whose tokens carry a main-verb flag.
  std::optional<std::string> main_event_of(int sentence) const;
  // Dependency path between entity head tokens: labels top-down from the
  // common ancestor, joined with "-"; "-INV" appended when e2 dominates e1.
  // Absent when the tokens are in different sentences or disconnected.
  std::optional<std::string> dep_path(const std::string& e1, const std::string& e2) const;
  // Atomic dependency labels on the path between two tokens; empty when
  // disconnected. Used for signal-dependency bags.
  std::vector<std::string> dep_labels_between(int tok_a, int tok_b) const;
  std::optional<double> wn_sim(const std::string& a, const std::string& b) const;
  bool coreferent(const std::string& eiid_a, const std::string& eiid_b) const;
};

// Aligns layer tokens against doc.text in order, skipping whitespace.
// Mismatched or missing tokens raise an alignment error naming both sides.
AnnotatedDocument attach_annotations(Document doc, AnnotationLayer layer,
                                     std::optional<SimilarityTable> sim = std::nullopt);

enum class Task { Temporal, Causal };

// Temporal: consecutive-sentence main-event pairs, same-sentence event pairs,
// same-sentence event-timex pairs, event-DCT pairs, all timex-timex pairs
// including the DCT. Causal: forward same-sentence event pairs plus each event
// paired with the events of the immediately following sentence. Document
// order; fewer than two entities yields an empty sequence.
std::vector<EntityPair> candidate_pairs(const AnnotatedDocument& ad, Task task);

}  // namespace timelink
