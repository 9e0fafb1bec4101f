// Feature extraction: per-kind schemas of one-hot, binary, and bag blocks
// over fitted or lexicon-backed vocabularies, yielding sparse binary vectors.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "timelink/annotation.hpp"
#include "timelink/labels.hpp"
#include "timelink/lexicons.hpp"

namespace timelink {

// Which feature layout a vector follows. EventEvent is the temporal pair
// layout; Causal reuses it without the DCT label slots and adds causal-signal
// blocks plus a slot for the pair's temporal label.
enum class FeatureSchema : std::uint8_t { EventDct, EventTimex, EventEvent, Causal };

std::string to_string(FeatureSchema s);
std::optional<FeatureSchema> feature_schema_from(std::string_view s);

// Rule-sieve labels handed to the featurizer. EventTimex reads e2_dct (the
// timex against the DCT); EventEvent reads e1_dct and e2_dct; Causal reads
// pair_label, the temporal label already assigned to (e1, e2). Absent labels
// encode as NONE.
struct RuleExtras {
  std::optional<RelType> e1_dct;
  std::optional<RelType> e2_dct;
  std::optional<RelType> pair_label;
};

// Sparse binary vector; indices sorted and unique, every stored value is 1.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::uint32_t dim = 0;

  bool test(std::uint32_t index) const;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// One contiguous index block of the vector. Fitted blocks grow first-seen
// during fit_encoders; the other kinds carry preset vocabularies. Binary
// blocks are width 1; Bag blocks may set several bits at once.
struct FeatureBlock {
  enum class Kind : std::uint8_t { Fitted, Fixed, Binary, Bag };

  int field = 0;  // internal selector, stable within a schema
  std::string name;
  Kind kind = Kind::Fitted;
  std::vector<std::string> values;

  std::uint32_t width() const;
};

// Block layout plus the signal matchers featurize needs. Vocabularies are
// immutable after fitting; matchers are rebound from the lexicons on load, so
// encoder files stay free of lexicon entries.
struct FeatureEncoders {
  FeatureSchema schema = FeatureSchema::EventEvent;
  std::vector<FeatureBlock> blocks;
  SignalLexicon temporal_matcher;       // timex list for EventTimex, else event list
  CausalSignalLexicon causal_matcher;   // Causal schema only

  std::uint32_t dim() const;
  const FeatureBlock* block(std::string_view name) const;
  std::uint32_t offset_of(std::size_t block_index) const;
  // Global index of a block value; absent for unknown block or unseen value.
  std::optional<std::uint32_t> index_of(std::string_view block_name,
                                        std::string_view value) const;
};

// Fits the fitted vocabularies over the corpus in order (first-seen values)
// and fills the fixed vocabularies from the lexicons. Every pair must match
// the schema and come with the document it was generated from.
FeatureEncoders fit_encoders(
    FeatureSchema schema,
    const std::vector<std::pair<EntityPair, const AnnotatedDocument*>>& corpus,
    const Lexicons& lex);

// Assembles the feature vector for one pair. Pure; unseen categorical values
// leave their block all-zero.
FeatureVector featurize(const EntityPair& pair, const AnnotatedDocument& ad,
                        const FeatureEncoders& enc, const RuleExtras& extras = {});

// Versioned text round trip of the block layout (matchers are rebound from
// the lexicons by parse_encoders).
std::string render_encoders(const FeatureEncoders& enc);
FeatureEncoders parse_encoders(const std::string& text, const Lexicons& lex);
void save_encoders(const std::string& path, const FeatureEncoders& enc);
FeatureEncoders load_encoders(const std::string& path, const Lexicons& lex);

}  // namespace timelink
