#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace timelink {

// The 14 TLINK relation labels.
enum class RelType : std::uint8_t {
  Before,
  After,
  Includes,
  IsIncluded,
  During,
  DuringInv,
  Simultaneous,
  IAfter,
  IBefore,
  Identity,
  Begins,
  Ends,
  BegunBy,
  EndedBy,
};

inline constexpr int kRelTypeCount = 14;

const char* to_string(RelType r);
std::optional<RelType> rel_type_from(std::string_view s);

// BEFORE <-> AFTER, INCLUDES <-> IS_INCLUDED, ...; SIMULTANEOUS and IDENTITY
// are their own converses.
RelType converse(RelType r);

// Collapses rare labels onto frequent ones before training:
// IBEFORE -> BEFORE, IAFTER -> AFTER, DURING and DURING_INV -> SIMULTANEOUS.
// Idempotent; all other labels are fixed points.
RelType simplify_label(RelType r);

// Where a link came from. Never serialized except for the deduced flag.
enum class Provenance : std::uint8_t {
  Input,       // present in the parsed document
  Rule,        // rule sieve
  Deduced,     // temporal reasoner
  Classifier,  // linear model
  PostEdit,    // causal post-editing
  Propagated,  // cross-document propagation
};

const char* to_string(Provenance p);

// 3-class output of the causal classifier, relative to pair order (e1, e2):
// Clink = e1 causes e2, ClinkR = e2 causes e1.
enum class CausalLabel : std::uint8_t { Clink, ClinkR, NoRel };

const char* to_string(CausalLabel c);
std::optional<CausalLabel> causal_label_from(std::string_view s);

}  // namespace timelink
