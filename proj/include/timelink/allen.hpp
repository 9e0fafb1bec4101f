#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timelink/labels.hpp"

namespace timelink {

// The 13 base relations of the interval algebra. The enum order fixes the bit
// order of AllenSet and the layout of the frozen composition table.
enum class AllenBase : std::uint8_t {
  Before,        // <
  After,         // >
  Meets,         // m
  MetBy,         // mi
  Overlaps,      // o
  OverlappedBy,  // oi
  Starts,        // s
  StartedBy,     // si
  During,        // d
  Contains,      // di
  Finishes,      // f
  FinishedBy,    // fi
  Equals,        // =
};

inline constexpr int kAllenBaseCount = 13;

const char* symbol(AllenBase b);  // "<", ">", "m", "mi", ...
std::optional<AllenBase> allen_base_from(std::string_view s);

// A set of base relations packed into the low 13 bits. The full set encodes
// "unknown"; the empty set only ever appears as the signal of inconsistency.
class AllenSet {
 public:
  static constexpr std::uint16_t kFullMask = (1u << kAllenBaseCount) - 1;

  constexpr AllenSet() : bits_(0) {}
  static constexpr AllenSet none() { return AllenSet(0); }
  static constexpr AllenSet full() { return AllenSet(kFullMask); }
  static constexpr AllenSet of(AllenBase b) {
    return AllenSet(static_cast<std::uint16_t>(1u << static_cast<int>(b)));
  }
  static AllenSet of(std::initializer_list<AllenBase> bs) {
    AllenSet s;
    for (AllenBase b : bs) s.bits_ |= of(b).bits_;
    return s;
  }
  static constexpr AllenSet from_bits(std::uint16_t bits) {
    return AllenSet(static_cast<std::uint16_t>(bits & kFullMask));
  }

  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_full() const { return bits_ == kFullMask; }
  constexpr bool contains(AllenBase b) const {
    return (bits_ & of(b).bits_) != 0;
  }
  constexpr bool subset_of(AllenSet o) const {
    return (bits_ & ~o.bits_) == 0;
  }
  int count() const;

  friend constexpr AllenSet operator|(AllenSet a, AllenSet b) {
    return AllenSet(static_cast<std::uint16_t>(a.bits_ | b.bits_));
  }
  friend constexpr AllenSet operator&(AllenSet a, AllenSet b) {
    return AllenSet(static_cast<std::uint16_t>(a.bits_ & b.bits_));
  }
  friend constexpr bool operator==(AllenSet a, AllenSet b) {
    return a.bits_ == b.bits_;
  }
  friend constexpr bool operator!=(AllenSet a, AllenSet b) {
    return a.bits_ != b.bits_;
  }

  std::string to_string() const;             // comma-joined symbols, "<,m"
  static AllenSet parse(std::string_view s); // inverse; throws Error(Value)

 private:
  explicit constexpr AllenSet(std::uint16_t bits) : bits_(bits) {}
  std::uint16_t bits_;
};

// Elementwise converse; involution.
AllenSet converse(AllenSet s);

// Union over base-pair compositions from the frozen 13x13 table; monotone in
// both arguments. compose(full, x) = full for nonempty x.
AllenSet compose(AllenSet a, AllenSet b);

// Raw table row for one base pair, as bits.
std::uint16_t compose_base_bits(AllenBase a, AllenBase b);

// Maps the 14 TLINK labels onto relation sets. A profile is total over the
// labels; unmap is the unique-preimage inverse with a fixed preference order
// so aliased images (SIMULTANEOUS/IDENTITY, IS_INCLUDED/DURING under the
// strict profile) resolve deterministically.
struct MappingProfile {
  std::string name;
  std::array<AllenSet, kRelTypeCount> forward{};
  std::vector<std::string> fallback;  // names of profiles to try after this one

  AllenSet map(RelType r) const { return forward[static_cast<int>(r)]; }
  std::optional<RelType> unmap(AllenSet s) const;

  // Total, nonempty images, converse-compatible: map(converse(L)) must equal
  // converse(map(L)). Throws Error(Config) on violation.
  void validate() const;
};

// Built-in profiles.
//   strict:         the table mapping; DURING aliases IS_INCLUDED on {d},
//                   IDENTITY aliases SIMULTANEOUS on {=}.
//   relaxed:        strict with BEFORE widened to {<,m} (and AFTER to {>,mi}).
//   during-overlap: strict with DURING on {o} and DURING_INV on {oi}.
const MappingProfile& strict_profile();
const MappingProfile& relaxed_profile();
const MappingProfile& during_overlap_profile();

// Built-in lookup by name; null when unknown.
const MappingProfile* find_builtin_profile(std::string_view name);

// Resolves a profile plus its declared fallback chain, e.g. the default
// strict profile falls back to relaxed. Throws Error(Config) on unknown names
// or cycles.
std::vector<MappingProfile> profile_chain(const MappingProfile& head);

// Profile file format: '#' comments; optional "name <id>" line; one
// "LABEL TAB symbols" line per label, symbols comma-separated; optional
// "fallback <id> [<id>...]" line. Labels left out default to the strict image.
MappingProfile parse_profile(std::string_view text, std::string default_name);
MappingProfile load_profile_file(const std::string& path);
std::string render_profile(const MappingProfile& p);

// Name or path: built-in names resolve directly, anything else is read as a
// profile file.
MappingProfile resolve_profile(const std::string& name_or_path);

}  // namespace timelink
