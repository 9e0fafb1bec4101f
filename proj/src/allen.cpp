#include "timelink/allen.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "timelink/common.hpp"

namespace timelink {

namespace {

#include "allen_compose.inc"

constexpr const char* kSymbols[kAllenBaseCount] = {
    "<", ">", "m", "mi", "o", "oi", "s", "si", "d", "di", "f", "fi", "=",
};

// Converse pairs: each base relation's mirror under argument swap.
constexpr AllenBase kConverse[kAllenBaseCount] = {
    AllenBase::After,        AllenBase::Before,   AllenBase::MetBy,
    AllenBase::Meets,        AllenBase::OverlappedBy, AllenBase::Overlaps,
    AllenBase::StartedBy,    AllenBase::Starts,   AllenBase::Contains,
    AllenBase::During,       AllenBase::FinishedBy,   AllenBase::Finishes,
    AllenBase::Equals,
};

// unmap preference: canonical labels first so aliased images (IS_INCLUDED vs
// DURING, SIMULTANEOUS vs IDENTITY under strict) resolve deterministically.
constexpr RelType kUnmapOrder[kRelTypeCount] = {
    RelType::Before,   RelType::After,       RelType::Includes,
    RelType::IsIncluded, RelType::Simultaneous, RelType::IBefore,
    RelType::IAfter,   RelType::Begins,      RelType::BegunBy,
    RelType::Ends,     RelType::EndedBy,     RelType::During,
    RelType::DuringInv, RelType::Identity,
};

std::string trimmed(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const char* symbol(AllenBase b) { return kSymbols[static_cast<int>(b)]; }

std::optional<AllenBase> allen_base_from(std::string_view s) {
  for (int i = 0; i < kAllenBaseCount; ++i) {
    if (s == kSymbols[i]) return static_cast<AllenBase>(i);
  }
  return std::nullopt;
}

int AllenSet::count() const { return std::popcount(bits_); }

std::string AllenSet::to_string() const {
  std::string out;
  for (int i = 0; i < kAllenBaseCount; ++i) {
    if (!contains(static_cast<AllenBase>(i))) continue;
    if (!out.empty()) out += ',';
    out += kSymbols[i];
  }
  return out;
}

AllenSet AllenSet::parse(std::string_view s) {
  AllenSet out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string_view piece =
        s.substr(pos, comma == std::string_view::npos ? s.size() - pos
                                                      : comma - pos);
    std::string tok = trimmed(piece);
    if (!tok.empty()) {
      auto b = allen_base_from(tok);
      if (!b) throw Error(Error::Kind::Value, "unknown relation symbol '" + tok + "'");
      out = out | of(*b);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

AllenSet converse(AllenSet s) {
  std::uint16_t out = 0;
  for (int i = 0; i < kAllenBaseCount; ++i) {
    if (s.contains(static_cast<AllenBase>(i))) {
      out |= static_cast<std::uint16_t>(1u << static_cast<int>(kConverse[i]));
    }
  }
  return AllenSet::from_bits(out);
}

std::uint16_t compose_base_bits(AllenBase a, AllenBase b) {
  return kComposeBase[static_cast<int>(a)][static_cast<int>(b)];
}

AllenSet compose(AllenSet a, AllenSet b) {
  std::uint16_t out = 0;
  std::uint16_t abits = a.bits();
  while (abits) {
    int i = std::countr_zero(abits);
    abits &= static_cast<std::uint16_t>(abits - 1);
    std::uint16_t bbits = b.bits();
    while (bbits) {
      int j = std::countr_zero(bbits);
      bbits &= static_cast<std::uint16_t>(bbits - 1);
      out |= kComposeBase[i][j];
      if (out == AllenSet::kFullMask) return AllenSet::full();
    }
  }
  return AllenSet::from_bits(out);
}

std::optional<RelType> MappingProfile::unmap(AllenSet s) const {
  for (RelType r : kUnmapOrder) {
    if (forward[static_cast<int>(r)] == s) return r;
  }
  return std::nullopt;
}

void MappingProfile::validate() const {
  for (int i = 0; i < kRelTypeCount; ++i) {
    RelType r = static_cast<RelType>(i);
    if (forward[i].empty()) {
      throw Error(Error::Kind::Config, "profile '" + name + "': label " +
                                           std::string(to_string(r)) +
                                           " maps to the empty set");
    }
    AllenSet mirrored = forward[static_cast<int>(timelink::converse(r))];
    if (timelink::converse(forward[i]) != mirrored) {
      throw Error(Error::Kind::Config,
                  "profile '" + name + "': converse mismatch on " +
                      std::string(to_string(r)));
    }
  }
}

namespace {

MappingProfile make_strict() {
  using B = AllenBase;
  MappingProfile p;
  p.name = "strict";
  p.fallback = {"relaxed"};
  auto set = [&p](RelType r, AllenSet s) { p.forward[static_cast<int>(r)] = s; };
  set(RelType::Before, AllenSet::of(B::Before));
  set(RelType::After, AllenSet::of(B::After));
  set(RelType::IBefore, AllenSet::of(B::Meets));
  set(RelType::IAfter, AllenSet::of(B::MetBy));
  set(RelType::Begins, AllenSet::of(B::Starts));
  set(RelType::BegunBy, AllenSet::of(B::StartedBy));
  set(RelType::Ends, AllenSet::of(B::Finishes));
  set(RelType::EndedBy, AllenSet::of(B::FinishedBy));
  set(RelType::IsIncluded, AllenSet::of(B::During));
  set(RelType::Includes, AllenSet::of(B::Contains));
  set(RelType::During, AllenSet::of(B::During));
  set(RelType::DuringInv, AllenSet::of(B::Contains));
  set(RelType::Simultaneous, AllenSet::of(B::Equals));
  set(RelType::Identity, AllenSet::of(B::Equals));
  p.validate();
  return p;
}

MappingProfile make_relaxed() {
  MappingProfile p = make_strict();
  p.name = "relaxed";
  p.fallback = {};
  p.forward[static_cast<int>(RelType::Before)] =
      AllenSet::of({AllenBase::Before, AllenBase::Meets});
  p.forward[static_cast<int>(RelType::After)] =
      AllenSet::of({AllenBase::After, AllenBase::MetBy});
  p.validate();
  return p;
}

MappingProfile make_during_overlap() {
  MappingProfile p = make_strict();
  p.name = "during-overlap";
  p.fallback = {};
  p.forward[static_cast<int>(RelType::During)] = AllenSet::of(AllenBase::Overlaps);
  p.forward[static_cast<int>(RelType::DuringInv)] =
      AllenSet::of(AllenBase::OverlappedBy);
  p.validate();
  return p;
}

}  // namespace

const MappingProfile& strict_profile() {
  static const MappingProfile p = make_strict();
  return p;
}

const MappingProfile& relaxed_profile() {
  static const MappingProfile p = make_relaxed();
  return p;
}

const MappingProfile& during_overlap_profile() {
  static const MappingProfile p = make_during_overlap();
  return p;
}

const MappingProfile* find_builtin_profile(std::string_view name) {
  if (name == "strict") return &strict_profile();
  if (name == "relaxed") return &relaxed_profile();
  if (name == "during-overlap") return &during_overlap_profile();
  return nullptr;
}

std::vector<MappingProfile> profile_chain(const MappingProfile& head) {
  std::vector<MappingProfile> chain{head};
  std::unordered_set<std::string> seen{head.name};
  size_t at = 0;
  while (at < chain.size()) {
    for (const std::string& next : chain[at].fallback) {
      if (seen.count(next)) {
        throw Error(Error::Kind::Config,
                    "profile fallback cycle through '" + next + "'");
      }
      const MappingProfile* p = find_builtin_profile(next);
      if (!p) {
        throw Error(Error::Kind::Config, "unknown fallback profile '" + next + "'");
      }
      chain.push_back(*p);
      seen.insert(next);
    }
    ++at;
  }
  return chain;
}

MappingProfile parse_profile(std::string_view text, std::string default_name) {
  MappingProfile p = strict_profile();  // unlisted labels keep strict images
  p.name = std::move(default_name);
  p.fallback.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    size_t sep = t.find_first_of(" \t");
    std::string key = sep == std::string::npos ? t : t.substr(0, sep);
    std::string rest = sep == std::string::npos ? "" : trimmed(t.substr(sep));
    if (key == "name") {
      p.name = rest;
    } else if (key == "fallback") {
      std::istringstream fs(rest);
      std::string f;
      while (fs >> f) p.fallback.push_back(f);
    } else if (auto rel = rel_type_from(key)) {
      p.forward[static_cast<int>(*rel)] = AllenSet::parse(rest);
    } else {
      throw Error(Error::Kind::Config, "profile line " + std::to_string(lineno) +
                                           ": unknown key '" + key + "'");
    }
  }
  p.validate();
  return p;
}

MappingProfile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot read profile file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return parse_profile(buf.str(), base);
}

std::string render_profile(const MappingProfile& p) {
  std::string out = "name " + p.name + "\n";
  if (!p.fallback.empty()) {
    out += "fallback";
    for (const auto& f : p.fallback) out += " " + f;
    out += "\n";
  }
  for (int i = 0; i < kRelTypeCount; ++i) {
    out += to_string(static_cast<RelType>(i));
    out += '\t';
    out += p.forward[i].to_string();
    out += '\n';
  }
  return out;
}

MappingProfile resolve_profile(const std::string& name_or_path) {
  if (const MappingProfile* p = find_builtin_profile(name_or_path)) return *p;
  return load_profile_file(name_or_path);
}

}  // namespace timelink
