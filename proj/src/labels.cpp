#include "timelink/labels.hpp"

namespace timelink {

namespace {

constexpr const char* kRelNames[kRelTypeCount] = {
    "BEFORE", "AFTER",  "INCLUDES", "IS_INCLUDED", "DURING",
    "DURING_INV", "SIMULTANEOUS", "IAFTER", "IBEFORE", "IDENTITY",
    "BEGINS", "ENDS", "BEGUN_BY", "ENDED_BY",
};

}  // namespace

const char* to_string(RelType r) { return kRelNames[static_cast<int>(r)]; }

std::optional<RelType> rel_type_from(std::string_view s) {
  for (int i = 0; i < kRelTypeCount; ++i) {
    if (s == kRelNames[i]) return static_cast<RelType>(i);
  }
  return std::nullopt;
}

RelType converse(RelType r) {
  switch (r) {
    case RelType::Before: return RelType::After;
    case RelType::After: return RelType::Before;
    case RelType::Includes: return RelType::IsIncluded;
    case RelType::IsIncluded: return RelType::Includes;
    case RelType::During: return RelType::DuringInv;
    case RelType::DuringInv: return RelType::During;
    case RelType::Simultaneous: return RelType::Simultaneous;
    case RelType::IAfter: return RelType::IBefore;
    case RelType::IBefore: return RelType::IAfter;
    case RelType::Identity: return RelType::Identity;
    case RelType::Begins: return RelType::BegunBy;
    case RelType::Ends: return RelType::EndedBy;
    case RelType::BegunBy: return RelType::Begins;
    case RelType::EndedBy: return RelType::Ends;
  }
  return r;
}

RelType simplify_label(RelType r) {
  switch (r) {
    case RelType::IBefore: return RelType::Before;
    case RelType::IAfter: return RelType::After;
    case RelType::During:
    case RelType::DuringInv: return RelType::Simultaneous;
    default: return r;
  }
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Input: return "input";
    case Provenance::Rule: return "rule";
    case Provenance::Deduced: return "deduced";
    case Provenance::Classifier: return "classifier";
    case Provenance::PostEdit: return "post-edit";
    case Provenance::Propagated: return "propagated";
  }
  return "input";
}

const char* to_string(CausalLabel c) {
  switch (c) {
    case CausalLabel::Clink: return "CLINK";
    case CausalLabel::ClinkR: return "CLINK-R";
    case CausalLabel::NoRel: return "NO-REL";
  }
  return "NO-REL";
}

std::optional<CausalLabel> causal_label_from(std::string_view s) {
  if (s == "CLINK") return CausalLabel::Clink;
  if (s == "CLINK-R") return CausalLabel::ClinkR;
  if (s == "NO-REL") return CausalLabel::NoRel;
  return std::nullopt;
}

}  // namespace timelink
