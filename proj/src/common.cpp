#include "timelink/common.hpp"

namespace timelink {

const char* Error::kind_name(Kind k) {
  switch (k) {
    case Kind::Parse: return "parse error";
    case Kind::Format: return "format error";
    case Kind::Reference: return "reference error";
    case Kind::Alignment: return "alignment error";
    case Kind::Value: return "value error";
    case Kind::Anchor: return "anchor error";
    case Kind::Consistency: return "consistency error";
    case Kind::Shape: return "shape error";
    case Kind::Training: return "training error";
    case Kind::Annotation: return "annotation error";
    case Kind::Fold: return "fold error";
    case Kind::Config: return "config error";
    case Kind::Io: return "io error";
    case Kind::Usage: return "usage error";
  }
  return "error";
}

std::string Error::render(Kind kind, const std::string& message,
                          std::optional<std::size_t> offset) {
  std::string out = kind_name(kind);
  if (offset) {
    out += " at byte ";
    out += std::to_string(*offset);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace timelink
