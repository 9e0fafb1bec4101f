#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace timelink {

// Error taxonomy shared across the library. Every failure carries a kind so
// callers (and the CLI exit-code mapping) can react without string matching.
// |offset| is a byte offset into the offending input when one is known.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Parse,        // malformed input syntax
    Format,       // well-formed input violating a format contract
    Reference,    // dangling id
    Alignment,    // token/entity alignment failure
    Value,        // unrecognized value string
    Anchor,       // value cannot be placed on the timeline
    Consistency,  // operation requires a consistent graph
    Shape,        // dimension mismatch
    Training,     // degenerate training data
    Annotation,   // required annotation layer missing
    Fold,         // invalid fold request
    Config,       // bad configuration
    Io,           // file system failure
    Usage,        // bad invocation
  };

  Error(Kind kind, std::string message,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(render(kind, message, offset)),
        kind_(kind),
        offset_(offset),
        detail_(std::move(message)) {}

  Kind kind() const { return kind_; }
  std::optional<std::size_t> offset() const { return offset_; }
  // The message without the kind/offset prefix, for re-wrapping.
  const std::string& detail() const { return detail_; }

  static const char* kind_name(Kind k);

 private:
  static std::string render(Kind kind, const std::string& message,
                            std::optional<std::size_t> offset);

  Kind kind_;
  std::optional<std::size_t> offset_;
  std::string detail_;
};

}  // namespace timelink
