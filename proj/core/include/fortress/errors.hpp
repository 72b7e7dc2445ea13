#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fortress {

/// Malformed input: bad project file, unknown event, invalid supervisor, ...
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction exceeded a configured size cap.
class SizeLimitError : public std::runtime_error {
 public:
  SizeLimitError(std::string stage, std::size_t cap, std::string what)
      : std::runtime_error("size limit exceeded in stage '" + stage + "' (cap " + std::to_string(cap) + "): " + what),
        stage_(std::move(stage)),
        cap_(cap),
        detail_(std::move(what)) {}

  const std::string& stage() const { return stage_; }
  std::size_t cap() const { return cap_; }
  const std::string& detail() const { return detail_; }

  SizeLimitError with_stage(std::string stage) const { return SizeLimitError(std::move(stage), cap_, detail_); }

 private:
  std::string stage_;
  std::size_t cap_;
  std::string detail_;
};

/// Command resolution failed because a reachable control state has no command.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result failed its own post-condition check. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fortress
