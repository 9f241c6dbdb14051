#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace footrule {

enum class Errc {
  TiesPresent,
  NonFinite,
  TooShort,
  LengthMismatch,
  NTooSmall,
  NTooLarge,
  OutOfRange,
  BadVariance,
  TooFewSamples,
  DegenerateSample,
};

const char* to_string(Errc code) noexcept;

/// Thrown by every library entry point on a contract violation.
/// `index()` is the zero-based position of the offending element when
/// one can be named (first tied value, first non-finite value, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace footrule
