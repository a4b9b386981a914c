#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pigou {

/// Failure categories surfaced by the library. Operations that can only fail
/// on caller error (bad regime, missing data) throw Error with the matching
/// code; validation routines return violation lists instead of throwing.
enum class Errc {
  NonMonotone,
  OutOfRange,
  MissingBound,
  WrongRegime,
  WrongUtility,
  Unsupported,
  TooLarge,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::ptrdiff_t index = -1)
      : std::runtime_error(message), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }

  /// Grid index the failure refers to, or -1 when not index-specific.
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  Errc code_;
  std::ptrdiff_t index_;
};

}  // namespace pigou
