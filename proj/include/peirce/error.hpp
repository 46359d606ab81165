#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace peirce {

enum class ErrorKind {
  InvalidArgument,
  NotWellDefined,
  NotIdempotentFamily,
  NotIdempotent,
  RankTooSmall,
  PairingNotSurjective,
  ModuleNotFirm,
  NotQuasiInvertible,
  BlockMismatch,
  BoundExceeded,
  PreconditionFailed,
  IndexClash,
  InjectivityFailure,
  NotHomomorphism,
  NotAssociative,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `witness` is a short human-readable
// description of the offending object (element, index triple, ...), empty
// when there is nothing to point at.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace peirce
