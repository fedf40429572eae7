#ifndef CUSHEAF_ERROR_HPP
#define CUSHEAF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cusheaf {

enum class ErrorKind {
  InvalidInput,
  NotLsc,
  CoverGap,
  ComplexMismatch,
  DomainMismatch,
  InvalidPatch,
  MismatchOnOverlap,
  EnumerationOverflow,
  Precondition,
  NotCompatible,
  NotDense,
  NoEnlargement,
  Multiplicity,
  Compatibility,
  DifferentBasePoint,
};

const char* to_string(ErrorKind kind);

/// Failure of a library operation. `witness` names the point or element
/// that exhibits the failure when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace cusheaf

#endif
