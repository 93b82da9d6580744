#pragma once

#include <stdexcept>
#include <string>

namespace homlts {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (files, scalars, command-line values).
class parse_error : public error {
 public:
  using error::error;
};

/// An operation was called on inputs that violate its contract.
class precondition_error : public error {
 public:
  using error::error;
};

/// Scalars from two different fields were combined.
class field_mismatch : public precondition_error {
 public:
  field_mismatch() : precondition_error("field mismatch: scalars belong to different fields") {}
  explicit field_mismatch(const std::string& what) : precondition_error(what) {}
};

/// Shapes of matrices, vectors or tensors do not agree.
class dimension_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// A requested tensor would exceed the configured coefficient budget.
class budget_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// A mathematical identity that must hold failed to hold. Raised when a
/// post-condition asserted by the library is violated; signals either a
/// malformed structure that slipped past validation or a defect.
class invariant_violation : public error {
 public:
  using error::error;
};

}  // namespace homlts
