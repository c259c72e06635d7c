#pragma once

#include <stdexcept>
#include <string>

namespace ddv {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (dimension mismatch, bad index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A differencing stencil would leave the open chart.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// A query point lies in no member of the relevant open cover.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Model data disagrees with itself (lift outside the kernel, bad table).
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

/// Input rejected before any computation (e.g. a non-cocycle handed to a coboundary solver).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Unknown check or model name, malformed flags.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddv
