#pragma once

#include <stdexcept>
#include <string>

namespace finrep {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (spec files, fixtures, partition files, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A candidate object does not satisfy the shape a verifier needs
/// (not a partition, asymmetric atom, group mismatch, bad coloring).
class StructuralError : public Error {
 public:
  enum class Kind {
    Overlap,
    Gap,
    ZeroAssigned,
    Asymmetric,
    GroupMismatch,
    AtomCount,
    Coloring,
  };

  StructuralError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(StructuralError::Kind kind);

}  // namespace finrep
