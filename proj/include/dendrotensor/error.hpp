#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dendrotensor {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (tree/forest grammar, JSON documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// A structure that violates an invariant: duplicate edges, cycles, name
/// clashes, inconsistent shuffle intersections.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// An argument outside an operation's domain (cutting at a leaf, composing
/// maps with mismatched boundaries, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dendrotensor
