#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crown {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

/// A coordinate sequence is not an element of W_n.
class RejectedWord : public Error {
 public:
  RejectedWord(std::size_t index, const std::string& why)
      : Error("rejected word at position " + std::to_string(index) + ": " + why), index_(index) {}

  /// 1-based position of the first violated condition (0 for a bad length).
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A vertex map does not carry the relation of the source into the target.
class NotAMorphism : public Error {
 public:
  NotAMorphism(std::string from_a, std::string from_b, std::string to_a, std::string to_b)
      : Error("not a graph morphism: (" + from_a + "," + from_b + ") maps to (" + to_a + "," +
              to_b + ") which is not related"),
        witness_{std::move(from_a), std::move(from_b)} {}

  const std::pair<std::string, std::string>& witness() const noexcept { return witness_; }

 private:
  std::pair<std::string, std::string> witness_;
};

/// The vertex map on the strip does not descend to the crown quotients.
class IllDefinedQuotient : public Error {
 public:
  using Error::Error;
};

/// A monoid algebra element is not supported on the requested hom-set.
class HomsetViolation : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace crown
