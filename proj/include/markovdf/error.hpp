#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace markovdf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two spaces that were required to coincide do not.
class DomainMismatch : public Error {
 public:
  DomainMismatch(const std::string& what, std::string left, std::string right)
      : Error(what + ": " + left + " vs " + right),
        left_(std::move(left)),
        right_(std::move(right)) {}

  const std::string& left() const noexcept { return left_; }
  const std::string& right() const noexcept { return right_; }

 private:
  std::string left_;
  std::string right_;
};

/// A matrix or vector failed stochasticity / finiteness validation.
class InvalidKernel : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LevelOutOfRange : public Error {
 public:
  LevelOutOfRange(const std::string& what, std::size_t level, std::size_t limit)
      : Error(what + ": level " + std::to_string(level) + " outside [.., " +
              std::to_string(limit) + "]"),
        level_(level) {}

  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class NotExchangeable : public Error {
 public:
  using Error::Error;
};

/// Hypothesis of a lemma check is violated.
class PreconditionViolation : public Error {
 public:
  enum class Kind { NotStationary, NotAlmostSurelyDeterministic, ShapeMismatch };

  PreconditionViolation(Kind kind, const std::string& what, double deviation)
      : Error(what), kind_(kind), deviation_(deviation) {}

  Kind kind() const noexcept { return kind_; }
  double deviation() const noexcept { return deviation_; }

 private:
  Kind kind_;
  double deviation_;
};

}  // namespace markovdf
