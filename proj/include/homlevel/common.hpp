#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homlevel {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)
                       : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A literal or constructed object violates a structural invariant.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Operation requested in a ring mode that does not support it.
class WrongMode : public Error {
 public:
  using Error::Error;
};

class InfiniteDimensional : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OutOfScope : public Error {
 public:
  using Error::Error;
};

class DimensionUnknown : public Error {
 public:
  using Error::Error;
};

class HypothesisNotMet : public Error {
 public:
  using Error::Error;
};

/// Knobs shared by the long-running computations.
struct Config {
  int cutoff = 8;                         // resolution length cutoff
  std::uint64_t grobner_pair_budget = 200000;
  std::uint64_t exhaustive_limit = 1u << 16;  // max number of candidates enumerated
  int sample_retries = 32;                // random retries before Inconclusive
  int reflexivity_window = 6;
  std::uint64_t seed = 0x5eed;
};

}  // namespace homlevel
