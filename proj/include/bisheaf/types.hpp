#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bisheaf {

enum class Side { Left, Right };

/// Shell label of a (bi)semisheaf: space-time, middle ground, mass.
enum class Level { ST, MG, M };

/// Time/space nature, unshifted (T, S) or shifted by the differential operator (Tp, Sp).
enum class Nature { T, S, Tp, Sp };

enum class ErrorKind {
  InvalidConfig,      // malformed or out-of-range user input
  ContractViolation,  // an operation's precondition does not hold
  DiagnosticFailure,  // an invariant check failed on computed output
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void invalid_config(const std::string& msg) {
  throw Error(ErrorKind::InvalidConfig, msg);
}
[[noreturn]] inline void contract_violation(const std::string& msg) {
  throw Error(ErrorKind::ContractViolation, msg);
}

/// (μ, m) label of a conjugacy class representative; ordered lexicographically.
struct ClassIndex {
  int mu = 1;
  int m = 1;

  friend auto operator<=>(const ClassIndex&, const ClassIndex&) = default;
};

std::string to_string(Side s);
std::string to_string(Level l);
std::string to_string(Nature n);
std::string to_string(ClassIndex i);

Side opposite(Side s);
Level parse_level(std::string_view s);
Nature parse_nature(std::string_view s);

}  // namespace bisheaf
