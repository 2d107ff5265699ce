#ifndef KSUB_RATIONAL_HPP
#define KSUB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksub {

// All arithmetic in the library is exact. Rational is an arbitrary-precision
// fraction kept in canonical form (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

class KsubError : public std::runtime_error {
 public:
  explicit KsubError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive scan would touch more items than the configured budget allows.
class BudgetExceeded : public KsubError {
 public:
  explicit BudgetExceeded(const std::string& what) : KsubError(what) {}
};

// Malformed instance file; carries a 1-based line number when known.
class ParseError : public KsubError {
 public:
  ParseError(const std::string& what, long line = 0)
      : KsubError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Default ceiling on the number of items any single exhaustive loop
// (labelings, labeling pairs, integer candidates) may visit.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// mpq_class's two-argument constructor does not reduce the fraction, and GMP
// comparisons silently misbehave on non-canonical values. Every fraction
// built from parts must pass through here (or through parse_rational).
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p", or "p/q" with q > 0. Throws ParseError otherwise.
Rational parse_rational(const std::string& token, long line = 0);

std::string to_string(const Rational& q);

}  // namespace ksub

#endif  // KSUB_RATIONAL_HPP
