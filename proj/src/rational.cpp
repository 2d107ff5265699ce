#include "ksub/rational.hpp"

#include <cctype>

namespace ksub {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& token, long line) {
  std::string s = token;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  const auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("bad rational '" + token + "'", line);
  const mpz_class numerator(num);
  const mpz_class denominator(den);
  if (denominator == 0)
    throw ParseError("zero denominator in '" + token + "'", line);
  Rational q(numerator, denominator);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace ksub
