#ifndef TORIC_SYMMETRY_BIGINT_HPP
#define TORIC_SYMMETRY_BIGINT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n)
{
  BigInt out = 1;
  for (unsigned k = 2; k <= n; ++k)
    out *= k;
  return out;
}

inline BigInt pow(BigInt const &base, unsigned exponent)
{
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt gcd(BigInt const &a, BigInt const &b)
{
  return boost::multiprecision::gcd(a, b);
}

inline BigInt abs(BigInt const &a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt numerator(Rational const &q)
{
  return boost::multiprecision::numerator(q);
}

inline BigInt denominator(Rational const &q)
{
  return boost::multiprecision::denominator(q);
}

inline bool is_integer(Rational const &q) { return denominator(q) == 1; }

/// "n" for integers, "p/q" otherwise.
inline std::string to_string(Rational const &q)
{
  if (is_integer(q))
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline BigInt parse_bigint(std::string_view text)
{
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+'))
    pos = 1;
  if (pos == text.size())
    throw std::invalid_argument("empty integer literal");
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("malformed integer literal '" +
                                  std::string(text) + "'");
  }
  return BigInt(std::string(text));
}

/// Parses "n" or "p/q". A fraction must already be in lowest terms with
/// q > 0, matching the table-file contract.
inline Rational parse_rational(std::string_view text)
{
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_bigint(text));

  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den <= 0)
    throw std::invalid_argument("denominator must be positive in '" +
                                std::string(text) + "'");
  if (gcd(abs(num), den) != 1)
    throw std::invalid_argument("fraction not in lowest terms: '" +
                                std::string(text) + "'");
  return Rational(num, den);
}

} // namespace toric

#endif
