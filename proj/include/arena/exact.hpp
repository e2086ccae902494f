#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "arena/error.hpp"

namespace arena {

/// Arbitrary-precision nonnegative integer used for every cost and potential.
using ExactCost = boost::multiprecision::cpp_int;

/// Always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline ExactCost pow2(std::uint64_t exponent) {
  ExactCost r = 1;
  r <<= static_cast<unsigned>(exponent);
  return r;
}

inline ExactCost ipow(std::uint64_t base, unsigned exponent) {
  return boost::multiprecision::pow(ExactCost(base), exponent);
}

inline std::string to_string(const ExactCost& v) { return v.str(); }

/// Renders as "p/q" even when q = 1 so reports have one shape.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(Errc::validation, "zero denominator");
  return Rational(ExactCost(num), ExactCost(den));
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty()) throw Error(Errc::parse, "bad rational '" + std::string(text) + "'");
    for (char c : s)
      if (c < '0' || c > '9')
        throw Error(Errc::parse, "bad rational '" + std::string(text) + "'");
    return ExactCost(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(digits(text));
  ExactCost num = digits(text.substr(0, slash));
  ExactCost den = digits(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Saturating conversion for step budgets derived from potentials.
inline std::uint64_t saturate_u64(const ExactCost& v) {
  if (v <= 0) return 0;
  if (v > ExactCost(UINT64_MAX)) return UINT64_MAX;
  return v.convert_to<std::uint64_t>();
}

}  // namespace arena
