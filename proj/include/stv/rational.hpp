#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stv {

// All vote weights are exact rationals. No binary floating point is used
// anywhere in tabulation; fixed5 mode is expressed as rationals that are
// multiples of 1/100000.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline const BigInt kFixed5Scale = 100000;

// Largest multiple of 10^-5 that is <= v. Throws on negative input.
Rational truncate5(const Rational& v);

// True iff v is an exact multiple of 10^-5.
bool is_fixed5(const Rational& v);

enum class Rounding {
  HalfUp,
  Truncate,
};

// Render v with exactly `decimals` fractional digits.
std::string to_decimal(const Rational& v, int decimals, Rounding mode = Rounding::HalfUp);

// Render v rounded half-up to `decimals` digits, then trim trailing zeros
// and a trailing point. Integral values render with no point at all, which
// is how official votes-by-round tables print whole numbers.
std::string to_decimal_trimmed(const Rational& v, int decimals);

// Lossless text codec for vote values. Values whose reduced denominator is
// of the form 2^a * 5^b with at most kValueDecimalDigits fractional digits
// are rendered as plain decimals; everything else as "num/den".
inline constexpr int kValueDecimalDigits = 18;

std::string encode_value(const Rational& v);
Rational decode_value(std::string_view text);

}  // namespace stv
