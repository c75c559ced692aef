#include "stv/rational.hpp"

#include <algorithm>
#include <cctype>

namespace stv {

namespace {

BigInt pow10(int k) {
  BigInt p = 1;
  for (int i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

Rational truncate5(const Rational& v) {
  if (v < 0) throw std::domain_error("truncate5: negative input");
  BigInt scaled = (numerator(v) * kFixed5Scale) / denominator(v);
  return Rational(scaled, kFixed5Scale);
}

bool is_fixed5(const Rational& v) {
  return (numerator(v) * kFixed5Scale) % denominator(v) == 0;
}

std::string to_decimal(const Rational& v, int decimals, Rounding mode) {
  if (decimals < 0) throw std::invalid_argument("to_decimal: negative decimals");
  const bool negative = v < 0;
  BigInt num = negative ? BigInt(-numerator(v)) : BigInt(numerator(v));
  const BigInt den = denominator(v);
  const BigInt scale = pow10(decimals);
  BigInt q = (num * scale) / den;
  if (mode == Rounding::HalfUp) {
    const BigInt rem = (num * scale) % den;
    if (rem * 2 >= den) ++q;
  }
  std::string digits = q.str();
  std::string out;
  if (negative && q != 0) out += '-';
  if (decimals == 0) {
    out += digits;
    return out;
  }
  if (static_cast<int>(digits.size()) <= decimals) {
    digits.insert(0, decimals + 1 - digits.size(), '0');
  }
  out.append(digits, 0, digits.size() - decimals);
  out += '.';
  out.append(digits, digits.size() - decimals, decimals);
  return out;
}

std::string to_decimal_trimmed(const Rational& v, int decimals) {
  std::string s = to_decimal(v, decimals, Rounding::HalfUp);
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string encode_value(const Rational& v) {
  BigInt den = denominator(v);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  const int digits = std::max(twos, fives);
  if (den == 1 && digits <= kValueDecimalDigits) {
    return to_decimal_trimmed(v, digits);
  }
  return numerator(v).str() + "/" + denominator(v).str();
}

Rational decode_value(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("decode_value: empty string");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const auto check_int = [&s](std::string_view part) {
      if (!part.empty() && (part.front() == '-' || part.front() == '+')) part.remove_prefix(1);
      if (part.empty()) throw std::invalid_argument("decode_value: no digits in '" + s + "'");
      for (char c : part) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("decode_value: bad character in '" + s + "'");
      }
    };
    const std::string num_part = s.substr(0, slash);
    const std::string den_part = s.substr(slash + 1);
    check_int(num_part);
    check_int(den_part);
    BigInt den(den_part);
    if (den == 0) throw std::invalid_argument("decode_value: zero denominator in '" + s + "'");
    return Rational(BigInt(num_part), den);
  }
  std::string_view body = s;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  std::string int_part(dot == std::string_view::npos ? body : body.substr(0, dot));
  std::string frac_part(dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1));
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("decode_value: no digits in '" + s + "'");
  for (const std::string* part : {&int_part, &frac_part}) {
    for (char c : *part) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("decode_value: bad character in '" + s + "'");
    }
  }
  BigInt num = int_part.empty() ? BigInt(0) : BigInt(int_part);
  BigInt den = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(num, den);
  if (negative) r = -r;
  return r;
}

}  // namespace stv
