// Copyright 2026 The kuhncheat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "kuhncheat/errors.hpp"

namespace kuhncheat {

using Rational = mpq_class;

// Parses "3", "-1/18", "0.89", ".5" or "-2.25" into an exact rational.
// Decimals are converted through their literal expansion, so "0.1" is 1/10.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits_from = [&](std::size_t start) {
    std::size_t end = start;
    while (end < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    return end;
  };

  const std::size_t int_end = digits_from(pos);
  std::string int_part(text.substr(pos, int_end - pos));
  Rational value;

  if (int_end < text.size() && text[int_end] == '/') {
    const std::size_t den_end = digits_from(int_end + 1);
    if (int_part.empty() || den_end == int_end + 1 || den_end != text.size()) {
      return fail();
    }
    mpz_class num(int_part);
    mpz_class den(std::string(text.substr(int_end + 1)));
    if (den == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    value = Rational(num, den);
    value.canonicalize();
  } else if (int_end < text.size() && text[int_end] == '.') {
    const std::size_t frac_end = digits_from(int_end + 1);
    std::string frac_part(text.substr(int_end + 1, frac_end - int_end - 1));
    if (frac_end != text.size() || (int_part.empty() && frac_part.empty())) {
      return fail();
    }
    mpz_class num(int_part.empty() ? std::string("0") : int_part);
    mpz_class scale = 1;
    for (char c : frac_part) {
      num = num * 10 + (c - '0');
      scale *= 10;
    }
    value = Rational(num, scale);
    value.canonicalize();
  } else {
    if (int_part.empty() || int_end != text.size()) return fail();
    value = Rational(mpz_class(int_part));
  }
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& value) { return value.get_str(); }

namespace detail {

inline int cmp_half(const Rational& r) {
  const Rational half(1, 2);
  return r < half ? -1 : (r > half ? 1 : 0);
}

// Rounds a nonnegative rational to the nearest integer, ties to even.
inline mpz_class round_half_even(const Rational& x) {
  mpz_class quotient;
  mpz_fdiv_q(quotient.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  const Rational remainder = x - Rational(quotient);
  const int cmp = cmp_half(remainder);
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(quotient.get_mpz_t()))) {
    quotient += 1;
  }
  return quotient;
}

}  // namespace detail

// Decimal rendering with `significant` significant digits, rounding half to
// even on the exact value. Trailing fractional zeros are dropped.
inline std::string to_decimal(const Rational& value, int significant = 12) {
  if (sgn(value) == 0) return "0";
  Rational x = abs(value);

  int exponent = 0;
  while (x >= 10) {
    x /= 10;
    ++exponent;
  }
  while (x < 1) {
    x *= 10;
    --exponent;
  }
  // x in [1, 10): scale to `significant` integer digits.
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(significant - 1));
  mpz_class digits_value = detail::round_half_even(x * Rational(scale));
  mpz_class limit = scale * 10;
  if (digits_value >= limit) {
    digits_value /= 10;
    ++exponent;
  }
  std::string digits = digits_value.get_str();

  std::string out;
  if (exponent >= significant - 1) {
    out = digits + std::string(static_cast<std::size_t>(exponent - (significant - 1)), '0');
  } else if (exponent >= 0) {
    out = digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "." +
          digits.substr(static_cast<std::size_t>(exponent + 1));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sgn(value) < 0 ? "-" + out : out;
}

// Conversion used by the scalar-generic algorithms.
template <class Scalar>
Scalar scalar_cast(const Rational& value);

template <>
inline Rational scalar_cast<Rational>(const Rational& value) {
  return value;
}

template <>
inline double scalar_cast<double>(const Rational& value) {
  return value.get_d();
}

}  // namespace kuhncheat
