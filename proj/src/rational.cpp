// Copyright 2026 The Miter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "miter/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace miter {

Rational parse_decimal(std::string_view text) {
  auto fail = [&]() {
    throw std::invalid_argument("not a decimal number: '" + std::string(text) +
                                "'");
  };
  if (text.empty()) fail();
  if (text.find('/') != std::string_view::npos) {
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) fail();
    if (q.get_den() == 0) fail();
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) fail();
    long e = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      if (e > 100000) fail();
    }
    exponent += exp_negative ? -e : e;
  }
  if (i != text.size()) fail();

  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale)
                             : Rational(mantissa, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

double nearest_double(const Rational& q) {
  const double d = q.get_d();
  const Rational exact(d);
  if (exact == q) return d;
  const double away =
      std::nextafter(d, q > exact ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity());
  const Rational gap_near = abs(q - exact), gap_far = abs(Rational(away) - q);
  if (gap_near < gap_far) return d;
  if (gap_far < gap_near) return away;
  // Tie: even mantissa.
  int e = 0;
  const double m = std::frexp(d, &e);
  return std::fmod(std::ldexp(m, 53), 2.0) == 0 ? d : away;
}

double round_down(const Rational& q) {
  const double d = q.get_d();
  if (Rational(d) <= q) return d;
  return std::nextafter(d, -std::numeric_limits<double>::infinity());
}

double round_up(const Rational& q) {
  const double d = q.get_d();
  if (Rational(d) >= q) return d;
  return std::nextafter(d, std::numeric_limits<double>::infinity());
}

std::string to_fraction_string(const Rational& q) { return q.get_str(10); }

size_t RPointHash::operator()(const RPoint& p) const {
  size_t h = 0;
  for (int i = 0; i < 3; ++i) {
    const size_t hn = mpz_get_ui(p[i].get_num_mpz_t()) ^
                      (static_cast<size_t>(mpz_sgn(p[i].get_num_mpz_t())) << 1);
    const size_t hd = mpz_get_ui(p[i].get_den_mpz_t());
    h ^= std::hash<size_t>()(hn * 1000003u + hd) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

}  // namespace miter
