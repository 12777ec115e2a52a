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

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <functional>
#include <string>
#include <string_view>

namespace Eigen {

// Lets Eigen's fixed-size expressions run over exact rationals.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace miter {

using Rational = mpq_class;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using RPoint = Vec3<Rational>;
using RPoint2 = Vec2<Rational>;
using Vec3d = Eigen::Vector3d;

/// Parses a decimal literal ("-1.25e-3", "7", ".5") into the rational it
/// denotes, without passing through binary floating point. Also accepts
/// "p/q" fractions. Throws std::invalid_argument on malformed text.
Rational parse_decimal(std::string_view text);

/// Exact value of a finite double.
inline Rational from_double(double v) { return Rational(v); }

/// Truncates toward zero, like mpq_get_d. Use nearest_double for output.
inline double to_double(const Rational& q) { return q.get_d(); }

template <typename Derived>
Vec3d to_double(const Eigen::MatrixBase<Derived>& p) {
  return Vec3d(p(0).get_d(), p(1).get_d(), p(2).get_d());
}

inline RPoint from_double(const Vec3d& p) {
  return RPoint(Rational(p.x()), Rational(p.y()), Rational(p.z()));
}

/// Outward-rounded double interval bounds of a rational.
/// Closest double, ties to even.
double nearest_double(const Rational& q);
double round_down(const Rational& q);
double round_up(const Rational& q);

/// "p/q" (or "p" for integers).
std::string to_fraction_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

/// Lexicographic strict weak order on exact points.
struct RPointLess {
  bool operator()(const RPoint& a, const RPoint& b) const {
    for (int i = 0; i < 3; ++i) {
      const int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

/// Hash consistent with exact equality (canonical mpq representation).
struct RPointHash {
  size_t operator()(const RPoint& p) const;
};

/// True when q is the square of a rational; writes the root.
bool exact_sqrt(const Rational& q, Rational& root);

}  // namespace miter
