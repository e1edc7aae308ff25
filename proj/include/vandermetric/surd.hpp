#pragma once

#include <cstdint>

#include <boost/rational.hpp>

namespace vandermetric {

/// Exact arithmetic in Q(sqrt 2, sqrt 3): a + b sqrt2 + c sqrt3 + d sqrt6.
struct Surd {
  using Rational = boost::rational<std::int64_t>;
  Rational a{0}, b{0}, c{0}, d{0};

  static Surd rational(Rational r) { return {r, 0, 0, 0}; }
  static Surd sqrt2(Rational k = 1) { return {0, k, 0, 0}; }
  static Surd sqrt3(Rational k = 1) { return {0, 0, k, 0}; }
  static Surd sqrt6(Rational k = 1) { return {0, 0, 0, k}; }

  bool is_rational() const {
    const Rational zero(0);
    return b == zero && c == zero && d == zero;
  }

  friend Surd operator+(const Surd& x, const Surd& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Surd operator-(const Surd& x, const Surd& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Surd operator*(const Surd& x, const Surd& y) {
    return {x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d,
            x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c),
            x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b),
            x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b};
  }
  friend bool operator==(const Surd&, const Surd&) = default;
};

}  // namespace vandermetric
