#ifndef COXFOLD_ZSQRT2_HPP
#define COXFOLD_ZSQRT2_HPP

#include <compare>
#include <cstdint>
#include <ostream>

namespace coxfold {

/// An element a + b*sqrt(2) of the ring Z[sqrt 2].
///
/// Simply-laced systems only ever produce b == 0, so the same type serves
/// both exact rings used by the reflection representation.
struct ZSqrt2 {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr ZSqrt2() = default;
  constexpr ZSqrt2(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

  static constexpr ZSqrt2 sqrt2() { return {0, 1}; }

  constexpr bool is_zero() const { return a == 0 && b == 0; }

  /// Sign of the real number a + b*sqrt(2): -1, 0 or +1.
  constexpr int sign() const {
    auto sgn = [](std::int64_t x) { return (x > 0) - (x < 0); };
    if (b == 0) return sgn(a);
    if (a == 0) return sgn(b);
    if ((a > 0) == (b > 0)) return sgn(a);
    // Opposite signs: compare a^2 with 2 b^2.
    const auto a2 = static_cast<__int128>(a) * a;
    const auto b2 = 2 * static_cast<__int128>(b) * b;
    return a2 > b2 ? sgn(a) : sgn(b);
  }

  friend constexpr ZSqrt2 operator+(ZSqrt2 x, ZSqrt2 y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr ZSqrt2 operator-(ZSqrt2 x, ZSqrt2 y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr ZSqrt2 operator-(ZSqrt2 x) { return {-x.a, -x.b}; }
  friend constexpr ZSqrt2 operator*(ZSqrt2 x, ZSqrt2 y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  constexpr ZSqrt2& operator+=(ZSqrt2 y) { return *this = *this + y; }

  friend constexpr bool operator==(ZSqrt2, ZSqrt2) = default;
  friend constexpr auto operator<=>(ZSqrt2, ZSqrt2) = default;

  friend std::ostream& operator<<(std::ostream& os, ZSqrt2 x) {
    if (x.b == 0) return os << x.a;
    return os << x.a << (x.b < 0 ? "-" : "+") << (x.b < 0 ? -x.b : x.b) << "r2";
  }
};

}  // namespace coxfold

#endif  // COXFOLD_ZSQRT2_HPP
