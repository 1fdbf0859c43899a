#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>

namespace tropmech {

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I> && sizeof(I) <= sizeof(long)) {
      v_ = static_cast<long>(value);
    } else if constexpr (!std::is_signed_v<I> && sizeof(I) <= sizeof(unsigned long)) {
      v_ = static_cast<unsigned long>(value);
    } else {
      v_ = mpq_class(mpz_class(std::to_string(value), 10));
    }
  }

  Rational(long numerator, long denominator);

  /// Parses "7", "-3/2", "0.25", "-1.5e-3" exactly. Throws UsageError on
  /// anything else (including a zero denominator).
  static Rational parse(std::string_view text);

  /// Exact value of a binary double (no rounding).
  static Rational from_double(double value);

  /// Canonical text: "n" for integers, "n/d" otherwise.
  std::string str() const;

  /// Decimal with exactly `digits` fractional digits, rounded half away from
  /// zero. Deterministic across platforms.
  std::string to_fixed(int digits) const;

  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  Rational abs() const;

  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace tropmech
