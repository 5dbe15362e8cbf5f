#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qprefine {

/// Exact arbitrary-precision fraction.
///
/// Always stored in canonical form: the denominator is positive and shares
/// no factor with the numerator. Every finite double converts exactly.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral T>
  Rational(T value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT(google-explicit-constructor)

  /// numerator / denominator; throws std::domain_error on a zero denominator.
  Rational(const mpz_class& numerator, const mpz_class& denominator);

  explicit Rational(const mpq_class& value);
  explicit Rational(mpq_class&& value);

  /// Exact conversion; throws std::domain_error for NaN or infinity.
  static Rational from_double(double value);

  /// Parses "p", "-p" or "p/q" (integers only). Throws std::invalid_argument.
  static Rational from_fraction_string(std::string_view text);

  /// 10^exponent for any integer exponent.
  static Rational pow10(long exponent);

  /// 2^exponent for any integer exponent.
  static Rational pow2(long exponent);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  /// Throws std::domain_error on zero.
  Rational inverse() const;

  /// Bits in numerator plus bits in denominator; a proxy for arithmetic cost.
  std::size_t bit_size() const;

  /// "p/q", denominator always present ("0/1", "-3/1").
  std::string to_fraction_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_fraction_string();
  }

 private:
  mpq_class value_;
};

using RatVector = std::vector<Rational>;

inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// Nearest-double rounding (ties to even), including the subnormal range.
struct DoubleRounding {
  double value = 0.0;
  /// Set when the magnitude exceeded the double range and was clamped to
  /// +-max double.
  bool clamped = false;
};

DoubleRounding round_to_nearest_double(const Rational& r);

inline double to_double(const Rational& r) { return round_to_nearest_double(r).value; }

/// Decimal rendering with at most `significant` digits, "%g"-like: plain
/// notation for moderate exponents, otherwise "1e-101" / "2.5e+12".
std::string to_decimal_string(const Rational& r, int significant = 6);

/// Exact finite decimal text if the denominator is of the form 2^a 5^b,
/// otherwise std::nullopt-equivalent empty string.
std::string to_exact_decimal_string(const Rational& r);

/// Natural logarithm, accurate to double precision for any magnitude.
/// Throws std::domain_error for non-positive input.
double log(const Rational& r);

}  // namespace qprefine

template <>
struct std::hash<qprefine::Rational> {
  std::size_t operator()(const qprefine::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_fraction_string());
  }
};
