#include "qprefine/rational.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace qprefine {

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational::Rational(mpq_class&& value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Rational: non-finite double");
  Rational r;
  mpq_set_d(r.value_.get_mpq_t(), value);  // exact for finite input
  return r;
}

Rational Rational::from_fraction_string(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw std::invalid_argument("Rational: empty integer in '" + std::string(text) + "'");
    std::string s(part);
    if (s.front() == '+') s.erase(0, 1);
    const std::size_t digits_from = (!s.empty() && s.front() == '-') ? 1 : 0;
    if (s.size() == digits_from) throw std::invalid_argument("Rational: bad integer '" + std::string(text) + "'");
    for (std::size_t i = digits_from; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("Rational: bad integer '" + std::string(text) + "'");
      }
    }
    return mpz_class(s, 10);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text), mpz_class(1));
  const mpz_class den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("Rational: non-positive denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p, mpz_class(1));
}

Rational Rational::pow2(long exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p, mpz_class(1));
}

Rational Rational::abs() const {
  Rational r;
  mpq_abs(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) + mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
  return *this;
}

namespace {

// floor(num * 2^-shift / den) and the remainder, for shift of either sign.
void scaled_quotient(const mpz_class& num, const mpz_class& den, long shift, mpz_class& q,
                     mpz_class& rem, mpz_class& divisor) {
  mpz_class n = num;
  divisor = den;
  if (shift >= 0) {
    mpz_mul_2exp(divisor.get_mpz_t(), divisor.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), divisor.get_mpz_t());
}

}  // namespace

DoubleRounding round_to_nearest_double(const Rational& r) {
  if (r.is_zero()) return {0.0, false};
  constexpr long kMantissaBits = 53;
  constexpr long kMinExponent = -1074;  // exponent of the smallest subnormal
  constexpr long kMaxExponent = 971;    // max double = (2^53 - 1) * 2^971

  const mpz_class num = abs(r.value().get_num());
  const mpz_class& den = r.value().get_den();
  const mpz_class lo = mpz_class(1) << (kMantissaBits - 1);
  const mpz_class hi = mpz_class(1) << kMantissaBits;

  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - kMantissaBits;
  e = std::max(e, kMinExponent);
  mpz_class m, rem, divisor;
  scaled_quotient(num, den, e, m, rem, divisor);
  while (m >= hi) {
    ++e;
    scaled_quotient(num, den, e, m, rem, divisor);
  }
  while (m < lo && e > kMinExponent) {
    --e;
    scaled_quotient(num, den, e, m, rem, divisor);
  }

  const int half = cmp(mpz_class(rem * 2), divisor);
  if (half > 0 || (half == 0 && mpz_odd_p(m.get_mpz_t()))) ++m;
  if (m == hi) {
    m = lo;
    ++e;
  }

  DoubleRounding out;
  if (e > kMaxExponent) {
    out.value = DBL_MAX;
    out.clamped = true;
  } else {
    out.value = std::ldexp(m.get_d(), static_cast<int>(e));
  }
  if (r.sign() < 0) out.value = -out.value;
  return out;
}

namespace {

// |r| = digits * 10^exponent with digits having exactly `significant` digits,
// rounded half-even. Returns false for zero.
void decimal_digits(const Rational& r, int significant, mpz_class& digits, long& exponent) {
  const Rational a = r.abs();
  // Estimate floor(log10 a) and correct exactly.
  long k = static_cast<long>(std::floor(log(a) / std::log(10.0)));
  while (Rational::pow10(k) > a) --k;
  while (Rational::pow10(k + 1) <= a) ++k;
  exponent = k - significant + 1;
  const Rational scaled = a / Rational::pow10(exponent);
  mpz_class q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.value().get_num_mpz_t(),
              scaled.value().get_den_mpz_t());
  const int half = cmp(mpz_class(rem * 2), scaled.value().get_den());
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(significant));
  if (q == limit) {
    q /= 10;
    ++exponent;
  }
  digits = q;
}

}  // namespace

std::string to_decimal_string(const Rational& r, int significant) {
  if (r.is_zero()) return "0";
  if (significant < 1) significant = 1;
  mpz_class digits;
  long exponent = 0;
  decimal_digits(r, significant, digits, exponent);
  std::string d = digits.get_str();
  // strip trailing zeros into the exponent
  while (d.size() > 1 && d.back() == '0') {
    d.pop_back();
    ++exponent;
  }
  const long lead = exponent + static_cast<long>(d.size()) - 1;  // decimal exponent of first digit
  std::string out = r.sign() < 0 ? "-" : "";
  if (lead >= -4 && lead < significant) {
    if (exponent >= 0) {
      out += d + std::string(static_cast<std::size_t>(exponent), '0');
    } else {
      const long frac = -exponent;
      if (static_cast<long>(d.size()) > frac) {
        out += d.substr(0, d.size() - frac) + "." + d.substr(d.size() - frac);
      } else {
        out += "0." + std::string(static_cast<std::size_t>(frac - static_cast<long>(d.size())), '0') + d;
      }
    }
    return out;
  }
  out += d.substr(0, 1);
  if (d.size() > 1) out += "." + d.substr(1);
  out += "e";
  out += lead < 0 ? "-" : "+";
  out += std::to_string(lead < 0 ? -lead : lead);
  return out;
}

std::string to_exact_decimal_string(const Rational& r) {
  mpz_class den = r.denominator();
  long twos = 0;
  long fives = 0;
  while (mpz_even_p(den.get_mpz_t())) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return {};
  const long places = std::max(twos, fives);
  const Rational scaled = r.abs() * Rational::pow10(places);
  std::string digits = scaled.numerator().get_str();
  std::string out = r.sign() < 0 ? "-" : "";
  if (places == 0) return out + digits;
  // Use scientific form for long expansions, plain decimal otherwise.
  long exponent = -places;
  while (digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++exponent;
  }
  if (places > 20) return out + digits + "e" + std::to_string(exponent);
  if (static_cast<long>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places - static_cast<long>(digits.size()) + 1), '0');
  }
  const std::size_t point = digits.size() - static_cast<std::size_t>(places);
  return out + digits.substr(0, point) + "." + digits.substr(point);
}

double log(const Rational& r) {
  if (r.sign() <= 0) throw std::domain_error("log of non-positive rational");
  long num_exp = 0;
  long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, r.value().get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, r.value().get_den_mpz_t());
  return std::log(num_mant / den_mant) + static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

}  // namespace qprefine
