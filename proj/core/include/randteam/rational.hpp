#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace randteam {

/// Thrown when an exact-arithmetic result leaves the int64 range; callers fall
/// back to the double path.
struct RationalOverflow : std::overflow_error {
  RationalOverflow() : std::overflow_error("rational arithmetic overflow") {}
};

/// Exact rational on int64 with overflow checking. Normalized: den > 0,
/// gcd(num, den) == 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Exact conversion of a finite double (doubles are dyadic rationals).
  /// Throws RationalOverflow when the dyadic form does not fit in int64.
  static Rational from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, 0.5 <= |m| < 1
    // scale mantissa to an integer (53 bits)
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    while (mant % 2 == 0 && exp < 0) { mant /= 2; ++exp; }
    if (exp >= 0) {
      if (exp > 9) throw RationalOverflow();  // |v| >= 2^53 * 2^9: reject early
      __int128 n = static_cast<__int128>(mant) << exp;
      return make_checked(n, 1);
    }
    if (exp < -62) throw RationalOverflow();
    return make_checked(mant, static_cast<__int128>(1) << (-exp));
  }

  /// Parses "n", "n/d", or a plain decimal like "0.25" (exact).
  static Rational from_string(const std::string& text);

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    long long g = std::gcd(a.den_, b.den_);
    __int128 lhs = static_cast<__int128>(a.num_) * (b.den_ / g);
    __int128 rhs = static_cast<__int128>(b.num_) * (a.den_ / g);
    __int128 den = static_cast<__int128>(a.den_) * (b.den_ / g);
    return make_checked(lhs + rhs, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    long long g1 = std::gcd(std::llabs(a.num_), b.den_);
    long long g2 = std::gcd(std::llabs(b.num_), a.den_);
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return make_checked(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
    Rational inv;
    inv.num_ = b.num_ > 0 ? b.den_ : -b.den_;
    inv.den_ = std::llabs(b.num_);
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(std::llabs(num_), den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  static Rational make_checked(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 kMax = std::numeric_limits<long long>::max();
    if (n > kMax || n < -kMax || d > kMax) throw RationalOverflow();
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  long long num_;
  long long den_;
};

inline Rational Rational::from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(text.substr(0, slash));
      long long d = std::stoll(text.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    int frac_len = static_cast<int>(text.size() - dot - 1);
    if (frac_len > 18) throw RationalOverflow();
    long long den = 1;
    for (int i = 0; i < frac_len; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  } catch (const std::out_of_range&) {
    throw RationalOverflow();
  }
}

}  // namespace randteam
