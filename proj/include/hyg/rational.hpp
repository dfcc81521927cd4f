#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyg {

namespace detail {

using i128 = __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow64(i128 v) {
  if (v > i128(std::numeric_limits<std::int64_t>::max()) ||
      v < i128(std::numeric_limits<std::int64_t>::min()))
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

//! Reduced fraction with 64-bit numerator and positive 64-bit denominator.
//! Intermediates run through 128 bits; overflow throws instead of wrapping,
//! so callers can fall back to floating point.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

  //! Parses "p", "-p", or "p/q" with q > 0 allowed on either sign.
  static Rational parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string text(s);
    char* end = nullptr;
    errno = 0;
    long long num = std::strtoll(text.c_str(), &end, 10);
    if (errno == ERANGE) throw std::overflow_error("rational literal overflow");
    if (end == text.c_str()) throw std::invalid_argument("bad rational literal: " + text);
    long long den = 1;
    if (*end == '/') {
      const char* dstart = end + 1;
      errno = 0;
      den = std::strtoll(dstart, &end, 10);
      if (errno == ERANGE) throw std::overflow_error("rational literal overflow");
      if (end == dstart) throw std::invalid_argument("bad rational literal: " + text);
    }
    if (*end != '\0') throw std::invalid_argument("bad rational literal: " + text);
    return Rational(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    detail::i128 n = detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_;
    detail::i128 d = detail::i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    detail::i128 n = detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_;
    detail::i128 d = detail::i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return detail::i128(a.num_) * b.den_ < detail::i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational from128(detail::i128 n, detail::i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow64(n);
    r.den_ = detail::narrow64(d);
    return r;
  }

  void reduce() { *this = from128(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hyg
