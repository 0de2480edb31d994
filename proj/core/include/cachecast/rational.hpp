#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cachecast {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Always normalized: denominator > 0, gcd(|num|, den) == 1. Intermediate
/// products are taken in 128-bit arithmetic; a result that does not fit in
/// 64 bits after reduction throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  /// Accepts "7", "-3/4" and decimal strings like "1.5".
  static Rational parse(std::string_view text);

  Rational operator-() const { return Rational(-num_, den_, already_normalized{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 num = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 den = i128(a.den_) * b.den_;
    return from_i128(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "26/27" when fractional, "2" when integral.
  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct already_normalized {};
  constexpr Rational(long long num, long long den, already_normalized) : num_(num), den_(den) {}

  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static Rational from_i128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = std::numeric_limits<long long>::min();
    constexpr __int128 hi = std::numeric_limits<long long>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("Rational: value out of range");
    return Rational(static_cast<long long>(num), static_cast<long long>(den), already_normalized{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_;
  long long den_;
};

inline Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string num_part(text.substr(0, slash));
    std::string den_part(text.substr(slash + 1));
    if (num_part.empty() || den_part.empty())
      throw std::invalid_argument("Rational::parse: malformed fraction");
    return Rational(std::stoll(num_part), std::stoll(den_part));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return Rational(std::stoll(std::string(text)));
  }
  std::string whole(text.substr(0, dot));
  std::string frac(text.substr(dot + 1));
  bool negative = !whole.empty() && whole[0] == '-';
  long long whole_v = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
  long long frac_v = 0;
  long long scale = 1;
  for (char c : frac) {
    if (c < '0' || c > '9') throw std::invalid_argument("Rational::parse: bad decimal digit");
    if (scale > std::numeric_limits<long long>::max() / 10)
      throw std::overflow_error("Rational::parse: too many decimal digits");
    frac_v = frac_v * 10 + (c - '0');
    scale *= 10;
  }
  Rational magnitude =
      Rational(whole_v < 0 ? -whole_v : whole_v) + Rational(frac_v, scale);
  return negative ? -magnitude : magnitude;
}

}  // namespace cachecast
