#ifndef FPT_RATIONAL_HPP
#define FPT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "fpt/errors.hpp"

namespace fpt {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision integer parts.
/// Invariant: always stored in lowest terms with positive denominator;
/// the backing type maintains the canonical form on every operation.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n) : v_(n) {}        // NOLINT(google-explicit-constructor)
  Rational(std::uint32_t n) : v_(n) {}       // NOLINT(google-explicit-constructor)
  Rational(std::uint64_t n) : v_(n) {}       // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : v_(n) {}       // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  }

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_integer() const { return den() == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// Largest integer not exceeding the value.
  BigInt floor() const {
    BigInt q = num() / den();
    if (num() < 0 && q * den() != num()) --q;
    return q;
  }

  /// Canonical text form "num/den" in lowest terms; integers print as "n/1".
  std::string str() const { return num().str() + "/" + den().str(); }

  /// Parses the canonical "num/den" form, or a bare integer.
  static Rational parse(const std::string& text);

private:
  explicit Rational(const boost::multiprecision::cpp_rational& v) : v_(v) {}

  boost::multiprecision::cpp_rational v_;
};

inline Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
}

}  // namespace fpt

#endif  // FPT_RATIONAL_HPP
