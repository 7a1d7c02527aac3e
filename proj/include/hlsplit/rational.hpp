#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hls {

/// Library-wide error type for contract violations (bad input, dimension
/// mismatches, violated preconditions).
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational number. Always stored reduced with positive denominator;
/// zero is 0/1. Serializes as "a" or "a/b".
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, 3 means 3/1
  Rat(long num, long den) : v_(num, den) {
    if (den == 0) throw error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "a" or "a/b" with optional leading '-', no whitespace.
  static Rat parse(const std::string& s) {
    if (s.empty()) throw error("Rat: empty string");
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    if (i == s.size() || !is_digit(s[i])) throw error("Rat: bad numerator in '" + s + "'");
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i != s.size()) {
      if (s[i] != '/') throw error("Rat: bad character in '" + s + "'");
      ++i;
      if (i == s.size() || !is_digit(s[i])) throw error("Rat: bad denominator in '" + s + "'");
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i != s.size()) throw error("Rat: trailing characters in '" + s + "'");
    }
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw error("Rat: unparsable '" + s + "'");
    if (v.get_den() == 0) throw error("Rat: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rat(std::move(v));
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  const mpq_class& value() const { return v_; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inv() const {
    if (is_zero()) throw error("Rat: inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  mpq_class v_;
};

}  // namespace hls
