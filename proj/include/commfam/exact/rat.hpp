#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace commfam {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Thin value type over GMP's mpq_class. Arithmetic returns Rat, never a
/// gmpxx expression template, so it composes with Eigen and auto.
class Rat {
public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(const mpz_class& num, const mpz_class& den = 1);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "a", "-a" or "a/b". Throws std::invalid_argument.
  static Rat parse(std::string_view text);

  const mpq_class& gmp() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Bits in numerator plus denominator; used as a pivot cost.
  std::size_t bit_size() const;

  Rat inverse() const;
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat pow(unsigned e) const;

  std::string str() const { return v_.get_str(); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  mpq_class v_{0};
};

/// Binomial coefficient C(n, k) for integer n (possibly negative) and k >= 0.
Rat binomial(long n, long k);

}  // namespace commfam
