#pragma once

#include "commfam/exact/mpoly.hpp"

#include <span>
#include <string>
#include <vector>

namespace commfam {

/// One factor of a factored denominator: base^exp.
struct DenFactor {
  MPoly base;  ///< primitive, positive leading coefficient, non-constant
  int exp = 0;
};

/// Rational function num / den over Rat.
///
/// The denominator is stored as a product of primitive polynomials with
/// positive leading coefficients (grlex), so den() always has a positive
/// leading coefficient and all rational content sits in the numerator.
/// After every operation the numerator is cancelled against each stored
/// factor by exact division; this keeps expression swell in check but is
/// not a canonical form. Equality is decided by cross-multiplication.
class RatFunc {
public:
  RatFunc() = default;
  RatFunc(MPoly num);                    // NOLINT(google-explicit-constructor)
  RatFunc(const Rat& c) : num_(c) {}     // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(Rat(c)) {}      // NOLINT(google-explicit-constructor)
  RatFunc(int c) : num_(Rat(c)) {}       // NOLINT(google-explicit-constructor)
  RatFunc(const MPoly& num, const MPoly& den);

  static RatFunc variable(std::size_t var, std::size_t nvars) { return MPoly::variable(var, nvars); }
  static RatFunc constant(const Rat& c, std::size_t nvars) { return MPoly(c, nvars); }

  /// num / Π base^exp over any nonzero polynomial bases; normalizes and cancels.
  static RatFunc from_factors(MPoly num, std::span<const DenFactor> den);

  /// Parses "num" or "(num)/(den)" using the MPoly text encoding.
  static RatFunc parse(std::string_view text, std::size_t nvars,
                       std::span<const std::string> names = {});

  std::size_t nvars() const { return num_.nvars() != 0 ? num_.nvars() : den_nvars(); }
  const MPoly& num() const { return num_; }
  /// Expanded denominator.
  MPoly den() const;
  std::span<const DenFactor> den_factors() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  /// Total number of stored terms (numerator plus denominator factors).
  std::size_t complexity() const;

  RatFunc inverse() const;
  RatFunc pow(unsigned e) const;
  RatFunc remap(std::size_t new_nvars, std::span<const std::size_t> map) const;
  RatFunc with_nvars(std::size_t nvars) const;
  /// Throws std::domain_error if the denominator vanishes at point.
  Rat evaluate(std::span<const Rat> point) const;

  std::string str(std::span<const std::string> names = {}) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }

  /// Exact equality (cross-multiplication), same as ratfunc_equal.
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  friend RatFunc partial_derivative(const RatFunc& f, std::size_t var);

private:
  MPoly num_{Rat(0)};
  std::vector<DenFactor> den_;

  std::size_t den_nvars() const { return den_.empty() ? 0 : den_.front().base.nvars(); }
  /// Multiplies the denominator by p (any nonzero polynomial), splitting off
  /// content and monomial factors and reusing existing factors that divide p.
  void absorb_into_den(MPoly p, int exp);
  void cancel();
  void lift_to(std::size_t nvars);
};

/// a == b as rational functions: a.num * b.den == b.num * a.den.
bool ratfunc_equal(const RatFunc& a, const RatFunc& b);

/// Quotient-rule derivative with respect to variable var.
RatFunc partial_derivative(const RatFunc& f, std::size_t var);

}  // namespace commfam
