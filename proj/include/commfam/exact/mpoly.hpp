#pragma once

#include "commfam/exact/rat.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace commfam {

using Exponent = std::uint16_t;
using Monomial = std::vector<Exponent>;

struct Term {
  Monomial exps;
  Rat coef;
};

/// Graded-lexicographic comparison: total degree first, then the exponent of
/// variable 0, then variable 1, ... This is the one monomial order used
/// everywhere (leading terms, sign normalization, printing).
int grlex_compare(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial over Rat.
///
/// Terms are kept sorted in decreasing grlex order with no zero coefficient.
/// A polynomial with zero variables is a bare constant; it combines with a
/// polynomial in any number of variables (this is what lets Eigen build
/// Zero()/Identity() matrices over RatFunc).
class MPoly {
public:
  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
  MPoly(const Rat& c, std::size_t nvars = 0);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Rat(c)) {}             // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(Rat(c)) {}              // NOLINT(google-explicit-constructor)

  static MPoly variable(std::size_t var, std::size_t nvars);
  static MPoly monomial(Monomial exps, Rat coef = Rat(1));
  /// Takes ownership of unsorted terms; merges duplicates and drops zeros.
  static MPoly from_terms(std::size_t nvars, std::vector<Term> terms);
  /// Trusts the caller: terms strictly decreasing in grlex, no zero coefficient.
  static MPoly from_sorted_terms(std::size_t nvars, std::vector<Term> terms);

  /// Parses the text encoding written by str(): a sum of terms such as
  /// "3/2*x0^2*x1 - x2 + 7". Variable names default to x0, x1, ...
  static MPoly parse(std::string_view text, std::size_t nvars,
                     std::span<const std::string> names = {});

  std::size_t nvars() const { return nvars_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rat constant_term() const;
  const Term& leading_term() const { return terms_.front(); }
  Rat leading_coef() const { return terms_.empty() ? Rat(0) : terms_.front().coef; }

  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  MPoly derivative(std::size_t var) const;
  Rat evaluate(std::span<const Rat> point) const;
  /// Re-indexes variables: old variable i becomes new variable map[i].
  MPoly remap(std::size_t new_nvars, std::span<const std::size_t> map) const;
  /// Lifts a bare constant to nvars variables; identity otherwise.
  MPoly with_nvars(std::size_t nvars) const;

  /// Positive-leading content: p / content() has coprime integer coefficients
  /// and a positive leading coefficient.
  Rat content() const;
  MPoly primitive() const;
  /// Exponent-wise minimum over all terms.
  Monomial monomial_gcd() const;

  MPoly pow(unsigned e) const;

  std::string str(std::span<const std::string> names = {}) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rat& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
  friend MPoly operator-(MPoly a);

  friend bool operator==(const MPoly& a, const MPoly& b);

private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;

  friend MPoly combine(const MPoly& a, const MPoly& b, bool subtract);
};

/// Exact quotient a / b if b divides a, nullopt otherwise.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

/// Number of variables after combining a and b (bare constants adapt).
std::size_t common_nvars(const MPoly& a, const MPoly& b);

}  // namespace commfam
