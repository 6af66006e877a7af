#pragma once

#include "commfam/check.hpp"
#include "commfam/exact/ratfunc.hpp"
#include "commfam/poisson/poisson.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace commfam {

/// symbol() of the zero operator.
class ZeroOperator : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The function determinant Φ vanishes identically.
class ZeroPhi : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Derivative multi-index (α_1, ..., α_N).
using MultiIndex = Monomial;

/// Σ_α f_α(z_1..z_N) ∂_1^{α_1} ... ∂_N^{α_N}, coefficients on the left.
class RatDiffOp {
public:
  explicit RatDiffOp(std::size_t N = 1);

  static RatDiffOp multiplication(const RatFunc& f, std::size_t N);
  /// ∂_var (0-based variable).
  static RatDiffOp partial(std::size_t var, std::size_t N, int order = 1);

  std::size_t nvars() const { return N_; }
  const std::map<MultiIndex, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total derivative order; -1 for the zero operator.
  int order() const;
  RatFunc coefficient(const MultiIndex& alpha) const;

  /// Adds c ∂^alpha.
  void add_term(const MultiIndex& alpha, const RatFunc& c);

  /// The operator applied to a function.
  RatFunc apply(const RatFunc& f) const;
  /// One-variable operator acting in variable `var` of an N-variable space.
  RatDiffOp placed(std::size_t var, std::size_t N) const;

  /// One line per term: "α1 … αN | num | den" with polynomials in z1..zN.
  std::string str() const;
  static RatDiffOp parse(std::string_view text, std::size_t N);

  RatDiffOp& operator+=(const RatDiffOp& o);
  RatDiffOp& operator-=(const RatDiffOp& o);
  friend RatDiffOp operator+(RatDiffOp a, const RatDiffOp& b) { return a += b; }
  friend RatDiffOp operator-(RatDiffOp a, const RatDiffOp& b) { return a -= b; }
  /// Left multiplication by a function.
  friend RatDiffOp operator*(const RatFunc& f, const RatDiffOp& a);
  friend bool operator==(const RatDiffOp& a, const RatDiffOp& b);

private:
  std::size_t N_;
  std::map<MultiIndex, RatFunc> terms_;
};

/// Names "z1", ..., "zN".
std::vector<std::string> z_names(std::size_t N);

RatDiffOp do_compose(const RatDiffOp& A, const RatDiffOp& B);
RatDiffOp do_commutator(const RatDiffOp& A, const RatDiffOp& B);

/// Principal symbol: the top-order part with ∂_j replaced by ξ_j.
struct OpSymbol {
  std::size_t N = 1;
  int degree = 0;
  std::map<MultiIndex, RatFunc> coef;

  /// As a function of (z1, ξ1, ..., zN, ξN) for the canonical bracket.
  PoissonElem to_poisson() const;
};

/// Throws ZeroOperator.
OpSymbol symbol(const RatDiffOp& A);

/// Parses a one-variable operator such as "d2", "z*d + 3", "(z^2+1)*d^2 - d".
/// Terms are separated by + or -; a term is a product of an optional
/// rational-function coefficient in z and an optional derivative factor
/// d, dk or d^k written last.
RatDiffOp parse_operator_spec(std::string_view text);

struct OpFamilySpec {
  std::size_t N = 1;
  std::vector<Rat> points;  ///< distinct P_1..P_N
  RatDiffOp T{1};           ///< one-variable seed operator

  void validate() const;
};

/// H_k = Σ_i [Π_{k'}(z_i − P_{k'}) Π_{i'≠i}(z_{i'} − P_k) / Π_{i'≠i}(z_i − z_{i'})] T_{z_i}.
std::vector<RatDiffOp> rational_hamiltonians(const OpFamilySpec& spec);

/// H_k = Σ_j (−1)^{1+j} (M_{k,j} / Φ) T_{z_j}, where Φ = det[f_a(z_j)] and
/// M_{k,j} is the minor omitting f_k and leg j (the row f_0 = 1 expanded).
/// Throws ZeroPhi.
std::vector<RatDiffOp> hamiltonians_from_basis(std::span<const RatFunc> fs, const RatDiffOp& T);

/// c_k = (−1)^{N+k} / Π_{k'≠k}(P_k − P_{k'}); the basis c_k/(z − P_k)
/// makes hamiltonians_from_basis reproduce rational_hamiltonians exactly.
std::vector<Rat> pole_basis_scales(std::span<const Rat> points);
std::vector<RatFunc> pole_basis(std::span<const Rat> points, bool normalized);

/// Principal symbol of a one-variable operator as t(z) ξ^d, in (z, ξ).
RatFunc principal_symbol_zxi(const RatDiffOp& T);

/// symbol(H_k) against classical_hamiltonians of f_0 = 1,
/// f_k = c_k / ((z − P_k) σ(T)), coefficient by coefficient, plus
/// {symbol(H_k), symbol(H_l)} = 0.
CheckReport check_symbol_matches_classical(std::span<const RatDiffOp> hs, const OpFamilySpec& spec);

CheckReport check_operators_commute(std::span<const RatDiffOp> hs);

}  // namespace commfam
