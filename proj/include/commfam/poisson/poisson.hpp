#pragma once

#include "commfam/check.hpp"
#include "commfam/exact/matrix.hpp"
#include "commfam/exact/ratfunc.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace commfam {

/// The functions f_0..f_n are linearly dependent over Q.
class DependentFamily : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Δ_0 vanishes identically (or, for point data, the points do not span).
class ZeroDelta0 : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The reference differential α is zero.
class ZeroAlpha : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Variable index of x_j / ξ_j (j 1-based) in the ordering (x1, ξ1, ..., xn, ξn).
inline std::size_t x_var(int j) { return 2 * static_cast<std::size_t>(j - 1); }
inline std::size_t xi_var(int j) { return 2 * static_cast<std::size_t>(j - 1) + 1; }

/// Rational function on the n-th symplectic power of the plane.
struct PoissonElem {
  int n = 1;
  RatFunc value;

  PoissonElem() = default;
  PoissonElem(int n, RatFunc v);
};

/// Names "x1", "xi1", ... for printing and parsing.
std::vector<std::string> symplectic_names(int n);

/// Bracket of polynomials in (x1, ξ1, ..., xn, ξn).
MPoly poly_poisson_bracket(const MPoly& f, const MPoly& g, int n);

/// {f, g} = Σ_j (∂f/∂x_j ∂g/∂ξ_j − ∂f/∂ξ_j ∂g/∂x_j), so {x_j, ξ_j} = 1.
PoissonElem poisson_bracket(const PoissonElem& f, const PoissonElem& g);

/// f (a function of one (x, ξ) pair) placed on leg j of the n-th power.
RatFunc on_leg(const RatFunc& f, int leg, int n);

struct ClassicalFamily {
  PoissonElem delta0;
  std::vector<PoissonElem> deltas;  ///< Δ_1..Δ_n
  std::vector<PoissonElem> h;       ///< H_i = Δ_i / Δ_0, i = 1..n
};

/// fs = f_0..f_n as functions of (x, ξ) (two variables). Δ_i is the
/// determinant with rows f_α (α ≠ i, increasing) and columns legs 1..n.
/// Throws DependentFamily or ZeroDelta0.
ClassicalFamily classical_hamiltonians(std::span<const RatFunc> fs);

/// Exact rank test: true iff fs are linearly independent over Q.
bool linearly_independent(std::span<const RatFunc> fs);

CheckReport check_poisson_commute(std::span<const PoissonElem> hs);

/// Alternating k-form on Q^dim, stored by its values on increasing
/// k-tuples of basis vectors.
class WedgeForm {
public:
  WedgeForm(int arity, int dim);

  /// ℓ_1 ∧ ... ∧ ℓ_k: Λ(v_1..v_k) = det[ℓ_a(v_b)].
  static WedgeForm from_covectors(const std::vector<std::vector<Rat>>& covectors);

  int arity() const { return arity_; }
  int dim() const { return dim_; }
  const std::map<std::vector<int>, Rat>& coefficients() const { return coef_; }
  void set(const std::vector<int>& increasing_tuple, const Rat& c);

  Rat evaluate(std::span<const std::vector<Rat>> vectors) const;

private:
  int arity_, dim_;
  std::map<std::vector<int>, Rat> coef_;
};

/// Evaluates the Grassmann identity for the form's arity (2, 3 or 4) on
/// 4, 5 or 6 vectors; the result must be 0.
Rat grassmann_residual(const WedgeForm& form, std::span<const std::vector<Rat>> vectors);
CheckReport check_grassmann(const WedgeForm& form, std::span<const std::vector<Rat>> vectors);

/// h_i = Δ_i / Δ_0 for g points in affine g-space, with rows (1, x_1, ..., x_g)
/// evaluated at the points. Throws ZeroDelta0.
std::vector<Rat> hyperplane_coefficients(const std::vector<std::vector<Rat>>& points);
/// 1 + Σ_i (−1)^i h_i x_i = 0 at every point.
CheckReport check_hyperplane_incidence(const std::vector<std::vector<Rat>>& points, std::span<const Rat> hs);

/// f(z) (dz)^weight on the projective line.
struct ConeDifferential {
  RatFunc f;
  int weight = 0;
};

/// ∇^α(ω) = a^i (f / a^i)' (dz)^{i+1} for α = a dz, ω = f (dz)^i.
ConeDifferential nabla(const ConeDifferential& alpha, const ConeDifferential& omega);
/// {ω, ω'} = i ω ∇^α(ω') − i' ω' ∇^α(ω).
ConeDifferential cone_bracket(const ConeDifferential& omega, const ConeDifferential& omega2,
                              const ConeDifferential& alpha);
/// f (dz)^i  ↦  f ξ^{−i} as a function of (z, ξ) = (x1, ξ1).
PoissonElem cone_to_poisson(const ConeDifferential& omega);
bool cone_equal(const ConeDifferential& a, const ConeDifferential& b);

}  // namespace commfam
