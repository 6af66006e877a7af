#pragma once

#include "commfam/check.hpp"
#include "commfam/exact/random.hpp"
#include "commfam/exact/ratfunc.hpp"
#include "commfam/poisson/poisson.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace commfam {

/// dual_inverse of an element with zero body.
class ZeroBody : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Operands truncated at different orders, or localized at different elements.
class TruncationMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Dual numbers A[ε]/(ε²) with f·g = fg + ε{f,g}

struct DualNum {
  PoissonElem body;
  PoissonElem soul;  ///< ε-coefficient

  DualNum() = default;
  /// A zero soul of any size is lifted to body's variable set.
  DualNum(PoissonElem body, PoissonElem soul = {});

  int n() const { return body.n; }
};

DualNum dual_mul(const DualNum& a, const DualNum& b);
DualNum dual_add(const DualNum& a, const DualNum& b);
DualNum dual_sub(const DualNum& a, const DualNum& b);
/// Throws ZeroBody.
DualNum dual_inverse(const DualNum& a);
DualNum dual_commutator(const DualNum& a, const DualNum& b);
bool dual_equal(const DualNum& a, const DualNum& b);

/// Builds Δ_i and H_i = Δ₀⁻¹Δ_i with dual_mul/dual_inverse, legs on disjoint
/// (x_j, ξ_j) blocks, and checks: H_iH_j = H_jH_i (body and soul); body(H_i)
/// equals classical_hamiltonians; the soul of the commutator of the soul-free
/// lifts equals 2{H_i^cl, H_j^cl} from the poisson module.
CheckReport dual_commuting_family(std::span<const RatFunc> fs);

// ---------------------------------------------------------------------------
// A_ℏ: one-variable differential operators with each ∂ weighted by ℏ.
// ℏ^m a(z) ∂^k with m ≥ k; D = ℏ∂ has ℏ-order 0, so the ℏ-order of a term
// is m − k. Terms of ℏ-order ≥ M are dropped.

class HElem {
public:
  using Key = std::pair<int, int>;  ///< (derivative order k, ℏ-power m)

  explicit HElem(int M = 5);
  static HElem function(const RatFunc& a, int M);
  static HElem D(int M);
  static HElem hbar(int M);

  int truncation() const { return M_; }
  const std::map<Key, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coefficient(int k, int m) const;
  /// Smallest ℏ-order present; truncation() for zero.
  int hbar_order() const;

  /// Adds ℏ^m c ∂^k; requires 0 ≤ k ≤ m.
  void add_term(int k, int m, const RatFunc& c);

  /// ℏ-order-s part as a function of (z, ξ): Σ_k a_{k,k+s}(z) ξ^k.
  RatFunc classical(int s) const;
  /// The ℏ-order-0 part.
  HElem body() const;
  /// The body as a function of z, if it has no D terms.
  bool body_is_function() const;

  std::string str() const;

  HElem& operator+=(const HElem& o);
  HElem& operator-=(const HElem& o);
  friend HElem operator+(HElem a, const HElem& b) { return a += b; }
  friend HElem operator-(HElem a, const HElem& b) { return a -= b; }
  friend HElem operator-(const HElem& a);
  friend HElem operator*(const HElem& a, const HElem& b);
  friend HElem operator*(const Rat& c, const HElem& a);
  friend bool operator==(const HElem& a, const HElem& b);

private:
  int M_;
  std::map<Key, RatFunc> terms_;
};

HElem h_commutator(const HElem& a, const HElem& b);
/// f⁻¹ mod ℏ^M as a Neumann series around a function body g:
/// f⁻¹ = Σ_j (−g⁻¹(f − g))^j g⁻¹. Throws domain_error unless body_is_function().
HElem neumann_inverse(const HElem& f);

/// Random element with derivative order ≤ max_k and polynomial coefficients.
HElem random_helem(Rng& rng, int M, int max_k, int coef_degree, long bound);

// ---------------------------------------------------------------------------
// A_ℏ[X] / (gf X^{n+1} − g X^n): Σ_k a_k X^k with X a formal inverse of f.

class LocalSeries {
public:
  /// Zero series; throws invalid_argument if f has zero body.
  explicit LocalSeries(HElem f);
  static LocalSeries constant(const HElem& a, const HElem& f);
  static LocalSeries x_power(int k, const HElem& f);

  const HElem& localizer() const { return f_; }
  int truncation() const { return f_.truncation(); }
  const std::map<int, HElem>& terms() const { return terms_; }
  int max_degree() const;

  /// Adds a X^k.
  void add_term(int k, const HElem& a);
  /// c with Σ a_k X^k = c X^K, for K ≥ max_degree(): c = Σ a_k f^{K−k}.
  HElem raised_to(int K) const;

  std::string str() const;

  friend LocalSeries operator+(const LocalSeries& u, const LocalSeries& v);
  friend LocalSeries operator-(const LocalSeries& u, const LocalSeries& v);
  /// Equality in the quotient: compares raised_to at a common degree.
  friend bool operator==(const LocalSeries& u, const LocalSeries& v);

private:
  HElem f_;
  std::map<int, HElem> terms_;
};

/// (aXⁿ)(bX^m) = Σ_α (−n choose α) a ad(f)^α(b) X^{n+m+α}, extended bilinearly.
/// Throws TruncationMismatch.
LocalSeries localize_product(const LocalSeries& u, const LocalSeries& v);

/// Image under X ↦ neumann_inverse(f).
HElem realize(const LocalSeries& u);

LocalSeries random_series(Rng& rng, const HElem& f, int max_x_degree);

/// f·X = X·f = 1 and associativity on `triples` random triples, mod ℏ^M.
CheckReport check_localization_axioms(const HElem& f, int M, Rng& rng, int triples = 20);

/// X·D = D·X + ℏX² in the localization at f = z, and both sides against the
/// image under X ↦ 1/z.
CheckReport check_xd_identity(int M);

/// Localizes at f and at f' = f + ℏg, sends X' to Y = Σ_j (−Xℏg)^j X, and
/// checks that Y inverts f' and that products are carried to products.
CheckReport check_lift_independence(const HElem& f, const HElem& g, Rng& rng, int pairs = 5);

/// On random pairs: [a,b] has ℏ-order ≥ 1 and its ℏ¹ part is −{a₀, b₀}.
CheckReport check_degeneration(Rng& rng, int M, int pairs);

}  // namespace commfam
