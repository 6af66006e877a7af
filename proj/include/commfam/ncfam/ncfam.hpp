#pragma once

#include "commfam/check.hpp"
#include "commfam/exact/matrix.hpp"
#include "commfam/exact/random.hpp"

#include <span>
#include <string>
#include <vector>

namespace commfam {

/// Largest tensor power accepted by the permutation-sum routines.
inline constexpr int kMaxLegs = 6;

/// Element of M_d(Q)^{⊗n}, stored as a d^n × d^n matrix. Leg 1 is the
/// outermost Kronecker factor.
struct TensorElem {
  int n = 0;
  int d = 0;
  QMatrix mat;

  static TensorElem identity(int n, int d);
  static TensorElem zero(int n, int d);

  bool is_zero() const { return commfam::is_zero(mat); }
  TensorElem inverse() const;  ///< throws Singular

  friend TensorElem operator+(const TensorElem& a, const TensorElem& b);
  friend TensorElem operator-(const TensorElem& a, const TensorElem& b);
  friend TensorElem operator*(const TensorElem& a, const TensorElem& b);
  friend TensorElem operator*(const Rat& c, const TensorElem& a);
  friend bool operator==(const TensorElem& a, const TensorElem& b) { return a.mat == b.mat; }
};

/// Per-leg generator table: entry(i, j) is the d×d matrix placed on leg j
/// (1-based) for row i (0-based). A Theorem-1 family carries one element
/// f_i per row seen through a representation rho_j of each leg, so
/// entry(i, j) = rho_j(f_i); a per-leg family is an arbitrary table.
class LegFamily {
public:
  LegFamily(int rows, int n, int d);

  /// Row i holds fs[i] on every leg.
  static LegFamily uniform(std::span<const QMatrix> fs, int n);
  /// Rows taken from explicit per-leg matrices: table[i][j-1].
  static LegFamily from_table(const std::vector<std::vector<QMatrix>>& table);

  int rows() const { return rows_; }
  int n() const { return n_; }
  int d() const { return d_; }
  const QMatrix& entry(int row, int leg) const { return a_[index(row, leg)]; }
  QMatrix& entry(int row, int leg) { return a_[index(row, leg)]; }

  /// Sub-family keeping the listed rows in order.
  LegFamily select_rows(std::span<const int> rows) const;

private:
  int rows_, n_, d_;
  std::vector<QMatrix> a_;
  std::size_t index(int row, int leg) const;
};

/// Kronecker product over legs 1..n, identity where factors[j-1] is null.
TensorElem kron_legs(std::span<const QMatrix* const> factors, int d);

TensorElem leg_embed(const QMatrix& b, int leg, int n);

/// Σ_σ ε(σ) Π_m leg_embed(ms[σ(m)], legs[m]).
TensorElem bracket(std::span<const QMatrix> ms, std::span<const int> legs, int n);

/// Signed sum over bijections σ: I → J of Π_{i∈I} leg_embed(entry(i, σ(i)), σ(i)).
/// Signs are relative to the increasing enumerations of I and J.
TensorElem delta(const LegFamily& fam, std::span<const int> I, std::span<const int> J);

/// Δ_i of a family with rows f_0..f_n: rows {0..n}∖{i} on legs 1..n.
TensorElem delta_omitting(const LegFamily& fam, int i);

struct HamiltonianFamily {
  TensorElem delta0;
  std::vector<TensorElem> h;                ///< H_1..H_n
  std::vector<std::string> inverted_minors;  ///< minors that had to be inverted
};

/// H_i = Δ_0^{-1} Δ_i for i = 1..n. Throws Singular if Δ_0 is not invertible.
HamiltonianFamily hamiltonians(const LegFamily& fam);

CheckReport check_pairwise_commute(std::span<const TensorElem> hs);

/// Σ_i (−1)^i [..f̌_i..]^{(1..n−1)} [f_1..f_n]^{-1} (f_i)^{(n)} = (−1)^n,
/// rows of fs being f_1..f_n. Throws Singular if [f_1..f_n] is singular.
CheckReport check_identity_2a(const LegFamily& fs);
/// Same sum with (f_i)^{(a)} in place of (f_i)^{(n)}; must vanish.
/// Admissible a: 1..n−2, and a = 1 when n = 2.
CheckReport check_identity_2b(const LegFamily& fs, int a);
/// Δ_i Δ_0^{-1} Δ_j = Δ_j Δ_0^{-1} Δ_i for all pairs, i, j in 0..n.
CheckReport check_main_id(const LegFamily& fam);
/// [f_1..f_n] = Σ_j (−1)^{j+n} (f_j)^{(n)} [..f̌_j..]^{(1..n−1)}.
CheckReport check_laplace_expansion(const LegFamily& fs);

/// Per-leg table family: every entry uniform in [−bound, bound].
LegFamily sample_leg_family(Rng& rng, int rows, int n, int d, long bound);
/// Theorem-1-shape family: each f_i is a random combination of the words
/// {1, u, v, uv, vu} in two free generators, and each leg carries its own
/// random representation of u and v.
LegFamily sample_word_family(Rng& rng, int rows, int n, int d, long bound);

}  // namespace commfam
