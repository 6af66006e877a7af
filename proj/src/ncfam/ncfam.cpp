#include "commfam/ncfam/ncfam.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace commfam {

namespace {

Eigen::Index ipow(int d, int n) {
  Eigen::Index r = 1;
  for (int k = 0; k < n; ++k) r *= d;
  return r;
}

void require_same_shape(const TensorElem& a, const TensorElem& b) {
  if (a.n != b.n || a.d != b.d) throw std::invalid_argument("TensorElem: shape mismatch");
}

void require_legs(int n) {
  if (n < 1 || n > kMaxLegs)
    throw std::invalid_argument("ncfam: number of legs must be in 1.." + std::to_string(kMaxLegs));
}

std::vector<int> range_excluding(int lo, int hi, int skip) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k)
    if (k != skip) v.push_back(k);
  return v;
}

std::string set_text(std::span<const int> s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

}  // namespace

TensorElem TensorElem::identity(int n, int d) {
  const Eigen::Index s = ipow(d, n);
  return {n, d, QMatrix::Identity(s, s)};
}

TensorElem TensorElem::zero(int n, int d) {
  const Eigen::Index s = ipow(d, n);
  return {n, d, QMatrix::Zero(s, s)};
}

TensorElem TensorElem::inverse() const { return {n, d, mat_inverse(mat)}; }

TensorElem operator+(const TensorElem& a, const TensorElem& b) {
  require_same_shape(a, b);
  return {a.n, a.d, a.mat + b.mat};
}

TensorElem operator-(const TensorElem& a, const TensorElem& b) {
  require_same_shape(a, b);
  return {a.n, a.d, a.mat - b.mat};
}

TensorElem operator*(const TensorElem& a, const TensorElem& b) {
  require_same_shape(a, b);
  return {a.n, a.d, rat_product(a.mat, b.mat)};
}

TensorElem operator*(const Rat& c, const TensorElem& a) { return {a.n, a.d, a.mat * c}; }

LegFamily::LegFamily(int rows, int n, int d) : rows_(rows), n_(n), d_(d) {
  if (rows < 0 || d < 1) throw std::invalid_argument("LegFamily: bad dimensions");
  require_legs(n);
  a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(n), QMatrix::Zero(d, d));
}

std::size_t LegFamily::index(int row, int leg) const {
  if (row < 0 || row >= rows_ || leg < 1 || leg > n_)
    throw std::out_of_range("LegFamily: entry (" + std::to_string(row) + "," + std::to_string(leg) +
                            ") out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(leg - 1);
}

LegFamily LegFamily::uniform(std::span<const QMatrix> fs, int n) {
  if (fs.empty()) throw std::invalid_argument("LegFamily::uniform: no rows");
  LegFamily fam(static_cast<int>(fs.size()), n, static_cast<int>(fs.front().rows()));
  for (int i = 0; i < fam.rows(); ++i) {
    if (fs[i].rows() != fam.d() || fs[i].cols() != fam.d())
      throw std::invalid_argument("LegFamily::uniform: entries must all be d×d");
    for (int j = 1; j <= n; ++j) fam.entry(i, j) = fs[i];
  }
  return fam;
}

LegFamily LegFamily::from_table(const std::vector<std::vector<QMatrix>>& table) {
  if (table.empty() || table.front().empty()) throw std::invalid_argument("LegFamily::from_table: empty table");
  const int n = static_cast<int>(table.front().size());
  LegFamily fam(static_cast<int>(table.size()), n, static_cast<int>(table.front().front().rows()));
  for (int i = 0; i < fam.rows(); ++i) {
    if (static_cast<int>(table[i].size()) != n) throw std::invalid_argument("LegFamily::from_table: ragged table");
    for (int j = 1; j <= n; ++j) {
      const QMatrix& m = table[i][j - 1];
      if (m.rows() != fam.d() || m.cols() != fam.d())
        throw std::invalid_argument("LegFamily::from_table: entries must all be d×d");
      fam.entry(i, j) = m;
    }
  }
  return fam;
}

LegFamily LegFamily::select_rows(std::span<const int> rows) const {
  LegFamily out(static_cast<int>(rows.size()), n_, d_);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (int j = 1; j <= n_; ++j) out.entry(static_cast<int>(k), j) = entry(rows[k], j);
  return out;
}

TensorElem kron_legs(std::span<const QMatrix* const> factors, int d) {
  const int n = static_cast<int>(factors.size());
  require_legs(n);
  QMatrix acc = QMatrix::Identity(1, 1);
  const QMatrix id = QMatrix::Identity(d, d);
  for (const QMatrix* f : factors) {
    const QMatrix& m = f ? *f : id;
    QMatrix next = Eigen::kroneckerProduct(acc, m).eval();
    acc = std::move(next);
  }
  return {n, d, std::move(acc)};
}

TensorElem leg_embed(const QMatrix& b, int leg, int n) {
  require_legs(n);
  if (leg < 1 || leg > n) throw std::out_of_range("leg_embed: leg out of range");
  if (b.rows() != b.cols()) throw std::invalid_argument("leg_embed: matrix not square");
  std::vector<const QMatrix*> factors(static_cast<std::size_t>(n), nullptr);
  factors[leg - 1] = &b;
  return kron_legs(factors, static_cast<int>(b.rows()));
}

TensorElem bracket(std::span<const QMatrix> ms, std::span<const int> legs, int n) {
  require_legs(n);
  if (ms.size() != legs.size()) throw std::invalid_argument("bracket: matrices and legs differ in length");
  if (ms.empty()) throw std::invalid_argument("bracket: empty bracket");
  if (static_cast<int>(ms.size()) > n) throw std::invalid_argument("bracket: more slots than legs");
  for (std::size_t a = 0; a < legs.size(); ++a) {
    if (legs[a] < 1 || legs[a] > n) throw std::out_of_range("bracket: leg out of range");
    for (std::size_t b = a + 1; b < legs.size(); ++b)
      if (legs[a] == legs[b]) throw std::invalid_argument("bracket: legs must be distinct");
  }
  const int d = static_cast<int>(ms.front().rows());
  TensorElem acc = TensorElem::zero(n, d);
  std::vector<const QMatrix*> factors(static_cast<std::size_t>(n));
  for (const auto& [sign, perm] : signed_permutations(static_cast<int>(ms.size()))) {
    std::fill(factors.begin(), factors.end(), nullptr);
    for (std::size_t m = 0; m < perm.size(); ++m) factors[legs[m] - 1] = &ms[perm[m]];
    const TensorElem term = kron_legs(factors, d);
    acc.mat = sign > 0 ? QMatrix(acc.mat + term.mat) : QMatrix(acc.mat - term.mat);
  }
  return acc;
}

TensorElem delta(const LegFamily& fam, std::span<const int> I, std::span<const int> J) {
  if (I.size() != J.size()) throw std::invalid_argument("delta: |I| != |J|");
  if (I.empty()) return TensorElem::identity(fam.n(), fam.d());
  std::vector<int> rows(I.begin(), I.end()), legs(J.begin(), J.end());
  if (!std::is_sorted(rows.begin(), rows.end()) || !std::is_sorted(legs.begin(), legs.end()))
    throw std::invalid_argument("delta: index sets must be given in increasing order");
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end() ||
      std::adjacent_find(legs.begin(), legs.end()) != legs.end())
    throw std::invalid_argument("delta: repeated index");
  TensorElem acc = TensorElem::zero(fam.n(), fam.d());
  std::vector<const QMatrix*> factors(static_cast<std::size_t>(fam.n()));
  for (const auto& [sign, perm] : signed_permutations(static_cast<int>(rows.size()))) {
    std::fill(factors.begin(), factors.end(), nullptr);
    for (std::size_t m = 0; m < rows.size(); ++m) {
      const int leg = legs[perm[m]];
      factors[leg - 1] = &fam.entry(rows[m], leg);
    }
    const TensorElem term = kron_legs(factors, fam.d());
    acc.mat = sign > 0 ? QMatrix(acc.mat + term.mat) : QMatrix(acc.mat - term.mat);
  }
  return acc;
}

TensorElem delta_omitting(const LegFamily& fam, int i) {
  const int n = fam.n();
  if (fam.rows() != n + 1) throw std::invalid_argument("delta_omitting: family must have n+1 rows");
  const std::vector<int> rows = range_excluding(0, n, i);
  std::vector<int> legs(static_cast<std::size_t>(n));
  std::iota(legs.begin(), legs.end(), 1);
  return delta(fam, rows, legs);
}

HamiltonianFamily hamiltonians(const LegFamily& fam) {
  HamiltonianFamily out;
  out.delta0 = delta_omitting(fam, 0);
  std::vector<int> legs(static_cast<std::size_t>(fam.n()));
  std::iota(legs.begin(), legs.end(), 1);
  out.inverted_minors.push_back("Delta_{" + set_text(range_excluding(0, fam.n(), 0)) + "," + set_text(legs) + "}");
  const TensorElem inv = out.delta0.inverse();
  for (int i = 1; i <= fam.n(); ++i) out.h.push_back(inv * delta_omitting(fam, i));
  return out;
}

CheckReport check_pairwise_commute(std::span<const TensorElem> hs) {
  CheckReport rep("pairwise-commute");
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const QMatrix c = rat_product(hs[i].mat, hs[j].mat) - rat_product(hs[j].mat, hs[i].mat);
      rep.record_zero("[H" + std::to_string(i + 1) + ",H" + std::to_string(j + 1) + "]", first_nonzero(c));
    }
  return rep;
}

namespace {

// Σ_i (−1)^i [..f̌_i..]^{(1..n−1)} B^{-1} (f_i)^{(leg)} for rows f_1..f_n.
TensorElem alternating_sum(const LegFamily& fs, const TensorElem& full_inv, int leg) {
  const int n = fs.n();
  std::vector<int> short_legs(static_cast<std::size_t>(n - 1));
  std::iota(short_legs.begin(), short_legs.end(), 1);
  TensorElem acc = TensorElem::zero(n, fs.d());
  for (int i = 1; i <= n; ++i) {
    const std::vector<int> rows = range_excluding(0, n - 1, i - 1);
    const TensorElem left = delta(fs, rows, short_legs);
    const TensorElem term = left * full_inv * leg_embed(fs.entry(i - 1, leg), leg, n);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

TensorElem full_bracket(const LegFamily& fs) {
  std::vector<int> rows(static_cast<std::size_t>(fs.n())), legs(static_cast<std::size_t>(fs.n()));
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(legs.begin(), legs.end(), 1);
  return delta(fs, rows, legs);
}

void require_square_family(const LegFamily& fs, const char* who) {
  if (fs.rows() != fs.n())
    throw std::invalid_argument(std::string(who) + ": need exactly n rows f_1..f_n");
}

}  // namespace

CheckReport check_identity_2a(const LegFamily& fs) {
  require_square_family(fs, "check_identity_2a");
  CheckReport rep("last-leg-identity");
  const int n = fs.n();
  const TensorElem inv = full_bracket(fs).inverse();
  const TensorElem lhs = alternating_sum(fs, inv, n);
  const TensorElem rhs = (n % 2 == 0 ? Rat(1) : Rat(-1)) * TensorElem::identity(n, fs.d());
  rep.record_zero("n=" + std::to_string(n), first_nonzero(QMatrix(lhs.mat - rhs.mat)));
  return rep;
}

CheckReport check_identity_2b(const LegFamily& fs, int a) {
  require_square_family(fs, "check_identity_2b");
  const int n = fs.n();
  const bool admissible = (n == 2 && a == 1) || (n >= 3 && a >= 1 && a <= n - 2);
  if (!admissible) throw std::invalid_argument("check_identity_2b: leg a=" + std::to_string(a) + " not admissible");
  CheckReport rep("vanishing-identity");
  const TensorElem inv = full_bracket(fs).inverse();
  rep.record_zero("n=" + std::to_string(n) + ",a=" + std::to_string(a), first_nonzero(alternating_sum(fs, inv, a).mat));
  return rep;
}

CheckReport check_main_id(const LegFamily& fam) {
  CheckReport rep("main-id");
  const int n = fam.n();
  std::vector<TensorElem> deltas;
  for (int i = 0; i <= n; ++i) deltas.push_back(delta_omitting(fam, i));
  const TensorElem inv = deltas[0].inverse();
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const TensorElem diff = deltas[i] * inv * deltas[j] - deltas[j] * inv * deltas[i];
      rep.record_zero("(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")", first_nonzero(diff.mat));
    }
  return rep;
}

CheckReport check_laplace_expansion(const LegFamily& fs) {
  require_square_family(fs, "check_laplace_expansion");
  CheckReport rep("laplace-expansion");
  const int n = fs.n();
  TensorElem rhs = TensorElem::zero(n, fs.d());
  std::vector<int> short_legs(static_cast<std::size_t>(n - 1));
  std::iota(short_legs.begin(), short_legs.end(), 1);
  for (int j = 1; j <= n; ++j) {
    const std::vector<int> rows = range_excluding(0, n - 1, j - 1);
    const TensorElem term = leg_embed(fs.entry(j - 1, n), n, n) * delta(fs, rows, short_legs);
    rhs = ((j + n) % 2 == 0) ? rhs + term : rhs - term;
  }
  rep.record_zero("n=" + std::to_string(n), first_nonzero(QMatrix(full_bracket(fs).mat - rhs.mat)));
  return rep;
}

LegFamily sample_leg_family(Rng& rng, int rows, int n, int d, long bound) {
  LegFamily fam(rows, n, d);
  for (int i = 0; i < rows; ++i)
    for (int j = 1; j <= n; ++j) fam.entry(i, j) = rng.int_matrix(d, d, bound);
  return fam;
}

LegFamily sample_word_family(Rng& rng, int rows, int n, int d, long bound) {
  constexpr int kWords = 5;  // 1, u, v, uv, vu
  std::vector<std::vector<Rat>> coef(static_cast<std::size_t>(rows));
  for (auto& c : coef)
    for (int w = 0; w < kWords; ++w) c.push_back(Rat(rng.uniform(-bound, bound)));
  LegFamily fam(rows, n, d);
  for (int j = 1; j <= n; ++j) {
    const QMatrix u = rng.int_matrix(d, d, bound);
    const QMatrix v = rng.int_matrix(d, d, bound);
    const QMatrix words[kWords] = {QMatrix::Identity(d, d), u, v, u * v, v * u};
    for (int i = 0; i < rows; ++i) {
      QMatrix m = QMatrix::Zero(d, d);
      for (int w = 0; w < kWords; ++w)
        if (!coef[i][w].is_zero()) m += words[w] * coef[i][w];
      fam.entry(i, j) = m;
    }
  }
  return fam;
}

}  // namespace commfam
