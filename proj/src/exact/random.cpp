#include "commfam/exact/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace commfam {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 1));
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(eng_());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

long Rng::nonzero(long lo, long hi) {
  if (lo == 0 && hi == 0) throw std::invalid_argument("Rng::nonzero: range is {0}");
  long v;
  do {
    v = uniform(lo, hi);
  } while (v == 0);
  return v;
}

Rat Rng::rat(long bound, long den_bound) {
  const long p = uniform(-bound, bound);
  const long q = uniform(1, std::max(1L, den_bound));
  return Rat(p, q);
}

Rat Rng::nonzero_rat(long bound, long den_bound) {
  const long p = nonzero(-bound, bound);
  const long q = uniform(1, std::max(1L, den_bound));
  return Rat(p, q);
}

QMatrix Rng::int_matrix(Eigen::Index rows, Eigen::Index cols, long bound) {
  QMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Rat(uniform(-bound, bound));
  return m;
}

QMatrix Rng::rat_matrix(Eigen::Index rows, Eigen::Index cols, long bound, long den_bound) {
  QMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rat(bound, den_bound);
  return m;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  // Enumerate by recursion over variables, bounded by remaining degree.
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[var] = static_cast<Exponent>(e);
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) < 0; });
  return out;
}

MPoly Rng::poly(std::size_t nvars, int degree, long bound) {
  std::vector<Term> terms;
  for (auto& m : monomials_up_to(nvars, degree)) {
    const long c = uniform(-bound, bound);
    if (c != 0) terms.push_back({std::move(m), Rat(c)});
  }
  return MPoly::from_terms(nvars, std::move(terms));
}

MPoly Rng::nonzero_poly(std::size_t nvars, int degree, long bound) {
  for (;;) {
    MPoly p = poly(nvars, degree, bound);
    if (!p.is_zero()) return p;
  }
}

RatFunc Rng::ratfunc(std::size_t nvars, int degree, long bound) {
  MPoly num = poly(nvars, degree, bound);
  MPoly den = nonzero_poly(nvars, degree, bound);
  return RatFunc(num.with_nvars(nvars), den.with_nvars(nvars));
}

}  // namespace commfam
