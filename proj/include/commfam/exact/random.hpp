#pragma once

#include "commfam/exact/matrix.hpp"
#include "commfam/exact/mpoly.hpp"
#include "commfam/exact/rat.hpp"
#include "commfam/exact/ratfunc.hpp"

#include <cstdint>
#include <random>

namespace commfam {

/// splitmix64 finalizer; mixes (seed, stream) into an independent 64-bit seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator for test instances. Bounded draws use rejection
/// sampling on raw 64-bit output, so sequences are identical across
/// standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : eng_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  long nonzero(long lo, long hi);
  bool coin() { return (eng_() >> 63) != 0; }

  /// p/q with p in [-bound, bound], q in [1, den_bound].
  Rat rat(long bound, long den_bound = 1);
  Rat nonzero_rat(long bound, long den_bound = 1);

  QMatrix int_matrix(Eigen::Index rows, Eigen::Index cols, long bound);
  QMatrix rat_matrix(Eigen::Index rows, Eigen::Index cols, long bound, long den_bound);

  /// Dense polynomial with integer coefficients in [-bound, bound] on every
  /// monomial of total degree <= degree.
  MPoly poly(std::size_t nvars, int degree, long bound);
  /// Like poly() but guaranteed nonzero.
  MPoly nonzero_poly(std::size_t nvars, int degree, long bound);
  /// Ratio of two random polynomials, denominator nonzero.
  RatFunc ratfunc(std::size_t nvars, int degree, long bound);

private:
  std::mt19937_64 eng_;
};

/// All exponent vectors in nvars variables with total degree <= degree,
/// in increasing grlex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);

}  // namespace commfam
