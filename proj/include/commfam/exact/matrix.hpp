#pragma once

#include "commfam/exact/rat.hpp"
#include "commfam/exact/ratfunc.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<commfam::Rat> : GenericNumTraits<commfam::Rat> {
  using Real = commfam::Rat;
  using NonInteger = commfam::Rat;
  using Nested = commfam::Rat;
  using Literal = commfam::Rat;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<commfam::RatFunc> : GenericNumTraits<commfam::RatFunc> {
  using Real = commfam::RatFunc;
  using NonInteger = commfam::RatFunc;
  using Nested = commfam::RatFunc;
  using Literal = commfam::RatFunc;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 50,
    AddCost = 500,
    MulCost = 1000
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace commfam {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Mat<Rat>;
using QVector = Vec<Rat>;
using RMatrix = Mat<RatFunc>;

/// A required inverse does not exist.
class Singular : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero_scalar(const Rat& r) { return r.is_zero(); }
inline bool is_zero_scalar(const RatFunc& r) { return r.is_zero(); }
inline std::size_t pivot_cost(const Rat& r) { return r.bit_size(); }
inline std::size_t pivot_cost(const RatFunc& r) { return r.complexity(); }

inline std::string to_text(const Rat& r) { return r.str(); }
inline std::string to_text(const RatFunc& r) { return r.str(); }

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero_scalar(m(i, j))) return false;
  return true;
}

/// First nonzero entry in column-major order, as "(i,j)=value", or "" if none.
template <class Derived>
std::string first_nonzero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero_scalar(m(i, j)))
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")=" + to_text(m(i, j));
  return {};
}

namespace detail {

/// Row-echelon reduction in place on the first `pivot_cols` columns.
/// Returns the pivot columns found; rows are normalized so pivots are 1 and
/// each pivot column is zero outside its pivot row (Gauss-Jordan).
template <class Scalar>
std::vector<Eigen::Index> gauss_jordan(Mat<Scalar>& a, Eigen::Index pivot_cols, Scalar* det_sign = nullptr) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < pivot_cols && row < a.rows(); ++col) {
    // Structurally simplest nonzero pivot limits expression swell.
    Eigen::Index best = -1;
    std::size_t best_cost = 0;
    for (Eigen::Index r = row; r < a.rows(); ++r) {
      if (is_zero_scalar(a(r, col))) continue;
      const std::size_t c = pivot_cost(a(r, col));
      if (best < 0 || c < best_cost) {
        best = r;
        best_cost = c;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      a.row(best).swap(a.row(row));
      if (det_sign) *det_sign = -*det_sign;
    }
    const Scalar pivot = a(row, col);
    if (det_sign) *det_sign = *det_sign * pivot;
    const Scalar inv = Scalar(1) / pivot;
    for (Eigen::Index c = col; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero_scalar(a(r, col))) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index c = col; c < a.cols(); ++c)
        if (!is_zero_scalar(a(row, c))) a(r, c) = a(r, c) - factor * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Exact two-sided inverse. Throws Singular if m has no inverse.
template <class Scalar>
Mat<Scalar> mat_inverse(const Mat<Scalar>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_inverse: matrix not square");
  const Eigen::Index n = m.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  const auto pivots = detail::gauss_jordan(aug, n);
  if (static_cast<Eigen::Index>(pivots.size()) != n)
    throw Singular("mat_inverse: matrix is singular (rank " + std::to_string(pivots.size()) + " < " +
                   std::to_string(n) + ")");
  return aug.rightCols(n);
}

/// Determinant by exact elimination.
template <class Scalar>
Scalar determinant(const Mat<Scalar>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  Mat<Scalar> a = m;
  Scalar det(1);
  const auto pivots = detail::gauss_jordan(a, a.cols(), &det);
  if (static_cast<Eigen::Index>(pivots.size()) != m.rows()) return Scalar(0);
  return det;
}

template <class Scalar>
std::size_t rank(const Mat<Scalar>& m) {
  Mat<Scalar> a = m;
  return detail::gauss_jordan(a, a.cols()).size();
}

/// Division-free determinant by permutation expansion; intended for small n
/// (n <= 6) over polynomial or rational-function entries.
template <class Scalar>
Scalar determinant_expansion(const Mat<Scalar>& m);

/// a * b over Q computed on integer rows and columns scaled by their
/// denominator LCMs; equal to the plain product but far cheaper for large
/// entries since no gcd is taken until the end.
QMatrix rat_product(const QMatrix& a, const QMatrix& b);

/// Signs and index tuples of all permutations of {0..k-1}, in lexicographic order.
std::vector<std::pair<int, std::vector<int>>> signed_permutations(int k);

template <class Scalar>
Scalar determinant_expansion(const Mat<Scalar>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant_expansion: matrix not square");
  const int n = static_cast<int>(m.rows());
  Scalar acc(0);
  for (const auto& [sign, perm] : signed_permutations(n)) {
    Scalar term(sign);
    for (int i = 0; i < n && !is_zero_scalar(term); ++i) term = term * m(i, perm[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace commfam
