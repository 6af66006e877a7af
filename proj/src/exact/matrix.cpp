#include "commfam/exact/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace commfam {

std::vector<std::pair<int, std::vector<int>>> signed_permutations(int k) {
  std::vector<std::pair<int, std::vector<int>>> out;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (p[i] > p[j]) ++inversions;
    out.emplace_back(inversions % 2 == 0 ? 1 : -1, p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

QMatrix rat_product(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("rat_product: inner dimensions differ");
  const Eigen::Index n = a.rows(), inner = a.cols(), m = b.cols();

  std::vector<mpz_class> row_den(static_cast<std::size_t>(n), 1), col_den(static_cast<std::size_t>(m), 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < inner; ++k)
      mpz_lcm(row_den[i].get_mpz_t(), row_den[i].get_mpz_t(), a(i, k).gmp().get_den_mpz_t());
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < inner; ++k)
      mpz_lcm(col_den[j].get_mpz_t(), col_den[j].get_mpz_t(), b(k, j).gmp().get_den_mpz_t());

  // Nonzero entries of b by row, scaled to integers.
  std::vector<std::vector<std::pair<Eigen::Index, mpz_class>>> b_rows(static_cast<std::size_t>(inner));
  for (Eigen::Index k = 0; k < inner; ++k)
    for (Eigen::Index j = 0; j < m; ++j) {
      const mpq_class& q = b(k, j).gmp();
      if (q == 0) continue;
      mpz_class v;
      mpz_divexact(v.get_mpz_t(), col_den[j].get_mpz_t(), q.get_den_mpz_t());
      v *= q.get_num();
      b_rows[k].emplace_back(j, std::move(v));
    }

  QMatrix c(n, m);
  std::vector<mpz_class> acc(static_cast<std::size_t>(m));
  mpz_class scaled;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (auto& v : acc) v = 0;
    for (Eigen::Index k = 0; k < inner; ++k) {
      const mpq_class& q = a(i, k).gmp();
      if (q == 0) continue;
      mpz_divexact(scaled.get_mpz_t(), row_den[i].get_mpz_t(), q.get_den_mpz_t());
      scaled *= q.get_num();
      for (const auto& [j, v] : b_rows[k]) mpz_addmul(acc[j].get_mpz_t(), scaled.get_mpz_t(), v.get_mpz_t());
    }
    for (Eigen::Index j = 0; j < m; ++j) c(i, j) = Rat(acc[j], mpz_class(row_den[i] * col_den[j]));
  }
  return c;
}

}  // namespace commfam
