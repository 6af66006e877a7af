#include "commfam/ncfam/ncfam.hpp"

#include <gtest/gtest.h>

using namespace commfam;

namespace {

QMatrix m2(long a, long b, long c, long d) {
  QMatrix m(2, 2);
  m << Rat(a), Rat(b), Rat(c), Rat(d);
  return m;
}

// Independent Kronecker product oracle (plain loops).
QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

QMatrix id(Eigen::Index n) { return QMatrix::Identity(n, n); }

// Oracle for n = 2: [x, y] with per-leg entries = x1⊗y2 − y1⊗x2.
QMatrix bracket2(const QMatrix& x1, const QMatrix& x2, const QMatrix& y1, const QMatrix& y2) {
  return kron(x1, y2) - kron(y1, x2);
}

}  // namespace

TEST(LegEmbed, IdentityAndSingleLeg) {
  EXPECT_EQ(leg_embed(id(2), 2, 3).mat, id(8));
  const QMatrix b = m2(1, 2, 3, 4);
  EXPECT_EQ(leg_embed(b, 1, 1).mat, b);
  EXPECT_EQ(leg_embed(b, 1, 2).mat, kron(b, id(2)));
  EXPECT_EQ(leg_embed(b, 2, 2).mat, kron(id(2), b));
  EXPECT_THROW(leg_embed(b, 3, 2), std::out_of_range);
}

TEST(LegEmbed, DistinctLegsCommute) {
  const TensorElem a = leg_embed(m2(1, 0, 0, 0), 1, 2);
  const TensorElem b = leg_embed(m2(0, 0, 0, 1), 2, 2);
  EXPECT_EQ(a * b, b * a);
  Rng rng(4);
  const QMatrix x = rng.int_matrix(2, 2, 5), y = rng.int_matrix(2, 2, 5);
  EXPECT_EQ(leg_embed(x, 1, 3) * leg_embed(y, 3, 3), leg_embed(y, 3, 3) * leg_embed(x, 1, 3));
}

TEST(Bracket, ScalarCaseCollapses) {
  QMatrix f(1, 1), g(1, 1);
  f << Rat(3);
  g << Rat(-7);
  const std::vector<QMatrix> ms = {f, g};
  const std::vector<int> legs = {1, 2};
  EXPECT_TRUE(bracket(ms, legs, 2).is_zero());
}

TEST(Bracket, SingleSlotIsLegEmbedding) {
  const std::vector<QMatrix> ms = {m2(1, 2, 3, 4)};
  const std::vector<int> legs = {2};
  EXPECT_EQ(bracket(ms, legs, 3), leg_embed(ms[0], 2, 3));
}

TEST(Bracket, E11E22Example) {
  const std::vector<QMatrix> ms = {m2(1, 0, 0, 0), m2(0, 0, 0, 1)};
  const std::vector<int> legs = {1, 2};
  QMatrix expect = QMatrix::Zero(4, 4);
  expect(1, 1) = Rat(1);
  expect(2, 2) = Rat(-1);
  EXPECT_EQ(bracket(ms, legs, 2).mat, expect);
}

TEST(Bracket, AlternatingAndMultilinear) {
  Rng rng(17);
  const std::vector<int> legs = {1, 2, 3};
  for (int t = 0; t < 5; ++t) {
    const QMatrix a = rng.int_matrix(2, 2, 5), b = rng.int_matrix(2, 2, 5), c = rng.int_matrix(2, 2, 5);
    const QMatrix a2 = rng.int_matrix(2, 2, 5);
    const Rat s = rng.nonzero_rat(9, 5);
    const std::vector<QMatrix> abc = {a, b, c}, bac = {b, a, c}, aac = {a, a, c};
    EXPECT_EQ(bracket(bac, legs, 3).mat, QMatrix(-bracket(abc, legs, 3).mat));
    EXPECT_TRUE(bracket(aac, legs, 3).is_zero());
    const std::vector<QMatrix> mixed = {QMatrix(a * s + a2), b, c}, a2bc = {a2, b, c};
    EXPECT_EQ(bracket(mixed, legs, 3), s * bracket(abc, legs, 3) + bracket(a2bc, legs, 3));
  }
}

TEST(Bracket, MatchesProductOfLegEmbeddings) {
  Rng rng(8);
  const std::vector<QMatrix> ms = {rng.int_matrix(2, 2, 4), rng.int_matrix(2, 2, 4)};
  const std::vector<int> legs = {3, 1};
  const TensorElem direct = leg_embed(ms[0], 3, 3) * leg_embed(ms[1], 1, 3) -
                            leg_embed(ms[1], 3, 3) * leg_embed(ms[0], 1, 3);
  EXPECT_EQ(bracket(ms, legs, 3), direct);
}

TEST(Delta, SingletonAndFullMinor) {
  Rng rng(21);
  const LegFamily fam = sample_leg_family(rng, 3, 2, 2, 5);
  const std::vector<int> I = {2}, J = {1};
  EXPECT_EQ(delta(fam, I, J), leg_embed(fam.entry(2, 1), 1, 2));

  const std::vector<QMatrix> fs = {rng.int_matrix(2, 2, 5), rng.int_matrix(2, 2, 5), rng.int_matrix(2, 2, 5)};
  const LegFamily uni = LegFamily::uniform(fs, 3);
  const std::vector<int> rows = {0, 1, 2}, legs = {1, 2, 3};
  EXPECT_EQ(delta(uni, rows, legs), bracket(fs, legs, 3));
}

TEST(Delta, RepeatedRowVanishes) {
  Rng rng(22);
  LegFamily fam = sample_leg_family(rng, 3, 2, 2, 5);
  for (int j = 1; j <= 2; ++j) fam.entry(2, j) = fam.entry(0, j);
  const std::vector<int> I = {0, 2}, J = {1, 2};
  EXPECT_TRUE(delta(fam, I, J).is_zero());
}

TEST(Delta, RejectsBadIndexSets) {
  Rng rng(1);
  const LegFamily fam = sample_leg_family(rng, 3, 2, 2, 5);
  const std::vector<int> I = {0, 1}, J = {1};
  EXPECT_THROW(delta(fam, I, J), std::invalid_argument);
  EXPECT_THROW(sample_leg_family(rng, 3, kMaxLegs + 1, 1, 1), std::invalid_argument);
}

TEST(Hamiltonians, SingleLeg) {
  const std::vector<QMatrix> fs = {m2(2, 1, 0, 1), m2(1, 0, 3, 1)};
  const LegFamily fam = LegFamily::uniform(fs, 1);
  const HamiltonianFamily hf = hamiltonians(fam);
  ASSERT_EQ(hf.h.size(), 1u);
  EXPECT_EQ(hf.h[0].mat, QMatrix(mat_inverse(fs[1]) * fs[0]));
  EXPECT_EQ(hf.inverted_minors.size(), 1u);
}

TEST(Hamiltonians, ScalarCaseCommutes) {
  Rng rng(2);
  for (int t = 0; t < 5; ++t) {
    const LegFamily fam = sample_leg_family(rng, 4, 3, 1, 9);
    try {
      const auto hf = hamiltonians(fam);
      EXPECT_TRUE(check_pairwise_commute(hf.h).passed());
    } catch (const Singular&) {
      // With d = 1 every bracket is zero: the abelian case never has an invertible Δ_0 for n >= 2.
      SUCCEED();
    }
  }
}

TEST(Hamiltonians, TwoLegsAgainstDirectOracle) {
  Rng rng(33);
  int done = 0;
  for (int t = 0; t < 10 && done < 5; ++t) {
    const LegFamily fam = sample_leg_family(rng, 3, 2, 2, 5);
    auto e = [&](int i, int j) { return fam.entry(i, j); };
    const QMatrix d0 = bracket2(e(1, 1), e(1, 2), e(2, 1), e(2, 2));
    const QMatrix d1 = bracket2(e(0, 1), e(0, 2), e(2, 1), e(2, 2));
    const QMatrix d2 = bracket2(e(0, 1), e(0, 2), e(1, 1), e(1, 2));
    if (determinant(d0).is_zero()) {
      EXPECT_THROW(hamiltonians(fam), Singular);
      continue;
    }
    const QMatrix inv = mat_inverse(d0);
    const QMatrix h1 = inv * d1, h2 = inv * d2;
    EXPECT_TRUE(is_zero(QMatrix(h1 * h2 - h2 * h1)));
    const auto hf = hamiltonians(fam);
    EXPECT_EQ(hf.delta0.mat, d0);
    EXPECT_EQ(hf.h[0].mat, h1);
    EXPECT_EQ(hf.h[1].mat, h2);
    ++done;
  }
  EXPECT_EQ(done, 5);
}

TEST(Hamiltonians, SameMatrixOnEveryLegIsSingular) {
  // [f_1..f_n] anticommutes with leg swaps when every leg carries the same matrix.
  Rng rng(5);
  for (int n = 2; n <= 3; ++n) {
    std::vector<QMatrix> fs;
    for (int i = 0; i <= n; ++i) fs.push_back(rng.int_matrix(2, 2, 5));
    EXPECT_THROW(hamiltonians(LegFamily::uniform(fs, n)), Singular);
  }
}

TEST(Hamiltonians, WordFamiliesCommute) {
  Rng rng(77);
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const LegFamily fam = sample_word_family(rng, n + 1, n, d, 5);
    const auto hf = hamiltonians(fam);
    const CheckReport rep = check_pairwise_commute(hf.h);
    EXPECT_TRUE(rep.passed()) << rep.first_witness();
    EXPECT_EQ(rep.count(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(PairwiseCommute, DiagonalPassesAndKnownPairFails) {
  std::vector<TensorElem> diag = {{1, 2, m2(1, 0, 0, 2)}, {1, 2, m2(3, 0, 0, -1)}};
  EXPECT_TRUE(check_pairwise_commute(diag).passed());
  std::vector<TensorElem> bad = {{1, 2, m2(0, 1, 0, 0)}, {1, 2, m2(0, 0, 1, 0)}};
  const CheckReport rep = check_pairwise_commute(bad);
  ASSERT_FALSE(rep.passed());
  EXPECT_EQ(rep.failures().front().witness, "(0,0)=1");
}

TEST(Identity2a, LiteralExampleIsSingular) {
  const std::vector<QMatrix> fs = {m2(1, 1, 0, 1), m2(1, 0, 1, 1)};
  EXPECT_THROW(check_identity_2a(LegFamily::uniform(fs, 2)), Singular);
}

TEST(Identity2a, ExampleWithSecondLegRepresentation) {
  // Leg 2 represents the generators by f and g^T (a non-equivalent representation).
  const QMatrix f = m2(1, 1, 0, 1), g = m2(1, 0, 1, 1);
  const QMatrix gt = g.transpose();
  const LegFamily fam = LegFamily::from_table({{f, f}, {g, gt}});
  // Oracle: f1 [f,g]^{-1} g2 − g1 [f,g]^{-1} f2 = I, all by direct Kronecker products.
  const QMatrix inv = mat_inverse(QMatrix(bracket2(f, f, g, gt)));
  const QMatrix lhs = kron(f, id(2)) * inv * kron(id(2), gt) - kron(g, id(2)) * inv * kron(id(2), f);
  EXPECT_EQ(lhs, id(4));
  EXPECT_TRUE(check_identity_2a(fam).passed());
  EXPECT_TRUE(check_identity_2b(fam, 1).passed());
}

TEST(Identity2a, RepeatedEntryIsSingular) {
  Rng rng(3);
  const QMatrix f = rng.int_matrix(2, 2, 5);
  const QMatrix f2 = rng.int_matrix(2, 2, 5);
  EXPECT_THROW(check_identity_2a(LegFamily::from_table({{f, f2}, {f, f2}})), Singular);
  EXPECT_THROW(check_identity_2b(LegFamily::from_table({{f, f2}, {f, f2}}), 1), Singular);
}

TEST(Identity2a, RandomFamilies) {
  Rng rng(91);
  for (int n = 2; n <= 4; ++n) {
    const LegFamily fs = sample_leg_family(rng, n, n, 2, 5);
    const CheckReport rep = check_identity_2a(fs);
    EXPECT_TRUE(rep.passed()) << rep.first_witness();
    for (int a = 1; a <= std::max(1, n - 2); ++a) EXPECT_TRUE(check_identity_2b(fs, a).passed());
  }
}

TEST(Identity2b, RejectsInadmissibleLeg) {
  Rng rng(4);
  const LegFamily fs = sample_leg_family(rng, 3, 3, 2, 5);
  EXPECT_THROW(check_identity_2b(fs, 2), std::invalid_argument);
  // a = n-1 is not one of the stated identities for n >= 3: the sum need not vanish.
}

TEST(MainId, RandomFamilies) {
  Rng rng(12);
  for (int n = 2; n <= 3; ++n) {
    const LegFamily fam = sample_word_family(rng, n + 1, n, 2, 5);
    const CheckReport rep = check_main_id(fam);
    EXPECT_TRUE(rep.passed()) << rep.first_witness();
    EXPECT_EQ(rep.count(), static_cast<std::size_t>((n + 1) * n / 2));
  }
}

TEST(Laplace, SmallCases) {
  Rng rng(6);
  for (int n = 1; n <= 3; ++n) {
    const LegFamily fs = sample_leg_family(rng, n, n, 2, 5);
    EXPECT_TRUE(check_laplace_expansion(fs).passed());
  }
  // n = 2 by hand: [f,g] = g^(2) f^(1) − f^(2) g^(1).
  const LegFamily fs = sample_leg_family(rng, 2, 2, 2, 5);
  const QMatrix expect = leg_embed(fs.entry(1, 2), 2, 2).mat * leg_embed(fs.entry(0, 1), 1, 2).mat -
                         leg_embed(fs.entry(0, 2), 2, 2).mat * leg_embed(fs.entry(1, 1), 1, 2).mat;
  const std::vector<int> rows = {0, 1}, legs = {1, 2};
  EXPECT_EQ(delta(fs, rows, legs).mat, expect);
}

TEST(Laplace, OppositeSignGivesNegative) {
  // The alternative sign (−1)^{j+n+1} reproduces −[f_1..f_n], never [f_1..f_n].
  Rng rng(10);
  const int n = 3;
  const LegFamily fs = sample_leg_family(rng, n, n, 2, 5);
  TensorElem alt = TensorElem::zero(n, 2);
  const std::vector<int> short_legs = {1, 2};
  for (int j = 1; j <= n; ++j) {
    std::vector<int> rows;
    for (int k = 0; k < n; ++k)
      if (k != j - 1) rows.push_back(k);
    const TensorElem term = leg_embed(fs.entry(j - 1, n), n, n) * delta(fs, rows, short_legs);
    alt = ((j + n + 1) % 2 == 0) ? alt + term : alt - term;
  }
  const std::vector<int> all = {0, 1, 2}, legs = {1, 2, 3};
  EXPECT_EQ(alt.mat, QMatrix(-delta(fs, all, legs).mat));
}
