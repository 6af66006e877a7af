#include "commfam/exact/matrix.hpp"
#include "commfam/exact/random.hpp"

#include <gtest/gtest.h>

using namespace commfam;

namespace {

// Independent oracle: cofactor expansion along the first row.
Rat laplace_det(const QMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return Rat(1);
  if (n == 1) return m(0, 0);
  Rat acc(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    QMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rat t = m(0, j) * laplace_det(minor);
    acc = (j % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

const std::vector<std::string> kXY = {"x", "y"};

RatFunc rf(std::string_view s) { return RatFunc::parse(s, 2, kXY); }

}  // namespace

TEST(Rat, NormalizesSignAndLowestTerms) {
  const Rat r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rat(0, 7).den(), 1);
  EXPECT_EQ(Rat::parse("-10/4"), Rat(-5, 2));
  EXPECT_THROW(Rat(1, 0), std::domain_error);
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
  EXPECT_THROW(Rat::parse("1/x"), std::invalid_argument);
}

TEST(Rat, BinomialHandlesNegativeTop) {
  EXPECT_EQ(binomial(5, 2), Rat(10));
  EXPECT_EQ(binomial(-1, 3), Rat(-1));
  EXPECT_EQ(binomial(-3, 2), Rat(6));  // (-1)^2 C(4,2)
  EXPECT_EQ(binomial(2, 5), Rat(0));
}

TEST(Rat, FieldAxiomsOnRandomTriples) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Rat a = rng.rat(50, 30), b = rng.rat(50, 30), c = rng.rat(50, 30);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Rat(1));
  }
}

TEST(MPoly, ParsePrintRoundTrip) {
  const MPoly p = MPoly::parse("3/2*x^2*y - y + 7", 2, kXY);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(MPoly::parse(p.str(kXY), 2, kXY), p);
  EXPECT_EQ(p.leading_coef(), Rat(3, 2));
  EXPECT_THROW(MPoly::parse("x +* y", 2, kXY), std::invalid_argument);
}

TEST(MPoly, GrlexOrderPutsHigherDegreeFirst) {
  EXPECT_LT(grlex_compare({1, 1}, {2, 0}), 0);
  EXPECT_GT(grlex_compare({2, 0}, {1, 1}), 0);
  EXPECT_GT(grlex_compare({0, 3}, {2, 0}), 0);
}

TEST(MPoly, DivideExact) {
  const MPoly a = MPoly::parse("x^2 - y^2", 2, kXY);
  const MPoly b = MPoly::parse("x - y", 2, kXY);
  const auto q = divide_exact(a, b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, MPoly::parse("x + y", 2, kXY));
  EXPECT_FALSE(divide_exact(a, MPoly::parse("x + 2*y", 2, kXY)).has_value());
}

TEST(RatFunc, EqualityExamples) {
  EXPECT_TRUE(ratfunc_equal(rf("x"), rf("(x^2)/(x)")));
  EXPECT_FALSE(ratfunc_equal(rf("(x+y)/(y)"), rf("(x)/(y)")));
  EXPECT_TRUE(ratfunc_equal(rf("(x^2-1)/(x-1)"), rf("x+1")));
}

TEST(RatFunc, EqualityWithoutCancellation) {
  // Same value, unrelated unreduced representations.
  const MPoly num = MPoly::parse("x^2 + x*y", 2, kXY);
  const MPoly den = MPoly::parse("x*y + y^2", 2, kXY);
  EXPECT_TRUE(ratfunc_equal(RatFunc(num, den), rf("(x)/(y)")));
}

TEST(RatFunc, DenominatorHasPositiveLeadingCoefficient) {
  const RatFunc r = rf("(1)/(-2*x + 4)");
  EXPECT_GT(r.den().leading_coef(), Rat(0));
  EXPECT_TRUE(ratfunc_equal(r, rf("(-1/2)/(x - 2)")));
}

TEST(RatFunc, DerivativeExamples) {
  EXPECT_EQ(partial_derivative(rf("x^2*y"), 0), rf("2*x*y"));
  EXPECT_EQ(partial_derivative(rf("(1)/(x)"), 0), rf("(-1)/(x^2)"));
  EXPECT_EQ(partial_derivative(rf("(x+y)/(x-y)"), 0), rf("(-2*y)/((x-y)^2)"));
  EXPECT_EQ(partial_derivative(rf("(x+y)/(x-y)"), 1), rf("(2*x)/((x-y)^2)"));
  EXPECT_THROW(partial_derivative(rf("x"), 2), std::out_of_range);
}

TEST(RatFunc, EvaluateRejectsPole) {
  const RatFunc r = rf("(x)/(x-y)");
  const std::vector<Rat> pt = {Rat(3), Rat(1)};
  EXPECT_EQ(r.evaluate(pt), Rat(3, 2));
  const std::vector<Rat> pole = {Rat(2), Rat(2)};
  EXPECT_THROW(r.evaluate(pole), std::domain_error);
}

TEST(RatFunc, FieldAxiomsOnRandomTriples) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const RatFunc a = rng.ratfunc(2, 2, 3), b = rng.ratfunc(2, 2, 3), c = rng.ratfunc(2, 1, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, RatFunc(0));
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), RatFunc(1));
      EXPECT_EQ((b / a) * a, b);
    }
  }
}

TEST(RatFunc, LeibnizRuleOnRandomPairs) {
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    const RatFunc f = rng.ratfunc(2, 2, 4), g = rng.ratfunc(2, 2, 4);
    for (std::size_t v = 0; v < 2; ++v)
      EXPECT_TRUE(ratfunc_equal(partial_derivative(f * g, v),
                                partial_derivative(f, v) * g + f * partial_derivative(g, v)));
  }
}

TEST(RatFunc, DerivativeAgreesWithDifferenceQuotientOracle) {
  // d/dx of (x+y)/(x-y)^2 at (3,1): exact from the closed form -(x+3y)/(x-y)^3.
  const RatFunc f = rf("(x+y)/((x-y)^2)");
  const RatFunc df = partial_derivative(f, 0);
  const std::vector<Rat> pt = {Rat(3), Rat(1)};
  EXPECT_EQ(df.evaluate(pt), Rat(-6, 8));
}

TEST(Matrix, InverseExamples) {
  const QMatrix id = QMatrix::Identity(4, 4);
  EXPECT_EQ(mat_inverse(id), id);
  QMatrix u(2, 2);
  u << Rat(1), Rat(1), Rat(0), Rat(1);
  QMatrix expect(2, 2);
  expect << Rat(1), Rat(-1), Rat(0), Rat(1);
  EXPECT_EQ(mat_inverse(u), expect);
}

TEST(Matrix, RandomInverseMatchesDeterminantOracle) {
  Rng rng(2024);
  int singular_seen = 0;
  for (int t = 0; t < 30; ++t) {
    // Small bound makes singular draws common enough to exercise both branches.
    const Eigen::Index n = t < 10 ? 8 : 3;
    const QMatrix m = t < 10 ? rng.rat_matrix(n, n, 9, 4) : rng.int_matrix(n, n, 1);
    const Rat det = laplace_det(m);
    EXPECT_EQ(determinant(m), det);
    if (det.is_zero()) {
      ++singular_seen;
      EXPECT_THROW(mat_inverse(m), Singular);
      continue;
    }
    const QMatrix inv = mat_inverse(m);
    EXPECT_TRUE(is_zero(QMatrix(m * inv - QMatrix::Identity(n, n))));
    EXPECT_TRUE(is_zero(QMatrix(inv * m - QMatrix::Identity(n, n))));
  }
  EXPECT_GT(singular_seen, 0);
}

TEST(Matrix, IntegerKernelProductMatchesEntrywiseProduct) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 1 + t % 5, k = 1 + (t * 3) % 4, m = 1 + (t * 7) % 6;
    QMatrix a = rng.rat_matrix(n, k, 50, 12), b = rng.rat_matrix(k, m, 50, 12);
    if (t % 2 == 0) a(0, 0) = Rat(0);
    const QMatrix c = rat_product(a, b);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        Rat acc(0);
        for (Eigen::Index l = 0; l < k; ++l) acc += a(i, l) * b(l, j);
        EXPECT_EQ(c(i, j), acc);
      }
  }
  EXPECT_THROW(rat_product(QMatrix(2, 3), QMatrix(2, 3)), std::invalid_argument);
}

TEST(Matrix, RankAndExpansionDeterminant) {
  QMatrix m(3, 3);
  m << Rat(1), Rat(2), Rat(3), Rat(2), Rat(4), Rat(6), Rat(0), Rat(1), Rat(1);
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(determinant_expansion(m), Rat(0));
  Rng rng(3);
  const QMatrix r = rng.rat_matrix(5, 5, 7, 3);
  EXPECT_EQ(determinant_expansion(r), laplace_det(r));
}

TEST(Matrix, RatFuncInverse) {
  RMatrix m(2, 2);
  m << rf("x"), rf("y"), rf("1"), rf("x+y");
  const RMatrix inv = mat_inverse(m);
  EXPECT_TRUE(is_zero(RMatrix(m * inv - RMatrix::Identity(2, 2))));
  EXPECT_EQ(determinant(m), rf("x^2 + x*y - y"));
  EXPECT_EQ(first_nonzero(RMatrix(m - m)), "");
}

TEST(Matrix, SingularRatFuncMatrixThrows) {
  RMatrix m(2, 2);
  m << rf("x"), rf("x*y"), rf("1"), rf("y");
  EXPECT_THROW(mat_inverse(m), Singular);
}
