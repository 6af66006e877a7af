#include "commfam/quantize/quantize.hpp"
#include "commfam/weyl/weyl.hpp"

#include <gtest/gtest.h>

using namespace commfam;

namespace {

PoissonElem pe(std::string_view s, int n = 1) {
  return {n, RatFunc::parse(s, 2 * static_cast<std::size_t>(n), symplectic_names(n))};
}

DualNum dn(std::string_view body, std::string_view soul = "0") { return {pe(body), pe(soul)}; }

RatFunc z1(std::string_view s) { return RatFunc::parse(s, 1, std::vector<std::string>{"z"}); }

HElem fn(std::string_view s, int M) { return HElem::function(z1(s), M); }

DualNum random_dual(Rng& rng, int n) {
  const std::size_t nv = 2 * static_cast<std::size_t>(n);
  return {PoissonElem(n, rng.poly(nv, 2, 3)), PoissonElem(n, rng.poly(nv, 1, 3))};
}

// ℏ specialized to a number: an A_ℏ element becomes an ordinary operator.
RatDiffOp specialize(const HElem& a, const Rat& h) {
  RatDiffOp op(1);
  for (const auto& [key, c] : a.terms()) op.add_term({static_cast<Exponent>(key.first)}, RatFunc(h.pow(key.second)) * c);
  return op;
}

}  // namespace

TEST(Dual, CanonicalPair) {
  const DualNum x = dn("x1"), xi = dn("xi1");
  EXPECT_TRUE(dual_equal(dual_mul(x, xi), dn("x1*xi1", "1")));
  EXPECT_TRUE(dual_equal(dual_mul(xi, x), dn("x1*xi1", "-1")));
}

TEST(Dual, UnitAndAssociativity) {
  Rng rng(1);
  const DualNum one = dn("1");
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    const DualNum a = random_dual(rng, n), b = random_dual(rng, n), c = random_dual(rng, n);
    const DualNum one_n{PoissonElem(n, RatFunc(MPoly(Rat(1), 2 * static_cast<std::size_t>(n))))};
    EXPECT_TRUE(dual_equal(dual_mul(a, one_n), a));
    EXPECT_TRUE(dual_equal(dual_mul(one_n, a), a));
    EXPECT_TRUE(dual_equal(dual_mul(dual_mul(a, b), c), dual_mul(a, dual_mul(b, c)))) << "trial " << t;
  }
  EXPECT_TRUE(dual_equal(dual_mul(dn("x1"), one), dn("x1")));
}

TEST(Dual, Inverse) {
  EXPECT_TRUE(dual_equal(dual_inverse(dn("x1")), dn("(1)/(x1)")));
  const DualNum a = dn("x1", "xi1");
  const DualNum inv = dual_inverse(a);
  EXPECT_TRUE(dual_equal(inv, dn("(1)/(x1)", "(-xi1)/(x1^2)")));
  EXPECT_TRUE(dual_equal(dual_mul(a, inv), dn("1")));
  EXPECT_TRUE(dual_equal(dual_mul(inv, a), dn("1")));
  EXPECT_THROW(dual_inverse(dn("0", "xi1")), ZeroBody);

  Rng rng(2);
  for (int t = 0; t < 5; ++t) {
    DualNum b = random_dual(rng, 2);
    if (b.body.value.is_zero()) continue;
    const DualNum one{PoissonElem(2, RatFunc(MPoly(Rat(1), 4)))};
    EXPECT_TRUE(dual_equal(dual_mul(b, dual_inverse(b)), one));
    EXPECT_TRUE(dual_equal(dual_mul(dual_inverse(b), b), one));
  }
}

TEST(Dual, CommutatorSoulIsTwiceBracket) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    const std::size_t nv = 2 * static_cast<std::size_t>(n);
    const DualNum a{PoissonElem(n, rng.poly(nv, 2, 3))}, b{PoissonElem(n, rng.poly(nv, 2, 3))};
    const DualNum c = dual_commutator(a, b);
    EXPECT_TRUE(c.body.value.is_zero());
    EXPECT_EQ(c.soul.value, RatFunc(2) * poisson_bracket(a.body, b.body).value);
  }
}

TEST(DualFamily, SingleHamiltonian) {
  const std::vector<RatFunc> fs = {pe("1").value, pe("x1^2 + xi1").value};
  const auto rep = dual_commuting_family(fs);
  EXPECT_TRUE(rep.passed()) << rep.first_witness();
  EXPECT_EQ(rep.count(), 1u);
}

TEST(DualFamily, LinearFamily) {
  const std::vector<RatFunc> fs = {pe("1").value, pe("x1").value, pe("xi1").value};
  const auto rep = dual_commuting_family(fs);
  EXPECT_TRUE(rep.passed()) << rep.first_witness();
  EXPECT_EQ(rep.count(), 2u + 3u);
}

TEST(DualFamily, RandomQuadraticFamilies) {
  for (int n = 2; n <= 3; ++n)
    for (std::uint64_t seed = 1; seed <= (n == 2 ? 3u : 1u); ++seed) {
      Rng rng(seed, n);
      std::vector<RatFunc> fs;
      for (int a = 0; a <= n; ++a) fs.emplace_back(rng.nonzero_poly(2, 2, 3));
      const auto rep = dual_commuting_family(fs);
      EXPECT_TRUE(rep.passed()) << "n=" << n << " seed=" << seed << ": " << rep.first_witness();
    }
}

TEST(DualFamily, DependentFamilyRejected) {
  const std::vector<RatFunc> fs = {pe("x1").value, pe("2*x1").value, pe("xi1").value};
  EXPECT_THROW(dual_commuting_family(fs), DependentFamily);
}

TEST(HElem, CanonicalCommutation) {
  const int M = 4;
  const HElem z = fn("z", M), D = HElem::D(M), hbar = HElem::hbar(M);
  EXPECT_EQ(h_commutator(z, D), -(hbar));
  EXPECT_EQ(D * z, z * D + hbar);
  EXPECT_EQ(h_commutator(D, D), HElem(M));
}

TEST(HElem, TruncationDropsHighOrder) {
  const HElem hbar = HElem::hbar(2);
  EXPECT_FALSE((hbar).is_zero());
  EXPECT_TRUE((hbar * hbar).is_zero());
  EXPECT_FALSE((HElem::D(2) * HElem::D(2)).is_zero());  // D² has ℏ-order 0
  EXPECT_THROW(HElem(2) + HElem(3), TruncationMismatch);
  HElem bad(3);
  EXPECT_THROW(bad.add_term(2, 1, RatFunc(1)), std::invalid_argument);
}

TEST(HElem, ProductMatchesOperatorComposition) {
  Rng rng(4);
  const int M = 30;  // large enough that nothing truncates
  for (int t = 0; t < 8; ++t) {
    const HElem a = random_helem(rng, 4, 2, 2, 3), b = random_helem(rng, 4, 2, 2, 3);
    HElem A(M), B(M);
    for (const auto& [key, c] : a.terms()) A.add_term(key.first, key.second, c);
    for (const auto& [key, c] : b.terms()) B.add_term(key.first, key.second, c);
    const Rat h(2, 3);
    EXPECT_EQ(specialize(A * B, h), do_compose(specialize(A, h), specialize(B, h))) << "trial " << t;
  }
}

TEST(HElem, DegenerationToPoissonBracket) {
  Rng rng(5);
  const auto rep = check_degeneration(rng, 4, 10);
  EXPECT_TRUE(rep.passed()) << rep.first_witness();
  EXPECT_EQ(rep.count(), 20u);
  // [z, D] = −ℏ against {x, ξ} = 1
  const HElem c = h_commutator(fn("z", 3), HElem::D(3));
  EXPECT_EQ(c.classical(1), RatFunc(MPoly(Rat(-1), 2)));
}

TEST(HElem, NeumannInverse) {
  const int M = 5;
  Rng rng(6);
  const HElem f = fn("z^2 + 1", M) + HElem::hbar(M) * random_helem(rng, M, 1, 1, 2);
  const HElem inv = neumann_inverse(f);
  HElem one(M);
  one.add_term(0, 0, RatFunc(1));
  EXPECT_EQ(f * inv, one);
  EXPECT_EQ(inv * f, one);
  EXPECT_THROW(neumann_inverse(HElem::D(M)), std::domain_error);
}

TEST(Localization, CommutingCoefficientCollapses) {
  const int M = 4;
  const HElem f = fn("z^2 + 1", M);
  const HElem a = fn("z - 3", M), b = fn("(1)/(z+2)", M);
  LocalSeries u(f), v(f), expected(f);
  u.add_term(2, a);
  v.add_term(1, b);
  expected.add_term(3, a * b);
  EXPECT_EQ(localize_product(u, v), expected);
}

TEST(Localization, XDIdentity) {
  for (int M = 2; M <= 6; ++M) {
    const auto rep = check_xd_identity(M);
    EXPECT_TRUE(rep.passed()) << "M=" << M << ": " << rep.first_witness();
  }
}

TEST(Localization, Axioms) {
  Rng rng(7);
  for (int M : {3, 4, 5}) {
    for (const char* f : {"z", "z^2 + 1"}) {
      const auto rep = check_localization_axioms(fn(f, M), M, rng, 5);
      EXPECT_TRUE(rep.passed()) << "M=" << M << " f=" << f << ": " << rep.first_witness();
      EXPECT_EQ(rep.count(), 7u);
    }
  }
}

TEST(Localization, AxiomsWithHbarCorrectedLift) {
  Rng rng(8);
  const int M = 4;
  const HElem f = fn("z^2 + 1", M) + HElem::hbar(M) * HElem::D(M);
  const auto rep = check_localization_axioms(f, M, rng, 4);
  EXPECT_TRUE(rep.passed()) << rep.first_witness();
}

TEST(Localization, ZeroBodyRejected) {
  EXPECT_THROW(LocalSeries(HElem::hbar(3)), std::invalid_argument);
  Rng rng(9);
  EXPECT_THROW(check_localization_axioms(HElem(3), 3, rng), std::invalid_argument);
}

TEST(Localization, MismatchedOperands) {
  const LocalSeries u = LocalSeries::x_power(1, fn("z", 3));
  EXPECT_THROW(localize_product(u, LocalSeries::x_power(1, fn("z", 4))), TruncationMismatch);
  EXPECT_THROW(localize_product(u, LocalSeries::x_power(1, fn("z+1", 3))), TruncationMismatch);
}

TEST(Localization, ImageUnderInverseIsMultiplicative) {
  Rng rng(10);
  const int M = 4;
  for (const char* fs : {"z", "z^2 + 1"}) {
    const HElem f = fn(fs, M);
    for (int t = 0; t < 4; ++t) {
      const LocalSeries u = random_series(rng, f, 2), v = random_series(rng, f, 2);
      EXPECT_EQ(realize(localize_product(u, v)), realize(u) * realize(v)) << fs << " trial " << t;
    }
  }
}

TEST(Localization, LiftIndependence) {
  Rng rng(11);
  const int M = 4;
  const HElem f = fn("z^2 + 1", M);
  const HElem g = random_helem(rng, M, 1, 1, 2);
  const auto rep = check_lift_independence(f, g, rng, 3);
  EXPECT_TRUE(rep.passed()) << rep.first_witness();
}
