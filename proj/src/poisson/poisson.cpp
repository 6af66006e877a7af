#include "commfam/poisson/poisson.hpp"

#include <algorithm>
#include <numeric>

namespace commfam {

namespace {

void require_two_vars(const RatFunc& f, const char* who) {
  if (f.nvars() > 2) throw std::invalid_argument(std::string(who) + ": expected a function of (x, xi)");
}

RatFunc lift(const RatFunc& f, std::size_t nv) { return f.nvars() == 0 ? RatFunc(f.with_nvars(nv)) : f; }

}  // namespace

PoissonElem::PoissonElem(int n_, RatFunc v) : n(n_), value(std::move(v)) {
  if (n < 1) throw std::invalid_argument("PoissonElem: n must be >= 1");
  const std::size_t nv = 2 * static_cast<std::size_t>(n);
  if (value.nvars() != 0 && value.nvars() != nv)
    throw std::invalid_argument("PoissonElem: expected " + std::to_string(nv) + " variables");
  value = lift(value, nv);
}

std::vector<std::string> symplectic_names(int n) {
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) {
    names.push_back("x" + std::to_string(j));
    names.push_back("xi" + std::to_string(j));
  }
  return names;
}

MPoly poly_poisson_bracket(const MPoly& f, const MPoly& g, int n) {
  MPoly acc(2 * static_cast<std::size_t>(n));
  if (f.is_constant() || g.is_constant()) return acc;
  for (int j = 1; j <= n; ++j) {
    const MPoly fx = f.derivative(x_var(j)), fxi = f.derivative(xi_var(j));
    if (fx.is_zero() && fxi.is_zero()) continue;
    const MPoly gx = g.derivative(x_var(j)), gxi = g.derivative(xi_var(j));
    if (!fx.is_zero() && !gxi.is_zero()) acc += fx * gxi;
    if (!fxi.is_zero() && !gx.is_zero()) acc -= fxi * gx;
  }
  return acc;
}

PoissonElem poisson_bracket(const PoissonElem& f, const PoissonElem& g) {
  if (f.n != g.n) throw std::invalid_argument("poisson_bracket: different symplectic dimensions");
  const int n = f.n;
  const std::size_t nv = 2 * static_cast<std::size_t>(n);
  const MPoly a = f.value.num().with_nvars(nv), b = g.value.num().with_nvars(nv);
  const auto fd = f.value.den_factors(), gd = g.value.den_factors();
  if (fd.empty() && gd.empty()) return {n, RatFunc(poly_poisson_bracket(a, b, n))};

  // Quotient rule on the polynomial parts: with f = a/c and g = b/e,
  // {f,g} = ({a,b}ce − a{c,b}e − b{a,e}c + ab{c,e}) / (c²e²).
  const MPoly c = f.value.den().with_nvars(nv), e = g.value.den().with_nvars(nv);
  bool same = fd.size() == gd.size();
  for (std::size_t k = 0; same && k < fd.size(); ++k) same = fd[k].exp == gd[k].exp && fd[k].base == gd[k].base;
  std::vector<DenFactor> den;
  MPoly num(nv);
  if (same) {
    // c = e: the {c,c} term drops and one power of c cancels.
    num = poly_poisson_bracket(a, b, n) * c - a * poly_poisson_bracket(c, b, n) - b * poly_poisson_bracket(a, c, n);
    for (const auto& fk : fd) den.push_back({fk.base, 3 * fk.exp});
  } else {
    num = poly_poisson_bracket(a, b, n) * c * e - a * poly_poisson_bracket(c, b, n) * e -
          b * poly_poisson_bracket(a, e, n) * c + a * b * poly_poisson_bracket(c, e, n);
    for (const auto& fk : fd) den.push_back({fk.base, 2 * fk.exp});
    for (const auto& gk : gd) den.push_back({gk.base, 2 * gk.exp});
  }
  return {n, RatFunc::from_factors(std::move(num), den)};
}

RatFunc on_leg(const RatFunc& f, int leg, int n) {
  require_two_vars(f, "on_leg");
  if (leg < 1 || leg > n) throw std::out_of_range("on_leg: leg out of range");
  const std::size_t map[2] = {x_var(leg), xi_var(leg)};
  const std::size_t nv = 2 * static_cast<std::size_t>(n);
  return f.with_nvars(2).remap(nv, map);
}

bool linearly_independent(std::span<const RatFunc> fs) {
  if (fs.empty()) return true;
  // Clear a common denominator, then rank the coefficient matrix.
  MPoly common(Rat(1), 2);
  for (const auto& f : fs) common *= f.with_nvars(2).den();
  std::vector<MPoly> polys;
  for (const auto& f : fs) {
    const RatFunc g = f.with_nvars(2);
    polys.push_back(g.num() * *divide_exact(common, g.den()));
  }
  std::map<Monomial, Eigen::Index> columns;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) columns.emplace(t.exps, 0);
  Eigen::Index c = 0;
  for (auto& [m, idx] : columns) idx = c++;
  QMatrix coef = QMatrix::Zero(static_cast<Eigen::Index>(polys.size()), c);
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& t : polys[r].terms()) coef(static_cast<Eigen::Index>(r), columns.at(t.exps)) = t.coef;
  return rank(coef) == polys.size();
}

ClassicalFamily classical_hamiltonians(std::span<const RatFunc> fs) {
  if (fs.size() < 2) throw std::invalid_argument("classical_hamiltonians: need f_0..f_n with n >= 1");
  for (const auto& f : fs) require_two_vars(f, "classical_hamiltonians");
  if (!linearly_independent(fs)) throw DependentFamily("classical_hamiltonians: f_0..f_n are linearly dependent");
  const int n = static_cast<int>(fs.size()) - 1;

  std::vector<std::vector<RatFunc>> placed(fs.size());
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (int j = 1; j <= n; ++j) placed[a].push_back(on_leg(fs[a], j, n));

  auto delta = [&](int omit) {
    RMatrix m(n, n);
    for (int r = 0, a = 0; a <= n; ++a) {
      if (a == omit) continue;
      for (int j = 0; j < n; ++j) m(r, j) = placed[a][j];
      ++r;
    }
    return PoissonElem(n, determinant_expansion(m));
  };

  ClassicalFamily out;
  out.delta0 = delta(0);
  if (out.delta0.value.is_zero()) throw ZeroDelta0("classical_hamiltonians: Delta_0 vanishes identically");
  for (int i = 1; i <= n; ++i) {
    out.deltas.push_back(delta(i));
    out.h.emplace_back(n, out.deltas.back().value / out.delta0.value);
  }
  return out;
}

CheckReport check_poisson_commute(std::span<const PoissonElem> hs) {
  CheckReport rep("poisson-commute");
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const PoissonElem b = poisson_bracket(hs[i], hs[j]);
      rep.record(b.value.is_zero(), "{H" + std::to_string(i + 1) + ",H" + std::to_string(j + 1) + "}",
                 b.value.str(symplectic_names(b.n)));
    }
  return rep;
}

WedgeForm::WedgeForm(int arity, int dim) : arity_(arity), dim_(dim) {
  if (arity < 1 || dim < arity) throw std::invalid_argument("WedgeForm: need 1 <= arity <= dim");
}

void WedgeForm::set(const std::vector<int>& tuple, const Rat& c) {
  if (static_cast<int>(tuple.size()) != arity_ || !std::is_sorted(tuple.begin(), tuple.end()) ||
      std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end() || tuple.front() < 0 || tuple.back() >= dim_)
    throw std::invalid_argument("WedgeForm::set: tuple must be strictly increasing indices");
  if (c.is_zero()) {
    coef_.erase(tuple);
  } else {
    coef_[tuple] = c;
  }
}

namespace {

// Calls fn on every increasing k-subset of {0..m-1}.
template <class Fn>
void for_each_subset(int k, int m, Fn&& fn) {
  std::vector<int> t(static_cast<std::size_t>(k));
  std::iota(t.begin(), t.end(), 0);
  for (;;) {
    fn(t);
    int p = k - 1;
    while (p >= 0 && t[p] == m - k + p) --p;
    if (p < 0) return;
    ++t[p];
    for (int q = p + 1; q < k; ++q) t[q] = t[q - 1] + 1;
  }
}

}  // namespace

WedgeForm WedgeForm::from_covectors(const std::vector<std::vector<Rat>>& covectors) {
  if (covectors.empty()) throw std::invalid_argument("WedgeForm::from_covectors: no covectors");
  const int k = static_cast<int>(covectors.size());
  const int m = static_cast<int>(covectors.front().size());
  WedgeForm w(k, m);
  for_each_subset(k, m, [&](const std::vector<int>& t) {
    QMatrix minor(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) minor(a, b) = covectors[a].at(t[b]);
    w.set(t, determinant(minor));
  });
  return w;
}

Rat WedgeForm::evaluate(std::span<const std::vector<Rat>> vectors) const {
  if (static_cast<int>(vectors.size()) != arity_) throw std::invalid_argument("WedgeForm::evaluate: wrong vector count");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("WedgeForm::evaluate: wrong dimension");
  Rat acc(0);
  QMatrix minor(arity_, arity_);
  for (const auto& [t, c] : coef_) {
    for (int a = 0; a < arity_; ++a)
      for (int b = 0; b < arity_; ++b) minor(a, b) = vectors[b][t[a]];
    acc += c * determinant(minor);
  }
  return acc;
}

Rat grassmann_residual(const WedgeForm& form, std::span<const std::vector<Rat>> v) {
  auto L = [&](std::initializer_list<int> idx) {
    std::vector<std::vector<Rat>> args;
    for (int i : idx) args.push_back(v[static_cast<std::size_t>(i)]);
    return form.evaluate(args);
  };
  switch (form.arity()) {
    case 2: {
      if (v.size() != 4) throw std::invalid_argument("grassmann: arity 2 needs 4 vectors");
      enum { a, b, c, d };
      return L({a, b}) * L({c, d}) - L({a, c}) * L({b, d}) + L({a, d}) * L({b, c});
    }
    case 3: {
      if (v.size() != 5) throw std::invalid_argument("grassmann: arity 3 needs 5 vectors");
      enum { a, b, c, bp, cp };
      return L({b, c, cp}) * L({a, c, bp}) * L({b, bp, cp}) + L({b, c, bp}) * L({c, bp, cp}) * L({a, b, cp}) -
             L({b, c, bp}) * L({a, c, cp}) * L({b, bp, cp}) - L({b, c, cp}) * L({c, bp, cp}) * L({a, b, bp});
    }
    case 4: {
      if (v.size() != 6) throw std::invalid_argument("grassmann: arity 4 needs 6 vectors");
      enum { a, b, c, ap, bp, cp };
      return L({b, c, bp, cp}) * L({a, c, ap, cp}) * L({a, b, ap, bp}) +
             L({b, c, ap, cp}) * L({a, c, ap, bp}) * L({a, b, bp, cp}) +
             L({b, c, ap, bp}) * L({a, c, bp, cp}) * L({a, b, ap, cp}) -
             L({b, c, bp, cp}) * L({a, c, ap, bp}) * L({a, b, ap, cp}) -
             L({b, c, ap, bp}) * L({a, c, ap, cp}) * L({a, b, bp, cp}) -
             L({b, c, ap, cp}) * L({a, c, bp, cp}) * L({a, b, ap, bp});
    }
    default:
      throw std::invalid_argument("grassmann: arity must be 2, 3 or 4");
  }
}

CheckReport check_grassmann(const WedgeForm& form, std::span<const std::vector<Rat>> vectors) {
  CheckReport rep("grassmann");
  const Rat r = grassmann_residual(form, vectors);
  rep.record(r.is_zero(), "arity " + std::to_string(form.arity()), r.str());
  return rep;
}

std::vector<Rat> hyperplane_coefficients(const std::vector<std::vector<Rat>>& points) {
  const int g = static_cast<int>(points.size());
  if (g == 0) throw std::invalid_argument("hyperplane_coefficients: no points");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != g)
      throw std::invalid_argument("hyperplane_coefficients: need g points in affine g-space");
  // Row 0 is the constant function 1, row i the coordinate x_i.
  auto minor = [&](int omit) {
    QMatrix m(g, g);
    for (int r = 0, a = 0; a <= g; ++a) {
      if (a == omit) continue;
      for (int j = 0; j < g; ++j) m(r, j) = a == 0 ? Rat(1) : points[j][a - 1];
      ++r;
    }
    return determinant(m);
  };
  const Rat d0 = minor(0);
  if (d0.is_zero()) throw ZeroDelta0("hyperplane_coefficients: points do not span a hyperplane avoiding the origin");
  std::vector<Rat> hs;
  for (int i = 1; i <= g; ++i) hs.push_back(minor(i) / d0);
  return hs;
}

CheckReport check_hyperplane_incidence(const std::vector<std::vector<Rat>>& points, std::span<const Rat> hs) {
  CheckReport rep("hyperplane-incidence");
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != hs.size()) throw std::invalid_argument("check_hyperplane_incidence: dimension mismatch");
    Rat acc(1);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Rat t = hs[i] * points[j][i];
      acc = (i % 2 == 0) ? acc - t : acc + t;  // (−1)^{i+1} with 1-based i
    }
    rep.record(acc.is_zero(), "P" + std::to_string(j + 1), acc.str());
  }
  return rep;
}

ConeDifferential nabla(const ConeDifferential& alpha, const ConeDifferential& omega) {
  if (alpha.weight != 1) throw std::invalid_argument("nabla: alpha must be a 1-differential");
  if (alpha.f.is_zero()) throw ZeroAlpha("nabla: alpha is zero");
  const RatFunc a = alpha.f.with_nvars(1), f = omega.f.with_nvars(1);
  const int i = omega.weight;
  const RatFunc ai = i >= 0 ? a.pow(static_cast<unsigned>(i)) : a.inverse().pow(static_cast<unsigned>(-i));
  return {ai * partial_derivative(f / ai, 0), i + 1};
}

ConeDifferential cone_bracket(const ConeDifferential& omega, const ConeDifferential& omega2,
                              const ConeDifferential& alpha) {
  const ConeDifferential d1 = nabla(alpha, omega2);
  const ConeDifferential d0 = nabla(alpha, omega);
  RatFunc value = RatFunc(Rat(omega.weight)) * omega.f * d1.f - RatFunc(Rat(omega2.weight)) * omega2.f * d0.f;
  return {value.with_nvars(1), omega.weight + omega2.weight + 1};
}

PoissonElem cone_to_poisson(const ConeDifferential& omega) {
  const std::size_t map[1] = {0};
  RatFunc f = omega.f.with_nvars(1).remap(2, map);
  const RatFunc xi = RatFunc::variable(1, 2);
  const int i = omega.weight;
  RatFunc scale = i >= 0 ? xi.pow(static_cast<unsigned>(i)).inverse() : xi.pow(static_cast<unsigned>(-i));
  return {1, f * scale};
}

bool cone_equal(const ConeDifferential& a, const ConeDifferential& b) {
  if (a.f.is_zero() && b.f.is_zero()) return true;
  return a.weight == b.weight && a.f == b.f;
}

}  // namespace commfam
