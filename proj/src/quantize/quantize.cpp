#include "commfam/quantize/quantize.hpp"

#include "commfam/exact/matrix.hpp"

#include <algorithm>

namespace commfam {

// ---------------------------------------------------------------------------
// Dual numbers

namespace {

PoissonElem pe_mul(const PoissonElem& a, const PoissonElem& b) { return {a.n, a.value * b.value}; }
PoissonElem pe_add(const PoissonElem& a, const PoissonElem& b) { return {a.n, a.value + b.value}; }
PoissonElem pe_sub(const PoissonElem& a, const PoissonElem& b) { return {a.n, a.value - b.value}; }

void require_same(const DualNum& a, const DualNum& b, const char* where) {
  if (a.n() != b.n()) throw std::invalid_argument(std::string(where) + ": variable sets differ");
}

}  // namespace

DualNum::DualNum(PoissonElem b, PoissonElem s) : body(std::move(b)), soul(std::move(s)) {
  if (soul.n != body.n) {
    if (!soul.value.is_zero()) throw std::invalid_argument("DualNum: body and soul over different variables");
    soul = PoissonElem(body.n, RatFunc(MPoly(2 * static_cast<std::size_t>(body.n))));
  }
}

DualNum dual_mul(const DualNum& a, const DualNum& b) {
  require_same(a, b, "dual_mul");
  PoissonElem soul = pe_add(pe_add(pe_mul(a.body, b.soul), pe_mul(a.soul, b.body)), poisson_bracket(a.body, b.body));
  return {pe_mul(a.body, b.body), std::move(soul)};
}

DualNum dual_add(const DualNum& a, const DualNum& b) {
  require_same(a, b, "dual_add");
  return {pe_add(a.body, b.body), pe_add(a.soul, b.soul)};
}

DualNum dual_sub(const DualNum& a, const DualNum& b) {
  require_same(a, b, "dual_sub");
  return {pe_sub(a.body, b.body), pe_sub(a.soul, b.soul)};
}

DualNum dual_inverse(const DualNum& a) {
  if (a.body.value.is_zero()) throw ZeroBody("dual_inverse: body is zero");
  const RatFunc inv = a.body.value.inverse();
  return {PoissonElem(a.n(), inv), PoissonElem(a.n(), -(a.soul.value * inv * inv))};
}

DualNum dual_commutator(const DualNum& a, const DualNum& b) { return dual_sub(dual_mul(a, b), dual_mul(b, a)); }

bool dual_equal(const DualNum& a, const DualNum& b) {
  return a.n() == b.n() && a.body.value == b.body.value && a.soul.value == b.soul.value;
}

CheckReport dual_commuting_family(std::span<const RatFunc> fs) {
  CheckReport rep("dual-commuting-family");
  const ClassicalFamily cl = classical_hamiltonians(fs);
  const int n = static_cast<int>(fs.size()) - 1;
  const auto names = symplectic_names(n);

  std::vector<std::vector<DualNum>> placed(fs.size());
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (int j = 1; j <= n; ++j) placed[a].emplace_back(PoissonElem(n, on_leg(fs[a], j, n)));

  const auto perms = signed_permutations(n);
  auto delta = [&](int omit) {
    std::vector<int> rows;
    for (int a = 0; a <= n; ++a)
      if (a != omit) rows.push_back(a);
    DualNum acc{PoissonElem(n, RatFunc(MPoly(2 * static_cast<std::size_t>(n))))};
    for (const auto& [sign, perm] : perms) {
      DualNum term{PoissonElem(n, RatFunc(MPoly(Rat(sign), 2 * static_cast<std::size_t>(n))))};
      for (int l = 0; l < n; ++l) term = dual_mul(term, placed[rows[perm[l]]][l]);
      acc = dual_add(acc, term);
    }
    return acc;
  };

  const DualNum inv0 = dual_inverse(delta(0));
  std::vector<DualNum> hs;
  for (int i = 1; i <= n; ++i) {
    hs.push_back(dual_mul(inv0, delta(i)));
    const RatFunc diff = hs.back().body.value - cl.h[i - 1].value;
    rep.record(diff.is_zero(), "body(H" + std::to_string(i) + ") = H" + std::to_string(i) + "^cl", diff.str(names));
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
      const DualNum c = dual_commutator(hs[i], hs[j]);
      rep.record(c.body.value.is_zero(), "body[H" + tag + "]", c.body.value.str(names));
      rep.record(c.soul.value.is_zero(), "soul[H" + tag + "]", c.soul.value.str(names));

      const DualNum li(cl.h[i]), lj(cl.h[j]);
      const RatFunc lifted_soul = dual_commutator(li, lj).soul.value;
      const RatFunc twice = RatFunc(2) * poisson_bracket(cl.h[i], cl.h[j]).value;
      const RatFunc diff = lifted_soul - twice;
      rep.record(diff.is_zero(), "soul[lift H" + tag + "] = 2{H^cl}", diff.str(names));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// A_ℏ

namespace {

void require_same_m(int a, int b, const char* where) {
  if (a != b)
    throw TruncationMismatch(std::string(where) + ": truncation orders differ (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
}

RatFunc in_z(const RatFunc& c) {
  if (c.nvars() > 1) throw std::invalid_argument("HElem: coefficients must be functions of z alone");
  return c.nvars() == 0 ? c.with_nvars(1) : c;
}

HElem with_truncation(const HElem& h, int M) {
  HElem out(M);
  for (const auto& [key, c] : h.terms()) out.add_term(key.first, key.second, c);
  return out;
}

}  // namespace

HElem::HElem(int M) : M_(M) {
  if (M < 1) throw std::invalid_argument("HElem: truncation order must be >= 1");
}

HElem HElem::function(const RatFunc& a, int M) {
  HElem h(M);
  h.add_term(0, 0, a);
  return h;
}

HElem HElem::D(int M) {
  HElem h(M);
  h.add_term(1, 1, RatFunc(1));
  return h;
}

HElem HElem::hbar(int M) {
  HElem h(M);
  h.add_term(0, 1, RatFunc(1));
  return h;
}

RatFunc HElem::coefficient(int k, int m) const {
  auto it = terms_.find({k, m});
  return it == terms_.end() ? RatFunc(MPoly(std::size_t{1})) : it->second;
}

int HElem::hbar_order() const {
  int best = M_;
  for (const auto& [key, c] : terms_) best = std::min(best, key.second - key.first);
  return best;
}

void HElem::add_term(int k, int m, const RatFunc& c) {
  if (k < 0 || m < k) throw std::invalid_argument("HElem: need 0 <= derivative order <= hbar power");
  if (m - k >= M_ || c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace({k, m}, in_z(c));
  if (fresh) return;
  it->second += in_z(c);
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc HElem::classical(int s) const {
  const std::size_t map[1] = {0};
  RatFunc acc{MPoly(std::size_t{2})};
  for (const auto& [key, c] : terms_) {
    if (key.second - key.first != s) continue;
    acc += c.remap(2, map) * RatFunc(MPoly::monomial({0, static_cast<Exponent>(key.first)}));
  }
  return acc;
}

HElem HElem::body() const {
  HElem out(M_);
  for (const auto& [key, c] : terms_)
    if (key.first == key.second) out.terms_.emplace(key, c);
  return out;
}

bool HElem::body_is_function() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.first == 0 || t.first.first != t.first.second; });
}

std::string HElem::str() const {
  std::string out;
  const std::vector<std::string> names = {"z"};
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "hbar^" + std::to_string(key.second) + "*(" + c.str(names) + ")*d^" + std::to_string(key.first);
  }
  return out.empty() ? "0" : out;
}

HElem& HElem::operator+=(const HElem& o) {
  require_same_m(M_, o.M_, "HElem +");
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

HElem& HElem::operator-=(const HElem& o) {
  require_same_m(M_, o.M_, "HElem -");
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

HElem operator-(const HElem& a) {
  HElem out(a.M_);
  for (const auto& [key, c] : a.terms_) out.terms_.emplace(key, -c);
  return out;
}

HElem operator*(const HElem& a, const HElem& b) {
  require_same_m(a.M_, b.M_, "HElem *");
  HElem out(a.M_);
  for (const auto& [kb, cb] : b.terms_) {
    std::vector<RatFunc> derivs{cb};
    for (const auto& [ka, ca] : a.terms_) {
      const auto [k, m] = ka;
      const auto [k2, m2] = kb;
      // ℏ^m a ∂^k · ℏ^{m2} b ∂^{k2} = ℏ^{m+m2} Σ_r C(k,r) a b^{(r)} ∂^{k−r+k2}
      for (int r = 0; r <= k; ++r) {
        const int order = (m + m2) - (k - r + k2);
        if (order >= a.M_) continue;
        while (static_cast<int>(derivs.size()) <= r) derivs.push_back(partial_derivative(derivs.back(), 0));
        if (derivs[r].is_zero()) break;
        out.add_term(k - r + k2, m + m2, RatFunc(binomial(k, r)) * ca * derivs[r]);
      }
    }
  }
  return out;
}

HElem operator*(const Rat& c, const HElem& a) {
  HElem out(a.M_);
  if (c.is_zero()) return out;
  for (const auto& [key, v] : a.terms_) out.terms_.emplace(key, RatFunc(c) * v);
  return out;
}

bool operator==(const HElem& a, const HElem& b) {
  if (a.M_ != b.M_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

HElem h_commutator(const HElem& a, const HElem& b) { return a * b - b * a; }

HElem neumann_inverse(const HElem& f) {
  if (!f.body_is_function()) throw std::domain_error("neumann_inverse: body has derivative terms");
  const RatFunc g = f.coefficient(0, 0);
  if (g.is_zero()) throw ZeroBody("neumann_inverse: body is zero");
  const int M = f.truncation();
  const HElem gi = HElem::function(g.inverse(), M);
  const HElem q = -(gi * (f - HElem::function(g, M)));
  HElem acc = gi, power = gi;
  for (int j = 1; j < M && !power.is_zero(); ++j) {
    power = q * power;
    acc += power;
  }
  return acc;
}

HElem random_helem(Rng& rng, int M, int max_k, int coef_degree, long bound) {
  HElem h(M);
  for (int k = 0; k <= max_k; ++k)
    for (int s = 0; s < M; ++s)
      if (rng.uniform(0, 2) == 0) h.add_term(k, k + s, rng.poly(1, coef_degree, bound));
  if (h.is_zero()) h.add_term(0, 0, RatFunc(rng.nonzero(-bound, bound)));
  return h;
}

// ---------------------------------------------------------------------------
// Localization

LocalSeries::LocalSeries(HElem f) : f_(std::move(f)) {
  if (f_.body().is_zero()) throw std::invalid_argument("LocalSeries: localizing element has zero body");
}

LocalSeries LocalSeries::constant(const HElem& a, const HElem& f) {
  LocalSeries u(f);
  u.add_term(0, a);
  return u;
}

LocalSeries LocalSeries::x_power(int k, const HElem& f) {
  LocalSeries u(f);
  HElem one(f.truncation());
  one.add_term(0, 0, RatFunc(1));
  u.add_term(k, one);
  return u;
}

int LocalSeries::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

void LocalSeries::add_term(int k, const HElem& a) {
  if (k < 0) throw std::invalid_argument("LocalSeries: negative X-degree");
  require_same_m(a.truncation(), truncation(), "LocalSeries::add_term");
  if (a.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(k, a);
  if (fresh) return;
  it->second += a;
  if (it->second.is_zero()) terms_.erase(it);
}

HElem LocalSeries::raised_to(int K) const {
  if (K < max_degree()) throw std::invalid_argument("LocalSeries::raised_to: degree below max_degree");
  std::vector<HElem> fpow;
  HElem one(truncation());
  one.add_term(0, 0, RatFunc(1));
  fpow.push_back(one);
  HElem acc(truncation());
  for (const auto& [k, a] : terms_) {
    while (static_cast<int>(fpow.size()) <= K - k) fpow.push_back(fpow.back() * f_);
    acc += a * fpow[K - k];
  }
  return acc;
}

std::string LocalSeries::str() const {
  std::string out;
  for (const auto& [k, a] : terms_) {
    if (!out.empty()) out += " + ";
    out += "[" + a.str() + "]*X^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

void require_compatible(const LocalSeries& u, const LocalSeries& v, const char* where) {
  require_same_m(u.truncation(), v.truncation(), where);
  if (!(u.localizer() == v.localizer()))
    throw TruncationMismatch(std::string(where) + ": series localized at different elements");
}

}  // namespace

LocalSeries operator+(const LocalSeries& u, const LocalSeries& v) {
  require_compatible(u, v, "LocalSeries +");
  LocalSeries out = u;
  for (const auto& [k, a] : v.terms_) out.add_term(k, a);
  return out;
}

LocalSeries operator-(const LocalSeries& u, const LocalSeries& v) {
  require_compatible(u, v, "LocalSeries -");
  LocalSeries out = u;
  for (const auto& [k, a] : v.terms_) out.add_term(k, -a);
  return out;
}

bool operator==(const LocalSeries& u, const LocalSeries& v) {
  require_compatible(u, v, "LocalSeries ==");
  const int K = std::max(u.max_degree(), v.max_degree());
  return u.raised_to(K) == v.raised_to(K);
}

LocalSeries localize_product(const LocalSeries& u, const LocalSeries& v) {
  require_compatible(u, v, "localize_product");
  const HElem& f = u.localizer();
  LocalSeries out(f);
  for (const auto& [m, b] : v.terms()) {
    // ad(f)^α(b) until it truncates to zero
    std::vector<HElem> ads{b};
    while (!ads.back().is_zero()) ads.push_back(h_commutator(f, ads.back()));
    ads.pop_back();
    for (const auto& [n, a] : u.terms()) {
      for (std::size_t alpha = 0; alpha < ads.size(); ++alpha) {
        const long al = static_cast<long>(alpha);
        const Rat c = (alpha % 2 == 0 ? Rat(1) : Rat(-1)) * binomial(n + al - 1, al);
        if (c.is_zero()) continue;
        out.add_term(n + m + static_cast<int>(alpha), c * (a * ads[alpha]));
      }
    }
  }
  return out;
}

HElem realize(const LocalSeries& u) {
  const HElem x = neumann_inverse(u.localizer());
  HElem acc(u.truncation()), power(u.truncation());
  power.add_term(0, 0, RatFunc(1));
  int at = 0;
  for (const auto& [k, a] : u.terms()) {
    for (; at < k; ++at) power = power * x;
    acc += a * power;
  }
  return acc;
}

LocalSeries random_series(Rng& rng, const HElem& f, int max_x_degree) {
  LocalSeries u(f);
  for (int k = 0; k <= max_x_degree; ++k)
    if (rng.coin()) u.add_term(k, random_helem(rng, f.truncation(), 1, 1, 3));
  if (u.terms().empty()) u.add_term(0, random_helem(rng, f.truncation(), 1, 1, 3));
  return u;
}

namespace {

/// "hbar-order s: <term>" for the leading discrepancy, or "" if u == v.
std::string series_difference(const LocalSeries& u, const LocalSeries& v) {
  const int K = std::max(u.max_degree(), v.max_degree());
  const HElem d = u.raised_to(K) - v.raised_to(K);
  if (d.is_zero()) return {};
  return "hbar-order " + std::to_string(d.hbar_order()) + ": " + d.str();
}

}  // namespace

CheckReport check_localization_axioms(const HElem& f_in, int M, Rng& rng, int triples) {
  CheckReport rep("localization-axioms");
  const HElem f = with_truncation(f_in, M);
  const LocalSeries one = LocalSeries::x_power(0, f);
  const LocalSeries X = LocalSeries::x_power(1, f);
  const LocalSeries F = LocalSeries::constant(f, f);
  rep.record_zero("f*X = 1", series_difference(localize_product(F, X), one));
  rep.record_zero("X*f = 1", series_difference(localize_product(X, F), one));
  for (int t = 0; t < triples; ++t) {
    const LocalSeries u = random_series(rng, f, 2), v = random_series(rng, f, 2), w = random_series(rng, f, 2);
    const LocalSeries left = localize_product(localize_product(u, v), w);
    const LocalSeries right = localize_product(u, localize_product(v, w));
    rep.record_zero("(uv)w = u(vw) #" + std::to_string(t), series_difference(left, right));
  }
  return rep;
}

CheckReport check_xd_identity(int M) {
  CheckReport rep("xd-identity");
  const HElem z = HElem::function(RatFunc::variable(0, 1), M);
  const HElem D = HElem::D(M), hbar = HElem::hbar(M);
  const LocalSeries X = LocalSeries::x_power(1, z);
  const LocalSeries Ds = LocalSeries::constant(D, z);
  const LocalSeries lhs = localize_product(X, Ds);
  const LocalSeries rhs = localize_product(Ds, X) + localize_product(LocalSeries::constant(hbar, z),
                                                                     LocalSeries::x_power(2, z));
  rep.record_zero("X*D = D*X + hbar*X^2", series_difference(lhs, rhs));

  // Oracle: X ↦ 1/z in A_ℏ itself.
  const HElem zi = HElem::function(RatFunc(MPoly(Rat(1), 1), MPoly::variable(0, 1)), M);
  const HElem oracle_lhs = zi * D;
  const HElem oracle_rhs = D * zi + hbar * zi * zi;
  rep.record(oracle_lhs == oracle_rhs, "z^-1*D = D*z^-1 + hbar*z^-2", (oracle_lhs - oracle_rhs).str());
  rep.record(realize(lhs) == oracle_lhs, "image of X*D", (realize(lhs) - oracle_lhs).str());
  rep.record(realize(rhs) == oracle_rhs, "image of D*X + hbar*X^2", (realize(rhs) - oracle_rhs).str());
  return rep;
}

CheckReport check_lift_independence(const HElem& f, const HElem& g, Rng& rng, int pairs) {
  CheckReport rep("lift-independence");
  const int M = f.truncation();
  const HElem hg = HElem::hbar(M) * g;
  const HElem f2 = f + hg;
  const LocalSeries X = LocalSeries::x_power(1, f);
  const LocalSeries step = LocalSeries(f) - localize_product(X, LocalSeries::constant(hg, f));
  LocalSeries Y = X, power = X;
  for (int j = 1; j <= M; ++j) {
    power = localize_product(step, power);
    Y = Y + power;
  }
  const LocalSeries one = LocalSeries::x_power(0, f);
  const LocalSeries F2 = LocalSeries::constant(f2, f);
  rep.record_zero("Y*f' = 1", series_difference(localize_product(Y, F2), one));
  rep.record_zero("f'*Y = 1", series_difference(localize_product(F2, Y), one));

  auto carry = [&](const LocalSeries& u) {
    LocalSeries out(f), yk = one;
    int at = 0;
    for (const auto& [k, a] : u.terms()) {
      for (; at < k; ++at) yk = localize_product(yk, Y);
      out = out + localize_product(LocalSeries::constant(a, f), yk);
    }
    return out;
  };
  for (int t = 0; t < pairs; ++t) {
    const LocalSeries u = random_series(rng, f2, 2), v = random_series(rng, f2, 2);
    rep.record_zero("psi(uv) = psi(u)psi(v) #" + std::to_string(t),
                    series_difference(carry(localize_product(u, v)), localize_product(carry(u), carry(v))));
  }
  return rep;
}

CheckReport check_degeneration(Rng& rng, int M, int pairs) {
  CheckReport rep("hbar-degeneration");
  const auto names = symplectic_names(1);
  for (int t = 0; t < pairs; ++t) {
    const HElem a = random_helem(rng, M, 2, 2, 3), b = random_helem(rng, M, 2, 2, 3);
    const HElem c = h_commutator(a, b);
    rep.record(c.hbar_order() >= 1, "[a,b] = O(hbar) #" + std::to_string(t), c.str());
    const RatFunc expected = -poisson_bracket(PoissonElem(1, a.classical(0)), PoissonElem(1, b.classical(0))).value;
    const RatFunc diff = c.classical(1) - expected;
    rep.record(diff.is_zero(), "[a,b]_1 = -{a0,b0} #" + std::to_string(t), diff.str(names));
  }
  return rep;
}

}  // namespace commfam
