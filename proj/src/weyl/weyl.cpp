#include "commfam/weyl/weyl.hpp"

#include "commfam/exact/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace commfam {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string index_text(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + std::to_string(a[i]);
  return s;
}

/// Lifts a coefficient to N variables (bare constants included).
RatFunc lifted(const RatFunc& f, std::size_t N) {
  if (f.nvars() == N) return f;
  if (f.nvars() != 0) throw std::invalid_argument("RatDiffOp: coefficient has wrong variable count");
  return f.with_nvars(N);
}

/// Calls fn(γ) for every γ ≤ α componentwise.
template <class Fn>
void for_each_below(const MultiIndex& alpha, Fn&& fn) {
  MultiIndex g(alpha.size(), 0);
  while (true) {
    fn(g);
    std::size_t i = 0;
    for (; i < g.size(); ++i) {
      if (g[i] < alpha[i]) {
        ++g[i];
        break;
      }
      g[i] = 0;
    }
    if (i == g.size()) return;
  }
}

Rat multi_binomial(const MultiIndex& a, const MultiIndex& g) {
  Rat c(1);
  for (std::size_t i = 0; i < a.size(); ++i) c *= binomial(a[i], g[i]);
  return c;
}

/// ∂^γ f with memoization on γ.
class DerivativeCache {
public:
  explicit DerivativeCache(const RatFunc& f) { cache_.emplace(MultiIndex(), f); }
  const RatFunc& get(const MultiIndex& g) {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    // Lower one nonzero component and differentiate once.
    MultiIndex lower = g;
    std::size_t var = 0;
    while (lower[var] == 0) ++var;
    --lower[var];
    if (std::all_of(lower.begin(), lower.end(), [](Exponent e) { return e == 0; })) lower.clear();
    RatFunc d = partial_derivative(get(lower), var);
    return cache_.emplace(g, std::move(d)).first->second;
  }

private:
  std::map<MultiIndex, RatFunc> cache_;
};

bool is_zero_index(const MultiIndex& g) {
  return std::all_of(g.begin(), g.end(), [](Exponent e) { return e == 0; });
}

}  // namespace

std::vector<std::string> z_names(std::size_t N) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= N; ++j) names.push_back("z" + std::to_string(j));
  return names;
}

RatDiffOp::RatDiffOp(std::size_t N) : N_(N) {
  if (N == 0) throw std::invalid_argument("RatDiffOp: need at least one variable");
}

RatDiffOp RatDiffOp::multiplication(const RatFunc& f, std::size_t N) {
  RatDiffOp op(N);
  op.add_term(MultiIndex(N, 0), f);
  return op;
}

RatDiffOp RatDiffOp::partial(std::size_t var, std::size_t N, int order) {
  if (var >= N) throw std::out_of_range("RatDiffOp::partial: variable out of range");
  if (order < 0) throw std::invalid_argument("RatDiffOp::partial: negative order");
  RatDiffOp op(N);
  MultiIndex a(N, 0);
  a[var] = static_cast<Exponent>(order);
  op.add_term(a, RatFunc(1));
  return op;
}

int RatDiffOp::order() const {
  int best = -1;
  for (const auto& [a, c] : terms_) {
    int s = 0;
    for (Exponent e : a) s += e;
    best = std::max(best, s);
  }
  return best;
}

RatFunc RatDiffOp::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? RatFunc(MPoly(N_)) : it->second;
}

void RatDiffOp::add_term(const MultiIndex& alpha, const RatFunc& c) {
  if (alpha.size() != N_) throw std::invalid_argument("RatDiffOp: multi-index has wrong length");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(alpha, lifted(c, N_));
  if (fresh) return;
  it->second += lifted(c, N_);
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc RatDiffOp::apply(const RatFunc& f) const {
  const RatFunc g = lifted(f, N_);
  DerivativeCache cache(g);
  RatFunc acc{MPoly(N_)};
  for (const auto& [a, c] : terms_) acc += c * cache.get(is_zero_index(a) ? MultiIndex() : a);
  return acc;
}

RatDiffOp RatDiffOp::placed(std::size_t var, std::size_t N) const {
  if (N_ != 1) throw std::invalid_argument("RatDiffOp::placed: operator must be in one variable");
  if (var >= N) throw std::out_of_range("RatDiffOp::placed: variable out of range");
  const std::size_t map[1] = {var};
  RatDiffOp op(N);
  for (const auto& [a, c] : terms_) {
    MultiIndex b(N, 0);
    b[var] = a[0];
    op.add_term(b, c.nvars() == 0 ? c.with_nvars(N) : c.remap(N, map));
  }
  return op;
}

std::string RatDiffOp::str() const {
  const auto names = z_names(N_);
  std::string out;
  for (const auto& [a, c] : terms_) {
    if (!out.empty()) out += '\n';
    out += index_text(a) + " | " + c.num().str(names) + " | " + c.den().str(names);
  }
  return out;
}

RatDiffOp RatDiffOp::parse(std::string_view text, std::size_t N) {
  const auto names = z_names(N);
  RatDiffOp op(N);
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (trim(line).empty()) continue;
    const auto p1 = line.find('|');
    const auto p2 = p1 == std::string::npos ? p1 : line.find('|', p1 + 1);
    if (p2 == std::string::npos) throw std::invalid_argument("RatDiffOp::parse: expected 'alpha | num | den'");
    std::istringstream idx(line.substr(0, p1));
    MultiIndex a;
    long e;
    while (idx >> e) {
      if (e < 0) throw std::invalid_argument("RatDiffOp::parse: negative derivative order");
      a.push_back(static_cast<Exponent>(e));
    }
    if (!idx.eof() || a.size() != N) throw std::invalid_argument("RatDiffOp::parse: bad multi-index '" + line + "'");
    const MPoly num = MPoly::parse(trim(line.substr(p1 + 1, p2 - p1 - 1)), N, names);
    const MPoly den = MPoly::parse(trim(line.substr(p2 + 1)), N, names);
    op.add_term(a, RatFunc(num, den));
  }
  return op;
}

RatDiffOp& RatDiffOp::operator+=(const RatDiffOp& o) {
  if (o.N_ != N_) throw std::invalid_argument("RatDiffOp: variable count mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

RatDiffOp& RatDiffOp::operator-=(const RatDiffOp& o) {
  if (o.N_ != N_) throw std::invalid_argument("RatDiffOp: variable count mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

RatDiffOp operator*(const RatFunc& f, const RatDiffOp& a) {
  RatDiffOp out(a.N_);
  if (f.is_zero()) return out;
  const RatFunc g = lifted(f, a.N_);
  for (const auto& [alpha, c] : a.terms_) out.add_term(alpha, g * c);
  return out;
}

bool operator==(const RatDiffOp& a, const RatDiffOp& b) {
  if (a.N_ != b.N_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

RatDiffOp do_compose(const RatDiffOp& A, const RatDiffOp& B) {
  if (A.nvars() != B.nvars()) throw std::invalid_argument("do_compose: variable count mismatch");
  const std::size_t N = A.nvars();
  // Collect all contributions per output index, then sum once.
  std::map<MultiIndex, std::vector<RatFunc>> parts;
  for (const auto& [beta, b] : B.terms()) {
    DerivativeCache cache(b);
    for (const auto& [alpha, a] : A.terms()) {
      for_each_below(alpha, [&](const MultiIndex& g) {
        const RatFunc& db = cache.get(is_zero_index(g) ? MultiIndex() : g);
        if (db.is_zero()) return;
        MultiIndex out(N);
        for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<Exponent>(alpha[i] - g[i] + beta[i]);
        parts[out].push_back(a * db * RatFunc(multi_binomial(alpha, g)));
      });
    }
  }
  RatDiffOp C(N);
  for (auto& [idx, fs] : parts) {
    RatFunc acc{MPoly(N)};
    for (const auto& f : fs) acc += f;
    C.add_term(idx, acc);
  }
  return C;
}

RatDiffOp do_commutator(const RatDiffOp& A, const RatDiffOp& B) { return do_compose(A, B) - do_compose(B, A); }

PoissonElem OpSymbol::to_poisson() const {
  const int n = static_cast<int>(N);
  const std::size_t nv = 2 * N;
  std::vector<std::size_t> zmap(N);
  for (std::size_t j = 0; j < N; ++j) zmap[j] = x_var(static_cast<int>(j + 1));
  RatFunc acc{MPoly(nv)};
  for (const auto& [a, c] : coef) {
    Monomial xi(nv, 0);
    for (std::size_t j = 0; j < N; ++j) xi[xi_var(static_cast<int>(j + 1))] = a[j];
    const RatFunc cz = c.nvars() == 0 ? c.with_nvars(nv) : c.remap(nv, zmap);
    acc += cz * RatFunc(MPoly::monomial(xi));
  }
  return PoissonElem(n, acc);
}

OpSymbol symbol(const RatDiffOp& A) {
  if (A.is_zero()) throw ZeroOperator("symbol: zero operator");
  OpSymbol s;
  s.N = A.nvars();
  s.degree = A.order();
  for (const auto& [a, c] : A.terms()) {
    int tot = 0;
    for (Exponent e : a) tot += e;
    if (tot == s.degree) s.coef.emplace(a, c);
  }
  return s;
}

RatDiffOp parse_operator_spec(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("parse_operator_spec: empty operator");
  const std::vector<std::string> names = {"z"};

  // Split into signed top-level terms.
  std::vector<std::pair<int, std::string>> terms;
  int depth = 0, sign = 1;
  std::string cur;
  auto flush = [&] {
    const std::string t = trim(cur);
    if (t.empty()) throw std::invalid_argument("parse_operator_spec: empty term in '" + s + "'");
    terms.emplace_back(sign, t);
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw std::invalid_argument("parse_operator_spec: unbalanced ')'");
    const bool top_sign = depth == 0 && (ch == '+' || ch == '-') && !(i > 0 && s[i - 1] == '^');
    if (top_sign) {
      if (trim(cur).empty() && terms.empty()) {
        if (ch == '-') sign = -sign;
        continue;
      }
      flush();
      sign = ch == '-' ? -1 : 1;
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw std::invalid_argument("parse_operator_spec: unbalanced '('");
  flush();

  RatDiffOp op(1);
  for (const auto& [sg, term] : terms) {
    // Split on top-level '*'; a trailing d, dk or d^k factor is the derivative.
    std::vector<std::string> factors;
    depth = 0;
    cur.clear();
    for (char ch : term) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == '*' && depth == 0) {
        factors.push_back(trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    factors.push_back(trim(cur));
    int order = 0;
    const std::string& last = factors.back();
    if (!last.empty() && last[0] == 'd') {
      std::string rest = last.substr(1);
      if (!rest.empty() && rest[0] == '^') rest = rest.substr(1);
      if (rest.empty()) {
        order = 1;
      } else {
        if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw std::invalid_argument("parse_operator_spec: bad derivative factor '" + last + "'");
        order = std::stoi(rest);
      }
      factors.pop_back();
    }
    RatFunc coef = RatFunc(MPoly(Rat(sg), 1));
    for (const auto& f : factors) {
      if (f.empty()) throw std::invalid_argument("parse_operator_spec: empty factor in '" + term + "'");
      if (f.find('d') != std::string::npos)
        throw std::invalid_argument("parse_operator_spec: derivative must be the last factor in '" + term + "'");
      coef *= RatFunc::parse(f, 1, names);
    }
    op.add_term(MultiIndex{static_cast<Exponent>(order)}, coef);
  }
  return op;
}

void OpFamilySpec::validate() const {
  if (N < 1) throw std::invalid_argument("OpFamilySpec: N must be >= 1");
  if (points.size() != N) throw std::invalid_argument("OpFamilySpec: need exactly N points");
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      if (points[a] == points[b]) throw std::invalid_argument("OpFamilySpec: points must be distinct");
  if (T.nvars() != 1) throw std::invalid_argument("OpFamilySpec: T must act in one variable");
  if (T.is_zero()) throw std::invalid_argument("OpFamilySpec: T must be nonzero");
}

std::vector<RatDiffOp> rational_hamiltonians(const OpFamilySpec& spec) {
  spec.validate();
  const std::size_t N = spec.N;
  auto z = [N](std::size_t i) { return MPoly::variable(i, N); };
  std::vector<RatDiffOp> Ts;
  for (std::size_t i = 0; i < N; ++i) Ts.push_back(spec.T.placed(i, N));

  std::vector<RatDiffOp> hs;
  for (std::size_t k = 0; k < N; ++k) {
    RatDiffOp H(N);
    for (std::size_t i = 0; i < N; ++i) {
      MPoly num(Rat(1), N);
      for (std::size_t kp = 0; kp < N; ++kp) num *= z(i) - MPoly(spec.points[kp], N);
      std::vector<DenFactor> den;
      for (std::size_t ip = 0; ip < N; ++ip) {
        if (ip == i) continue;
        num *= z(ip) - MPoly(spec.points[k], N);
        den.push_back({z(i) - z(ip), 1});
      }
      H += RatFunc::from_factors(num, den) * Ts[i];
    }
    hs.push_back(std::move(H));
  }
  return hs;
}

std::vector<RatDiffOp> hamiltonians_from_basis(std::span<const RatFunc> fs, const RatDiffOp& T) {
  const std::size_t N = fs.size();
  if (N == 0) throw std::invalid_argument("hamiltonians_from_basis: empty basis");
  if (T.nvars() != 1) throw std::invalid_argument("hamiltonians_from_basis: T must act in one variable");
  for (const auto& f : fs)
    if (f.nvars() > 1) throw std::invalid_argument("hamiltonians_from_basis: basis functions must be in one variable");

  // g(a, j) = f_a(z_j)
  RMatrix g(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t map[1] = {j};
      g(a, j) = fs[a].nvars() == 0 ? fs[a].with_nvars(N) : fs[a].remap(N, map);
    }
  const RatFunc phi = determinant_expansion(g);
  if (phi.is_zero()) throw ZeroPhi("hamiltonians_from_basis: det[f_a(z_j)] vanishes identically");

  auto minor = [&](std::size_t row, std::size_t col) {
    if (N == 1) return RatFunc(MPoly(Rat(1), N));
    RMatrix m(N - 1, N - 1);
    for (std::size_t a = 0, r = 0; a < N; ++a) {
      if (a == row) continue;
      for (std::size_t j = 0, c = 0; j < N; ++j) {
        if (j == col) continue;
        m(r, c++) = g(a, j);
      }
      ++r;
    }
    return determinant_expansion(m);
  };

  std::vector<RatDiffOp> Ts;
  for (std::size_t j = 0; j < N; ++j) Ts.push_back(T.placed(j, N));
  std::vector<RatDiffOp> hs;
  for (std::size_t k = 0; k < N; ++k) {
    RatDiffOp H(N);
    for (std::size_t j = 0; j < N; ++j) {
      // Row f_0 = 1 sits first, so leg j (1-based j+1) carries (−1)^{1+(j+1)}.
      const Rat sign = j % 2 == 0 ? Rat(1) : Rat(-1);
      H += (RatFunc(sign) * minor(k, j) / phi) * Ts[j];
    }
    hs.push_back(std::move(H));
  }
  return hs;
}

std::vector<Rat> pole_basis_scales(std::span<const Rat> points) {
  const std::size_t N = points.size();
  std::vector<Rat> cs;
  for (std::size_t k = 0; k < N; ++k) {
    Rat prod(1);
    for (std::size_t kp = 0; kp < N; ++kp)
      if (kp != k) prod *= points[k] - points[kp];
    if (prod.is_zero()) throw std::invalid_argument("pole_basis_scales: points must be distinct");
    const Rat sign = (N + k + 1) % 2 == 0 ? Rat(1) : Rat(-1);
    cs.push_back(sign / prod);
  }
  return cs;
}

std::vector<RatFunc> pole_basis(std::span<const Rat> points, bool normalized) {
  const auto cs = normalized ? pole_basis_scales(points) : std::vector<Rat>(points.size(), Rat(1));
  std::vector<RatFunc> fs;
  for (std::size_t k = 0; k < points.size(); ++k)
    fs.emplace_back(MPoly(cs[k], 1), MPoly::variable(0, 1) - MPoly(points[k], 1));
  return fs;
}

RatFunc principal_symbol_zxi(const RatDiffOp& T) {
  if (T.nvars() != 1) throw std::invalid_argument("principal_symbol_zxi: T must act in one variable");
  const OpSymbol s = symbol(T);
  const std::size_t map[1] = {0};
  RatFunc acc{MPoly(std::size_t{2})};
  for (const auto& [a, c] : s.coef) {
    const RatFunc cz = c.nvars() == 0 ? c.with_nvars(2) : c.remap(2, map);
    acc += cz * RatFunc(MPoly::monomial({0, a[0]}));
  }
  return acc;
}

namespace {

/// Splits f(z, ξ) into ξ-monomial coefficients in z; requires a ξ-free
/// denominator after cancellation.
std::map<MultiIndex, RatFunc> xi_coefficients(const RatFunc& f, std::size_t N) {
  for (const auto& d : f.den_factors())
    for (std::size_t j = 1; j <= N; ++j)
      if (d.base.depends_on(xi_var(static_cast<int>(j))))
        throw std::domain_error("xi_coefficients: denominator depends on xi");
  std::vector<std::size_t> to_z(2 * N);
  for (std::size_t j = 0; j < N; ++j) {
    to_z[x_var(static_cast<int>(j + 1))] = j;
    to_z[xi_var(static_cast<int>(j + 1))] = 0;  // unused: ξ exponents are stripped first
  }
  std::map<MultiIndex, std::vector<Term>> groups;
  for (const auto& t : f.num().terms()) {
    MultiIndex a(N);
    Monomial zpart(N, 0);
    for (std::size_t j = 0; j < N; ++j) {
      a[j] = t.exps[xi_var(static_cast<int>(j + 1))];
      zpart[j] = t.exps[x_var(static_cast<int>(j + 1))];
    }
    groups[a].push_back({zpart, t.coef});
  }
  std::vector<DenFactor> den;
  for (const auto& d : f.den_factors()) den.push_back({d.base.remap(N, to_z), d.exp});
  std::map<MultiIndex, RatFunc> out;
  for (auto& [a, ts] : groups) out.emplace(a, RatFunc::from_factors(MPoly::from_terms(N, std::move(ts)), den));
  return out;
}

}  // namespace

CheckReport check_symbol_matches_classical(std::span<const RatDiffOp> hs, const OpFamilySpec& spec) {
  spec.validate();
  CheckReport rep("symbol-vs-classical");
  const std::size_t N = spec.N;
  if (hs.size() != N) throw std::invalid_argument("check_symbol_matches_classical: need N operators");

  const RatFunc sigma = principal_symbol_zxi(spec.T);
  const auto cs = pole_basis_scales(spec.points);
  std::vector<RatFunc> fs{RatFunc(MPoly(Rat(1), 2))};
  for (std::size_t k = 0; k < N; ++k) {
    const MPoly pole = MPoly::variable(0, 2) - MPoly(spec.points[k], 2);
    fs.push_back(RatFunc(MPoly(cs[k], 2), pole) / sigma);
  }
  const ClassicalFamily cl = classical_hamiltonians(fs);

  std::vector<PoissonElem> syms;
  for (std::size_t k = 0; k < N; ++k) {
    const std::string tag = "H" + std::to_string(k + 1);
    OpSymbol s;
    try {
      s = symbol(hs[k]);
    } catch (const ZeroOperator&) {
      rep.record(false, "symbol(" + tag + ")", "zero operator");
      continue;
    }
    const auto classical = xi_coefficients(cl.h[k].value, N);
    std::set<MultiIndex> keys;
    for (const auto& [a, c] : s.coef) keys.insert(a);
    for (const auto& [a, c] : classical) keys.insert(a);
    for (const auto& a : keys) {
      const auto it = s.coef.find(a);
      const auto jt = classical.find(a);
      const RatFunc lhs = it == s.coef.end() ? RatFunc(MPoly(N)) : it->second;
      const RatFunc rhs = jt == classical.end() ? RatFunc(MPoly(N)) : jt->second;
      const RatFunc diff = lhs - rhs;
      rep.record(diff.is_zero(), "symbol(" + tag + ")[xi^(" + index_text(a) + ")]", diff.str(z_names(N)));
    }
    syms.push_back(s.to_poisson());
  }
  if (syms.size() == N) rep.merge(check_poisson_commute(syms));
  return rep;
}

CheckReport check_operators_commute(std::span<const RatDiffOp> hs) {
  CheckReport rep("operator-commute");
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const RatDiffOp c = do_commutator(hs[i], hs[j]);
      std::string witness;
      if (!c.is_zero()) {
        witness = c.str();
        witness = witness.substr(0, witness.find('\n'));
      }
      rep.record(c.is_zero(), "[H" + std::to_string(i + 1) + ",H" + std::to_string(j + 1) + "]", witness);
    }
  return rep;
}

}  // namespace commfam
