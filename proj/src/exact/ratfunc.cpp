#include "commfam/exact/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace commfam {

namespace {

DenFactor* find_factor(std::vector<DenFactor>& fs, const MPoly& base) {
  for (auto& f : fs)
    if (f.base == base) return &f;
  return nullptr;
}

const DenFactor* find_factor(const std::vector<DenFactor>& fs, const MPoly& base) {
  for (const auto& f : fs)
    if (f.base == base) return &f;
  return nullptr;
}

int exponent_of(const std::vector<DenFactor>& fs, const MPoly& base) {
  const DenFactor* f = find_factor(fs, base);
  return f ? f->exp : 0;
}

MPoly expand(const std::vector<DenFactor>& fs, std::size_t nvars) {
  MPoly p(Rat(1), nvars);
  for (const auto& f : fs) p *= f.base.pow(static_cast<unsigned>(f.exp));
  return p;
}

/// Least common multiple of two factor lists (factor-wise max exponent).
std::vector<DenFactor> lcm_factors(const std::vector<DenFactor>& a, const std::vector<DenFactor>& b) {
  std::vector<DenFactor> l = a;
  for (const auto& g : b) {
    if (DenFactor* f = find_factor(l, g.base)) {
      f->exp = std::max(f->exp, g.exp);
    } else {
      l.push_back(g);
    }
  }
  return l;
}

/// Product of base^(target - have) over the target list.
MPoly cofactor(const std::vector<DenFactor>& target, const std::vector<DenFactor>& have,
               std::size_t nvars) {
  MPoly p(Rat(1), nvars);
  for (const auto& f : target) {
    const int missing = f.exp - exponent_of(have, f.base);
    if (missing > 0) p *= f.base.pow(static_cast<unsigned>(missing));
  }
  return p;
}

}  // namespace

RatFunc::RatFunc(MPoly num) : num_(std::move(num)) {}

RatFunc::RatFunc(const MPoly& num, const MPoly& den) : num_(num) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  lift_to(common_nvars(num, den));
  absorb_into_den(den.with_nvars(nvars() == 0 ? den.nvars() : nvars()), 1);
  cancel();
}

RatFunc RatFunc::from_factors(MPoly num, std::span<const DenFactor> den) {
  RatFunc r(std::move(num));
  if (r.num_.is_zero()) {
    for (const auto& f : den) r.lift_to(common_nvars(r.num_, f.base));
    return r;
  }
  for (const auto& f : den) {
    if (f.exp == 0) continue;
    if (f.exp < 0) throw std::invalid_argument("RatFunc::from_factors: negative exponent");
    r.lift_to(common_nvars(r.num_, f.base));
    r.absorb_into_den(f.base.with_nvars(r.num_.nvars()), f.exp);
  }
  r.cancel();
  return r;
}

RatFunc RatFunc::parse(std::string_view text, std::size_t nvars, std::span<const std::string> names) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    int depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string_view::npos) throw std::invalid_argument("RatFunc::parse: unbalanced '('");
    const MPoly num = MPoly::parse(text.substr(1, close - 1), nvars, names);
    std::string_view rest = trim(text.substr(close + 1));
    if (rest.empty()) return RatFunc(num);
    if (rest.front() != '/') throw std::invalid_argument("RatFunc::parse: expected '/'");
    rest = trim(rest.substr(1));
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    return RatFunc(num, MPoly::parse(rest, nvars, names));
  }
  return RatFunc(MPoly::parse(text, nvars, names));
}

MPoly RatFunc::den() const { return expand(den_, nvars()); }

std::size_t RatFunc::complexity() const {
  std::size_t c = num_.size();
  for (const auto& f : den_) c += f.base.size();
  return c;
}

void RatFunc::lift_to(std::size_t nv) {
  if (num_.nvars() != nv) num_ = num_.with_nvars(nv);
}

void RatFunc::absorb_into_den(MPoly p, int exp) {
  if (p.is_zero()) throw std::domain_error("RatFunc: division by zero");
  const std::size_t nv = p.nvars();
  const Rat c = p.content();
  num_ *= c.inverse().pow(static_cast<unsigned>(exp));
  p *= c.inverse();

  auto add = [this](MPoly base, int e) {
    if (DenFactor* f = find_factor(den_, base)) {
      f->exp += e;
    } else {
      den_.push_back({std::move(base), e});
    }
  };

  // Split off single-variable factors x_i^k.
  const Monomial g = p.monomial_gcd();
  bool has_monomial = false;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g[v] == 0) continue;
    has_monomial = true;
    add(MPoly::variable(v, nv), g[v] * exp);
  }
  if (has_monomial) p = *divide_exact(p, MPoly::monomial(g));
  if (p.is_constant()) return;

  for (auto& f : den_) {
    if (f.base.size() == 1) continue;  // monomial factors were split off above
    while (!p.is_constant()) {
      auto q = divide_exact(p, f.base);
      if (!q) break;
      f.exp += exp;
      p = std::move(*q);
    }
    if (p.is_constant()) return;
  }
  add(std::move(p), exp);
}

void RatFunc::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    while (f.exp > 0) {
      auto q = divide_exact(num_, f.base);
      if (!q) break;
      num_ = std::move(*q);
      --f.exp;
    }
  }
  std::erase_if(den_, [](const DenFactor& f) { return f.exp == 0; });
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
  RatFunc r;
  r.num_ = den();
  r.absorb_into_den(num_, 1);
  r.cancel();
  return r;
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r;
  r.num_ = num_.pow(e);
  if (e == 0) return RatFunc(MPoly(Rat(1), nvars()));
  r.den_ = den_;
  for (auto& f : r.den_) f.exp *= static_cast<int>(e);
  return r;
}

RatFunc RatFunc::remap(std::size_t new_nvars, std::span<const std::size_t> map) const {
  RatFunc r;
  r.num_ = num_.remap(new_nvars, map);
  for (const auto& f : den_) r.absorb_into_den(f.base.remap(new_nvars, map), f.exp);
  r.cancel();
  return r;
}

RatFunc RatFunc::with_nvars(std::size_t nv) const {
  if (nvars() == nv) return *this;
  RatFunc r = *this;
  r.lift_to(nv);
  return r;
}

Rat RatFunc::evaluate(std::span<const Rat> point) const {
  Rat d(1);
  for (const auto& f : den_) d *= f.base.evaluate(point).pow(static_cast<unsigned>(f.exp));
  if (d.is_zero()) throw std::domain_error("RatFunc::evaluate: pole at evaluation point");
  return num_.evaluate(point) / d;
}

std::string RatFunc::str(std::span<const std::string> names) const {
  if (den_.empty()) return num_.str(names);
  return "(" + num_.str(names) + ")/(" + den().str(names) + ")";
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) {
    lift_to(common_nvars(MPoly(nvars()), MPoly(o.nvars())));
    return *this;
  }
  if (is_zero()) {
    const std::size_t nv = nvars();
    *this = o;
    if (nv != 0) lift_to(nv);
    return *this;
  }
  const std::size_t nv = common_nvars(MPoly(nvars()), MPoly(o.nvars()));
  lift_to(nv);
  bool same = den_.size() == o.den_.size();
  for (std::size_t i = 0; same && i < den_.size(); ++i)
    same = den_[i].exp == o.den_[i].exp && den_[i].base == o.den_[i].base;
  if (same) {
    num_ += o.num_.with_nvars(nv);
  } else {
    std::vector<DenFactor> l = lcm_factors(den_, o.den_);
    num_ = num_ * cofactor(l, den_, nv) + o.num_.with_nvars(nv) * cofactor(l, o.den_, nv);
    den_ = std::move(l);
  }
  cancel();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  const std::size_t nv = common_nvars(MPoly(nvars()), MPoly(o.nvars()));
  if (is_zero() || o.is_zero()) {
    *this = RatFunc(MPoly(nv));
    return *this;
  }
  lift_to(nv);
  num_ *= o.num_.with_nvars(nv);
  for (const auto& g : o.den_) {
    if (DenFactor* f = find_factor(den_, g.base)) {
      f->exp += g.exp;
    } else {
      den_.push_back(g);
    }
  }
  cancel();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

bool ratfunc_equal(const RatFunc& a, const RatFunc& b) {
  const std::size_t nv = common_nvars(MPoly(a.nvars()), MPoly(b.nvars()));
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  std::vector<DenFactor> da(a.den_factors().begin(), a.den_factors().end());
  std::vector<DenFactor> db(b.den_factors().begin(), b.den_factors().end());
  const std::vector<DenFactor> l = lcm_factors(da, db);
  return a.num().with_nvars(nv) * cofactor(l, da, nv) == b.num().with_nvars(nv) * cofactor(l, db, nv);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return ratfunc_equal(a, b); }

RatFunc partial_derivative(const RatFunc& f, std::size_t var) {
  const std::size_t nv = f.nvars();
  if (nv == 0) return RatFunc(0);
  if (var >= nv) throw std::out_of_range("partial_derivative: variable out of range");

  // Logarithmic derivative over the factored denominator: only factors that
  // depend on var gain one power.
  std::vector<std::size_t> dep;
  for (std::size_t k = 0; k < f.den_.size(); ++k)
    if (f.den_[k].base.depends_on(var)) dep.push_back(k);

  MPoly all(Rat(1), nv);
  for (std::size_t k : dep) all *= f.den_[k].base;

  MPoly num = f.num_.derivative(var) * all;
  for (std::size_t k : dep) {
    MPoly others(Rat(1), nv);
    for (std::size_t l : dep)
      if (l != k) others *= f.den_[l].base;
    num -= f.num_ * f.den_[k].base.derivative(var) * others * Rat(f.den_[k].exp);
  }

  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = f.den_;
  for (std::size_t k : dep) ++r.den_[k].exp;
  r.cancel();
  if (r.num_.is_zero()) r.num_ = MPoly(nv);
  return r;
}

}  // namespace commfam
