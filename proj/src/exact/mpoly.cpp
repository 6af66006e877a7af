#include "commfam/exact/mpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace commfam {

namespace {

int degree_of(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Exponent e : m) {
      h ^= e;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

bool grlex_greater(const Term& a, const Term& b) { return grlex_compare(a.exps, b.exps) > 0; }

std::string default_name(std::size_t i) { return "x" + std::to_string(i); }

}  // namespace

int grlex_compare(const Monomial& a, const Monomial& b) {
  const int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Exponent ea = i < a.size() ? a[i] : 0;
    const Exponent eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

std::size_t common_nvars(const MPoly& a, const MPoly& b) {
  if (a.nvars() == 0) return b.nvars();
  if (b.nvars() == 0) return a.nvars();
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("MPoly: variable-count mismatch (" + std::to_string(a.nvars()) +
                                " vs " + std::to_string(b.nvars()) + ")");
  return a.nvars();
}

MPoly::MPoly(const Rat& c, std::size_t nvars) : nvars_(nvars) {
  if (!c.is_zero()) terms_.push_back({Monomial(nvars, 0), c});
}

MPoly MPoly::variable(std::size_t var, std::size_t nvars) {
  if (var >= nvars) throw std::out_of_range("MPoly::variable: index out of range");
  Monomial m(nvars, 0);
  m[var] = 1;
  return monomial(std::move(m));
}

MPoly MPoly::monomial(Monomial exps, Rat coef) {
  MPoly p(exps.size());
  if (!coef.is_zero()) p.terms_.push_back({std::move(exps), std::move(coef)});
  return p;
}

MPoly MPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), grlex_greater);
  MPoly p(nvars);
  for (auto& t : terms) {
    if (t.exps.size() != nvars) throw std::invalid_argument("MPoly: exponent vector length mismatch");
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

MPoly MPoly::from_sorted_terms(std::size_t nvars, std::vector<Term> terms) {
  MPoly p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exps) == 0);
}

Rat MPoly::constant_term() const {
  if (!terms_.empty() && degree_of(terms_.back().exps) == 0) return terms_.back().coef;
  return Rat(0);
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : degree_of(terms_.front().exps); }

int MPoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, var < t.exps.size() ? t.exps[var] : 0);
  return d;
}

bool MPoly::depends_on(std::size_t var) const { return degree_in(var) > 0; }

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(nvars_);
  if (nvars_ == 0) return r;
  if (var >= nvars_) throw std::out_of_range("MPoly::derivative: variable out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d{t.exps, t.coef * Rat(static_cast<long>(t.exps[var]))};
    --d.exps[var];
    out.push_back(std::move(d));
  }
  // Differentiating one variable can reorder terms under grlex.
  return from_terms(nvars_, std::move(out));
}

Rat MPoly::evaluate(std::span<const Rat> point) const {
  if (nvars_ != 0 && point.size() != nvars_)
    throw std::invalid_argument("MPoly::evaluate: point dimension mismatch");
  Rat acc(0);
  for (const auto& t : terms_) {
    Rat v = t.coef;
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] != 0) v *= point[i].pow(t.exps[i]);
    acc += v;
  }
  return acc;
}

MPoly MPoly::remap(std::size_t new_nvars, std::span<const std::size_t> map) const {
  if (nvars_ == 0) return with_nvars(new_nvars);
  if (map.size() != nvars_) throw std::invalid_argument("MPoly::remap: map size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exps[i] == 0) continue;
      if (map[i] >= new_nvars) throw std::out_of_range("MPoly::remap: target out of range");
      m[map[i]] += t.exps[i];
    }
    out.push_back({std::move(m), t.coef});
  }
  return from_terms(new_nvars, std::move(out));
}

MPoly MPoly::with_nvars(std::size_t nvars) const {
  if (nvars_ == nvars) return *this;
  if (nvars_ != 0) throw std::invalid_argument("MPoly::with_nvars: not a bare constant");
  return MPoly(constant_term(), nvars);
}

Rat MPoly::content() const {
  if (terms_.empty()) return Rat(1);
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.gmp().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.gmp().get_den_mpz_t());
  }
  Rat c(g, l);
  return terms_.front().coef.sign() < 0 ? -c : c;
}

MPoly MPoly::primitive() const {
  if (terms_.empty()) return *this;
  MPoly p = *this;
  p *= content().inverse();
  return p;
}

Monomial MPoly::monomial_gcd() const {
  if (terms_.empty()) return Monomial(nvars_, 0);
  Monomial g = terms_.front().exps;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], t.exps[i]);
  return g;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(Rat(1), nvars_);
  MPoly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string MPoly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coef;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    std::string mono;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += i < names.size() ? names[i] : default_name(i);
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty()) {
      os << c;
    } else if (c.is_one()) {
      os << mono;
    } else if (c == Rat(-1)) {
      os << '-' << mono;
    } else {
      os << c << '*' << mono;
    }
    first = false;
  }
  return os.str();
}

MPoly combine(const MPoly& a, const MPoly& b, bool subtract) {
  const std::size_t nv = common_nvars(a, b);
  MPoly lifted_a, lifted_b;
  const MPoly* xp = &a;
  const MPoly* y = &b;
  if (a.nvars_ != nv) {
    lifted_a = a.with_nvars(nv);
    xp = &lifted_a;
  }
  if (b.nvars_ != nv) {
    lifted_b = b.with_nvars(nv);
    y = &lifted_b;
  }
  MPoly r(nv);
  r.terms_.reserve(xp->terms_.size() + y->terms_.size());
  auto i = xp->terms_.begin(), ie = xp->terms_.end();
  auto j = y->terms_.begin(), je = y->terms_.end();
  while (i != ie || j != je) {
    int c = 0;
    if (i == ie) c = -1;
    else if (j == je) c = 1;
    else c = grlex_compare(i->exps, j->exps);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back({j->exps, subtract ? -j->coef : j->coef});
      ++j;
    } else {
      Rat s = subtract ? i->coef - j->coef : i->coef + j->coef;
      if (!s.is_zero()) r.terms_.push_back({i->exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) { return *this = combine(*this, o, false); }
MPoly& MPoly::operator-=(const MPoly& o) { return *this = combine(*this, o, true); }

MPoly& MPoly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

namespace {

// Exponent vectors packed into one word so that integer order is grlex
// order and monomial multiplication is integer addition. Field widths are
// sized for the product, so sums never carry.
struct Packing {
  std::vector<unsigned> shift;  // per variable
  unsigned deg_shift = 0;
  std::vector<std::uint64_t> mask;
};

std::optional<Packing> packing_for_product(const MPoly& a, const MPoly& b, std::size_t nv) {
  std::vector<unsigned> maxe(nv, 0);
  unsigned maxdeg_a = 0, maxdeg_b = 0;
  auto scan = [&](const MPoly& p, unsigned& maxdeg) {
    for (const auto& t : p.terms()) {
      unsigned d = 0;
      for (std::size_t k = 0; k < t.exps.size(); ++k) d += t.exps[k];
      maxdeg = std::max(maxdeg, d);
    }
  };
  std::vector<unsigned> ma(nv, 0), mb(nv, 0);
  for (const auto& t : a.terms())
    for (std::size_t k = 0; k < nv; ++k) ma[k] = std::max<unsigned>(ma[k], t.exps[k]);
  for (const auto& t : b.terms())
    for (std::size_t k = 0; k < nv; ++k) mb[k] = std::max<unsigned>(mb[k], t.exps[k]);
  scan(a, maxdeg_a);
  scan(b, maxdeg_b);
  Packing p;
  p.shift.resize(nv);
  p.mask.resize(nv);
  unsigned used = 0;
  for (std::size_t k = nv; k-- > 0;) {
    const unsigned w = static_cast<unsigned>(std::bit_width(ma[k] + mb[k]));
    p.shift[k] = used;
    p.mask[k] = w == 0 ? 0 : ((std::uint64_t{1} << w) - 1);
    used += w;
  }
  p.deg_shift = used;
  used += static_cast<unsigned>(std::bit_width(maxdeg_a + maxdeg_b));
  if (used > 64) return std::nullopt;
  return p;
}

std::uint64_t pack(const Packing& p, const Monomial& m) {
  std::uint64_t key = 0, deg = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    key |= static_cast<std::uint64_t>(m[k]) << p.shift[k];
    deg += m[k];
  }
  return key | (deg << p.deg_shift);
}

Monomial unpack(const Packing& p, std::uint64_t key) {
  Monomial m(p.shift.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<Exponent>((key >> p.shift[k]) & p.mask[k]);
  return m;
}

mpz_class denominator_lcm(const MPoly& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.gmp().get_den_mpz_t());
  return l;
}

// Product over integers after scaling both factors to integer coefficients.
MPoly multiply_packed(const MPoly& a, const MPoly& b, std::size_t nv, const Packing& p) {
  const mpz_class la = denominator_lcm(a), lb = denominator_lcm(b);
  auto scaled = [&](const MPoly& x, const mpz_class& l) {
    std::vector<std::pair<std::uint64_t, mpz_class>> out;
    out.reserve(x.size());
    for (const auto& t : x.terms()) {
      mpz_class c = t.coef.gmp().get_num() * (l / t.coef.gmp().get_den());
      out.emplace_back(pack(p, t.exps), std::move(c));
    }
    return out;
  };
  const auto sa = scaled(a, la), sb = scaled(b, lb);
  std::unordered_map<std::uint64_t, mpz_class> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
  for (const auto& [ka, ca] : sa)
    for (const auto& [kb, cb] : sb) {
      mpz_class& slot = acc[ka + kb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  std::vector<std::pair<std::uint64_t, mpz_class*>> keys;
  keys.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (sgn(c) != 0) keys.emplace_back(k, &c);
  std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  const mpz_class scale = la * lb;
  std::vector<Term> out;
  out.reserve(keys.size());
  for (const auto& [k, c] : keys) out.push_back({unpack(p, k), Rat(*c, scale)});
  return MPoly::from_sorted_terms(nv, std::move(out));
}

}  // namespace

MPoly operator*(const MPoly& a, const MPoly& b) {
  const std::size_t nv = common_nvars(a, b);
  if (a.is_zero() || b.is_zero()) return MPoly(nv);
  if (a.is_constant()) return b.with_nvars(nv) * a.constant_term();
  if (b.is_constant()) return a.with_nvars(nv) * b.constant_term();
  if (const auto p = packing_for_product(a, b, nv)) return multiply_packed(a, b, nv, *p);

  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  Monomial m(nv);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t k = 0; k < nv; ++k) m[k] = static_cast<Exponent>(ta.exps[k] + tb.exps[k]);
      auto [it, inserted] = acc.try_emplace(m, ta.coef);
      if (inserted) {
        it->second *= tb.coef;
      } else {
        it->second += ta.coef * tb.coef;
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [mono, c] : acc)
    if (!c.is_zero()) out.push_back({mono, std::move(c)});
  std::sort(out.begin(), out.end(), grlex_greater);
  MPoly r(nv);
  r.terms_ = std::move(out);
  return r;
}

MPoly operator-(MPoly a) {
  for (auto& t : a.terms_) t.coef = -t.coef;
  return a;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.nvars_ == b.nvars_ || a.nvars_ == 0 || b.nvars_ == 0) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].coef == b.terms_[i].coef)) return false;
      if (grlex_compare(a.terms_[i].exps, b.terms_[i].exps) != 0) return false;
    }
    return true;
  }
  return false;
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  const std::size_t nv = common_nvars(a, b);
  if (a.is_zero()) return MPoly(nv);
  if (b.is_constant()) return a.with_nvars(nv) * b.constant_term().inverse();

  const MPoly bb = b.with_nvars(nv);
  const Term& lb = bb.leading_term();
  const Rat lb_inv = lb.coef.inverse();
  MPoly r = a.with_nvars(nv);
  std::vector<Term> quotient;
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    Monomial q(nv);
    for (std::size_t k = 0; k < nv; ++k) {
      if (lr.exps[k] < lb.exps[k]) return std::nullopt;
      q[k] = static_cast<Exponent>(lr.exps[k] - lb.exps[k]);
    }
    const Term t{std::move(q), lr.coef * lb_inv};
    r -= MPoly::monomial(t.exps, t.coef) * bb;
    quotient.push_back(t);
  }
  return MPoly::from_terms(nv, std::move(quotient));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
public:
  PolyParser(std::string_view text, std::size_t nvars, std::span<const std::string> names)
      : s_(text), nvars_(nvars), names_(names) {}

  MPoly parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    MPoly p = parse_sum();
    skip_ws();
    if (!at_end()) fail("unexpected character");
    return p;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  std::span<const std::string> names_;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("MPoly::parse: " + what + " at offset " + std::to_string(pos_) +
                                " in '" + std::string(s_) + "'");
  }

  // sum := ['+'|'-'] product { ('+'|'-') product }
  MPoly parse_sum() {
    MPoly acc(nvars_);
    bool first = true;
    for (;;) {
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        return acc;
      }
      MPoly t = parse_product();
      acc = sign < 0 ? acc - t : acc + t;
      first = false;
    }
  }

  // product := power { '*' power }
  MPoly parse_product() {
    MPoly acc = parse_power();
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') return acc;
      ++pos_;
      acc = acc * parse_power();
    }
  }

  // power := primary [ '^' digits ]
  MPoly parse_power() {
    MPoly base = parse_primary();
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(read_digits()))));
    }
    return base;
  }

  // primary := number | variable | '(' sum ')'
  MPoly parse_primary() {
    skip_ws();
    if (at_end()) fail("dangling operator");
    if (peek() == '(') {
      ++pos_;
      MPoly inner = parse_sum();
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return MPoly(parse_number(), nvars_);
    return MPoly::variable(parse_variable(), nvars_);
  }

  std::string_view read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  Rat parse_number() {
    std::string num(read_digits());
    if (!at_end() && peek() == '/' && pos_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      num += "/" + std::string(read_digits());
    }
    return Rat::parse(num);
  }

  std::size_t parse_variable() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) fail("expected a variable or number");
    for (std::size_t i = 0; i < nvars_; ++i) {
      const std::string& candidate = i < names_.size() ? names_[i] : default_name(i);
      if (candidate == name) return i;
    }
    fail("unknown variable '" + name + "'");
  }
};

}  // namespace

MPoly MPoly::parse(std::string_view text, std::size_t nvars, std::span<const std::string> names) {
  return PolyParser(text, nvars, names).parse();
}

}  // namespace commfam
