#include "commfam/exact/rat.hpp"

#include <cctype>

#include <ostream>
#include <stdexcept>

namespace commfam {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(mpz_class(num), mpz_class(den));
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string s(text);
  const auto slash = s.find('/');
  mpz_class n, d = 1;
  bool ok = !s.empty();
  if (ok && slash == std::string::npos) {
    ok = n.set_str(s, 10) == 0;
  } else if (ok) {
    ok = slash > 0 && slash + 1 < s.size() && n.set_str(s.substr(0, slash), 10) == 0 &&
         d.set_str(s.substr(slash + 1), 10) == 0;
  }
  if (!ok) throw std::invalid_argument("Rat::parse: not a rational: '" + s + "'");
  if (d == 0) throw std::domain_error("Rat::parse: zero denominator in '" + s + "'");
  return Rat(n, d);
}

std::size_t Rat::bit_size() const {
  return mpz_sizeinbase(v_.get_num_mpz_t(), 2) + mpz_sizeinbase(v_.get_den_mpz_t(), 2);
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("Rat: inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat Rat::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rat(n, d);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_.get_str(); }

Rat binomial(long n, long k) {
  if (k < 0) return Rat(0);
  Rat acc(1);
  for (long i = 0; i < k; ++i) acc = acc * Rat(n - i) / Rat(i + 1);
  return acc;
}

}  // namespace commfam
