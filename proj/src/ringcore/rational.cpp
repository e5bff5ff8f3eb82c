#include "flopgw/rational.hpp"

#include <stdexcept>

namespace flopgw {

BigRational::BigRational(long num, long den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  v_ = mpq_class(mpz_class(num), mpz_class(den));
  v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
  };
  const auto slash = text.find('/');
  const auto num_txt = text.substr(0, slash);
  if (!valid_int(num_txt)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  mpz_class num(strip_plus(num_txt), 10);
  mpz_class den(1);
  if (slash != std::string_view::npos) {
    const auto den_txt = text.substr(slash + 1);
    if (!valid_int(den_txt)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    den = mpz_class(strip_plus(den_txt), 10);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return BigRational(q);
}

std::string BigRational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  v_ /= o.v_;
  return *this;
}

BigRational BigRational::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw std::domain_error("BigRational: zero to a negative power");
    return BigRational(1) / pow(-e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return BigRational(mpq_class(n, d));
}

std::size_t BigRational::hash() const {
  // Low limbs are enough to spread keys; equality is still exact.
  const auto limb = [](const mpz_class& z) -> std::size_t {
    return mpz_size(z.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
  };
  std::size_t h = limb(v_.get_num()) * 0x9E3779B97F4A7C15ULL;
  h ^= limb(v_.get_den()) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(sgn(v_) + 1);
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.str(); }

BigRational binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return BigRational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return BigRational(mpq_class(r));
}

BigRational factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return BigRational(mpq_class(r));
}

}  // namespace flopgw
