#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace flopgw {

/// Exact rational number, always in lowest terms with a positive denominator.
class BigRational {
public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}                       // NOLINT(implicit)
  BigRational(int v) : v_(static_cast<long>(v)) {}      // NOLINT(implicit)
  BigRational(long num, long den);
  explicit BigRational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
  /// or a zero denominator.
  static BigRational parse(std::string_view text);

  /// "p/q", or just "p" when the denominator is one.
  std::string str() const;

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  /// Throws std::domain_error on division by zero.
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Integer power; negative exponents invert (std::domain_error on 0^-k).
  BigRational pow(long e) const;

  std::size_t hash() const;

private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& q);

/// Binomial coefficient C(n, k) as an exact integer; zero outside 0 <= k <= n.
BigRational binomial(long n, long k);
BigRational factorial(long n);

}  // namespace flopgw

template <>
struct std::hash<flopgw::BigRational> {
  std::size_t operator()(const flopgw::BigRational& q) const { return q.hash(); }
};
