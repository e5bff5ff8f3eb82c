#include "flopgw/errors.hpp"
#include "flopgw/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace flopgw {

Polynomial Polynomial::constant(std::size_t num_vars, const BigRational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  Polynomial p(num_vars);
  Exponents e(num_vars, 0);
  e.at(index) = 1;
  p.add_term(e, BigRational(1));
  return p;
}

void Polynomial::add_term(const Exponents& e, const BigRational& c) {
  if (e.size() != num_vars_) throw std::invalid_argument("monomial has wrong number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (num_vars_ == 0 && terms_.empty()) num_vars_ = o.num_vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (num_vars_ == 0 && terms_.empty()) num_vars_ = o.num_vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const BigRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.num_vars_, b.num_vars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial r = constant(num_vars_, BigRational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

namespace {

class PolyParser {
public:
  PolyParser(std::string_view text, const std::vector<std::string>& names) : s_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "polynomial parse error at " << pos_ << " in '" << s_ << "': " << msg;
    throw std::invalid_argument(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  Polynomial unary() {
    if (accept('-')) return unary() * BigRational(-1);
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      return base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("')' expected");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const std::string den = digits();
        if (den.empty()) fail("denominator expected");
        num += "/" + den;
      }
      try {
        return Polynomial::constant(names_.size(), BigRational::parse(num));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      const auto it = std::find(names_.begin(), names_.end(), id);
      if (it == names_.end()) throw UnknownGenerator("unknown generator '" + id + "'");
      return Polynomial::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  Polynomial p = PolyParser(text, names).parse();
  // A pure constant parsed before any variable may still have the right arity.
  if (p.num_vars() != names.size()) {
    Polynomial q(names.size());
    for (const auto& [e, c] : p.terms()) {
      Exponents f(names.size(), 0);
      std::copy(e.begin(), e.end(), f.begin());
      q.add_term(f, c);
    }
    return q;
  }
  return p;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names,
                              const std::vector<int>& degrees) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponents, BigRational>> terms(p.terms().begin(), p.terms().end());
  auto weight = [&](const Exponents& e) {
    int w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * degrees.at(i);
    return w;
  };
  // graded lex, highest first
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    const int wa = weight(a.first), wb = weight(b.first);
    if (wa != wb) return wa > wb;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    BigRational mag = c.sign() < 0 ? -c : c;
    std::string piece;
    if (mono.empty()) piece = mag.str();
    else if (mag == BigRational(1)) piece = mono;
    else piece = mag.str() + "*" + mono;
    if (first) out += (c.sign() < 0 ? "-" : "") + piece;
    else out += (c.sign() < 0 ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

}  // namespace flopgw
