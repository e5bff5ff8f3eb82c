#include "flopgw/errors.hpp"
#include "flopgw/ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flopgw {

namespace {

void enumerate_monomials(const std::vector<int>& weights, int target, std::size_t index, Exponents& cur,
                         std::vector<Exponents>& out) {
  if (index == weights.size()) {
    if (target == 0) out.push_back(cur);
    return;
  }
  for (int e = target / weights[index]; e >= 0; --e) {
    cur[index] = e;
    enumerate_monomials(weights, target - e * weights[index], index + 1, cur, out);
  }
  cur[index] = 0;
}

using SparseRow = std::map<Exponents, BigRational>;

void axpy(SparseRow& row, const BigRational& a, const SparseRow& other) {
  for (const auto& [m, c] : other) {
    auto [it, inserted] = row.try_emplace(m, BigRational(0));
    it->second -= a * c;
    if (it->second.is_zero()) row.erase(it);
  }
}

}  // namespace

RingPresentation::RingPresentation(Private, PresentationData data) : data_(std::move(data)) {}

std::shared_ptr<const RingPresentation> RingPresentation::build(PresentationData data) {
  auto ring = std::make_shared<RingPresentation>(Private{}, std::move(data));
  ring->compute_pieces();
  ring->verify();
  return ring;
}

std::vector<std::string> RingPresentation::generator_names() const {
  std::vector<std::string> out;
  for (const auto& g : data_.generators) out.push_back(g.name);
  return out;
}

std::vector<int> RingPresentation::generator_degrees() const {
  std::vector<int> out;
  for (const auto& g : data_.generators) out.push_back(g.degree);
  return out;
}

int RingPresentation::degree_of(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += 2 * weights_[i] * e[i];
  return d;
}

void RingPresentation::compute_pieces() {
  if (data_.generators.empty()) throw InvalidPresentation("ring '" + data_.name + "' has no generators");
  if (data_.top_degree < 0 || data_.top_degree % 2 != 0)
    throw InvalidPresentation("top degree must be a non-negative even integer");
  for (const auto& g : data_.generators) {
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw InvalidPresentation("generator '" + g.name + "' must have positive even degree");
    weights_.push_back(g.degree / 2);
  }
  for (std::size_t i = 0; i < data_.generators.size(); ++i)
    for (std::size_t j = i + 1; j < data_.generators.size(); ++j)
      if (data_.generators[i].name == data_.generators[j].name)
        throw InvalidPresentation("duplicate generator '" + data_.generators[i].name + "'");
  max_weight_ = *std::max_element(weights_.begin(), weights_.end());

  const auto names = generator_names();
  std::vector<int> rel_weight;
  for (const auto& text : data_.relations) {
    Polynomial p = parse_polynomial(text, names);
    if (p.is_zero()) continue;
    int w = -1;
    for (const auto& [e, c] : p.terms()) {
      const int we = degree_of(e) / 2;
      if (w >= 0 && we != w) throw RelationNotHomogeneous("relation '" + text + "' is not homogeneous");
      w = we;
    }
    relations_.push_back(std::move(p));
    rel_weight.push_back(w);
  }

  const int max_d = data_.top_degree / 2 + max_weight_;
  pieces_.resize(static_cast<std::size_t>(max_d) + 1);
  for (int d = 0; d <= max_d; ++d) {
    Piece& pc = pieces_[static_cast<std::size_t>(d)];
    Exponents cur(weights_.size(), 0);
    enumerate_monomials(weights_, d, 0, cur, pc.monomials);
    std::sort(pc.monomials.begin(), pc.monomials.end(), std::greater<>());
    for (std::size_t i = 0; i < pc.monomials.size(); ++i) pc.column[pc.monomials[i]] = i;

    for (std::size_t r = 0; r < relations_.size(); ++r) {
      const int rest = d - rel_weight[r];
      if (rest < 0) continue;
      std::vector<Exponents> multipliers;
      Exponents c2(weights_.size(), 0);
      enumerate_monomials(weights_, rest, 0, c2, multipliers);
      for (const auto& m : multipliers) {
        SparseRow row;
        for (const auto& [e, c] : relations_[r].terms()) {
          Exponents f(e);
          for (std::size_t i = 0; i < f.size(); ++i) f[i] += m[i];
          row[f] += c;
        }
        std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
        // Reduce against existing pivots.
        for (const auto& [piv, prow] : pc.reducer) {
          auto it = row.find(piv);
          if (it == row.end()) continue;
          const BigRational a = it->second;
          axpy(row, a, prow);
        }
        if (row.empty()) continue;
        // Highest monomial is the largest key.
        const Exponents pivot = row.rbegin()->first;
        const BigRational lead = row.rbegin()->second;
        for (auto& [mm, cc] : row) cc /= lead;
        for (auto& [piv, prow] : pc.reducer) {
          auto it = prow.find(pivot);
          if (it == prow.end()) continue;
          const BigRational a = it->second;
          axpy(prow, a, row);
        }
        pc.reducer.emplace(pivot, std::move(row));
      }
    }
    for (const auto& m : pc.monomials)
      if (!pc.reducer.contains(m)) pc.standard.push_back(m);
  }
}

void RingPresentation::verify() {
  const int top = data_.top_degree / 2;
  for (std::size_t d = static_cast<std::size_t>(top) + 1; d < pieces_.size(); ++d) {
    if (!pieces_[d].standard.empty()) {
      std::ostringstream os;
      os << "ring '" << data_.name << "' does not vanish in degree " << 2 * d << " above top "
         << data_.top_degree;
      throw InvalidPresentation(os.str());
    }
  }
  const auto& top_basis = pieces_[static_cast<std::size_t>(top)].standard;
  if (top_basis.size() != 1)
    throw InvalidPresentation("ring '" + data_.name + "' top-degree piece has dimension " +
                              std::to_string(top_basis.size()));
  normalizer_standard_ = top_basis.front();

  Polynomial norm = parse_polynomial(data_.normalizer, generator_names());
  for (const auto& [e, c] : norm.terms())
    if (degree_of(e) != data_.top_degree)
      throw InvalidPresentation("normalizer '" + data_.normalizer + "' is not of top degree");
  auto terms = norm.terms();
  reduce_homogeneous(top, terms);
  const auto it = terms.find(normalizer_standard_);
  if (it == terms.end()) throw DegeneratePairing("normalizer '" + data_.normalizer + "' is zero in the ring");
  normalizer_scale_ = it->second;

  for (int d = 0; d <= top; ++d) {
    const auto& a = pieces_[static_cast<std::size_t>(d)].standard;
    const auto& b = pieces_[static_cast<std::size_t>(top - d)].standard;
    if (a.size() != b.size() || matrix_rank(pairing_matrix(2 * d)) != a.size()) {
      std::ostringstream os;
      os << "Poincare pairing of ring '" << data_.name << "' is degenerate in degrees " << 2 * d << " x "
         << 2 * (top - d);
      throw DegeneratePairing(os.str());
    }
  }
}

const RingPresentation::Piece* RingPresentation::piece(int deg) const {
  if (deg < 0 || deg % 2 != 0) return nullptr;
  const auto d = static_cast<std::size_t>(deg / 2);
  return d < pieces_.size() ? &pieces_[d] : nullptr;
}

void RingPresentation::reduce_homogeneous(int d, std::map<Exponents, BigRational>& terms) const {
  if (d < 0 || static_cast<std::size_t>(d) >= pieces_.size()) {
    terms.clear();
    return;
  }
  const Piece& pc = pieces_[static_cast<std::size_t>(d)];
  std::vector<std::pair<const Exponents*, BigRational>> hits;
  for (const auto& [m, c] : terms) {
    auto it = pc.reducer.find(m);
    if (it != pc.reducer.end()) hits.emplace_back(&it->first, c);
  }
  for (const auto& [piv, c] : hits) {
    axpy(terms, c, pc.reducer.at(*piv));
  }
}

const std::vector<Exponents>& RingPresentation::basis(int deg) const {
  static const std::vector<Exponents> empty;
  if (deg > data_.top_degree) return empty;
  const Piece* pc = piece(deg);
  return pc ? pc->standard : empty;
}

std::vector<std::size_t> RingPresentation::betti() const {
  std::vector<std::size_t> out;
  for (int d = 0; d <= data_.top_degree; d += 2) out.push_back(basis(d).size());
  return out;
}

std::vector<ClassElement> RingPresentation::basis_classes(int deg) const {
  std::vector<ClassElement> out;
  for (const auto& m : basis(deg)) out.push_back(monomial(m));
  return out;
}

std::vector<ClassElement> RingPresentation::full_basis() const {
  std::vector<ClassElement> out;
  for (int d = 0; d <= data_.top_degree; d += 2)
    for (auto& c : basis_classes(d)) out.push_back(std::move(c));
  return out;
}

ClassElement RingPresentation::zero() const { return ClassElement(shared_from_this(), {}); }

ClassElement RingPresentation::one() const { return scalar(BigRational(1)); }

ClassElement RingPresentation::scalar(const BigRational& c) const {
  return normal_form(Polynomial::constant(num_generators(), c));
}

ClassElement RingPresentation::generator(std::size_t index) const {
  if (index >= num_generators()) throw UnknownGenerator("generator index out of range");
  return normal_form(Polynomial::variable(num_generators(), index));
}

ClassElement RingPresentation::generator(std::string_view name) const {
  for (std::size_t i = 0; i < num_generators(); ++i)
    if (data_.generators[i].name == name) return generator(i);
  throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
}

ClassElement RingPresentation::monomial(const Exponents& e) const {
  Polynomial p(num_generators());
  p.add_term(e, BigRational(1));
  return normal_form(p);
}

ClassElement RingPresentation::normal_form(const Polynomial& p) const {
  if (p.num_vars() != num_generators() && !p.is_zero())
    throw RingMismatch("polynomial arity does not match ring '" + data_.name + "'");
  std::map<int, std::map<Exponents, BigRational>> by_degree;
  for (const auto& [e, c] : p.terms()) by_degree[degree_of(e) / 2].emplace(e, c);
  std::map<Exponents, BigRational> out;
  for (auto& [d, terms] : by_degree) {
    reduce_homogeneous(d, terms);
    out.merge(terms);
  }
  return ClassElement(shared_from_this(), std::move(out));
}

ClassElement RingPresentation::parse(std::string_view expr) const {
  return normal_form(parse_polynomial(expr, generator_names()));
}

BigRational RingPresentation::integrate(const ClassElement& x) const {
  if (x.ring() && x.ring().get() != this) throw RingMismatch("integrating a class from another ring");
  return x.coefficient(normalizer_standard_) / normalizer_scale_;
}

std::vector<std::vector<BigRational>> RingPresentation::pairing_matrix(int deg) const {
  const auto a = basis_classes(deg);
  const auto b = basis_classes(data_.top_degree - deg);
  std::vector<std::vector<BigRational>> m(a.size(), std::vector<BigRational>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = integrate(a[i] * b[j]);
  return m;
}

// ---------------------------------------------------------------- ClassElement

void ClassElement::check_same_ring(const ClassElement& o) const {
  if (ring_ && o.ring_ && ring_ != o.ring_) throw RingMismatch("classes live in different rings");
}

int ClassElement::degree() const {
  if (coeffs_.empty()) return -1;
  const int d = ring_->degree_of(coeffs_.begin()->first);
  for (const auto& [e, c] : coeffs_)
    if (ring_->degree_of(e) != d) throw std::logic_error("class is not homogeneous");
  return d;
}

bool ClassElement::is_homogeneous() const {
  if (coeffs_.empty()) return true;
  const int d = ring_->degree_of(coeffs_.begin()->first);
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](const auto& kv) { return ring_->degree_of(kv.first) == d; });
}

ClassElement ClassElement::component(int deg) const {
  std::map<Exponents, BigRational> out;
  for (const auto& [e, c] : coeffs_)
    if (ring_->degree_of(e) == deg) out.emplace(e, c);
  return ClassElement(ring_, std::move(out));
}

BigRational ClassElement::coefficient(const Exponents& monomial) const {
  auto it = coeffs_.find(monomial);
  return it == coeffs_.end() ? BigRational(0) : it->second;
}

Polynomial ClassElement::to_polynomial() const {
  Polynomial p(ring_ ? ring_->num_generators() : 0);
  for (const auto& [e, c] : coeffs_) p.add_term(e, c);
  return p;
}

std::string ClassElement::str() const {
  if (!ring_) return "0";
  return format_polynomial(to_polynomial(), ring_->generator_names(), ring_->generator_degrees());
}

ClassElement& ClassElement::operator+=(const ClassElement& o) {
  check_same_ring(o);
  if (!ring_) ring_ = o.ring_;
  for (const auto& [e, c] : o.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

ClassElement& ClassElement::operator-=(const ClassElement& o) { return *this += -o; }

ClassElement operator-(const ClassElement& a) { return BigRational(-1) * a; }

ClassElement operator*(const BigRational& c, const ClassElement& a) {
  if (c.is_zero()) return ClassElement(a.ring_, {});
  std::map<Exponents, BigRational> out;
  for (const auto& [e, v] : a.coeffs_) out.emplace(e, c * v);
  return ClassElement(a.ring_, std::move(out));
}

ClassElement operator*(const ClassElement& a, const ClassElement& b) {
  a.check_same_ring(b);
  const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
  if (!ring || a.is_zero() || b.is_zero()) return ClassElement(ring, {});
  return ring->normal_form(a.to_polynomial() * b.to_polynomial());
}

bool operator==(const ClassElement& a, const ClassElement& b) {
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_) return false;
  return a.coeffs_ == b.coeffs_;
}

ClassElement ClassElement::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative class power");
  ClassElement r = ring_->one();
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::ostream& operator<<(std::ostream& os, const ClassElement& x) { return os << x.str(); }

// --------------------------------------------------------------------- RingMap

RingMap::RingMap(std::string name, RingPtr source, RingPtr target, std::vector<ClassElement> generator_images)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
      images_(std::move(generator_images)) {
  if (!source_ || !target_) throw RingMismatch("ring map '" + name_ + "' needs both rings");
  if (images_.size() != target_->num_generators())
    throw RingMismatch("ring map '" + name_ + "' needs one image per target generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto& img = images_[i];
    if (img.is_zero()) {
      img = source_->zero();
      continue;
    }
    if (img.ring() != source_) throw RingMismatch("image of a generator is not in the source ring");
    if (!img.is_homogeneous() || img.degree() != target_->data().generators[i].degree)
      throw InvalidPresentation("ring map '" + name_ + "': image of '" + target_->data().generators[i].name +
                                "' has the wrong degree");
  }
  const int diff = source_->top_degree() - target_->top_degree();
  if (diff % 2 != 0) throw NonRepresentable("ring map '" + name_ + "' has odd relative dimension");
  fiber_dim_ = diff / 2;
  for (const auto& r : target_->relations())
    if (!pull_polynomial(r).is_zero())
      throw InvalidPresentation("ring map '" + name_ + "' does not respect a target relation");
}

ClassElement RingMap::pull_polynomial(const Polynomial& p) const {
  ClassElement out = source_->zero();
  for (const auto& [e, c] : p.terms()) {
    ClassElement term = source_->scalar(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * images_[i].pow(e[i]);
    out += term;
  }
  return out;
}

ClassElement RingMap::pullback(const ClassElement& x) const {
  if (x.ring() && x.ring() != target_) throw RingMismatch("pullback of a class outside the target ring");
  return pull_polynomial(x.to_polynomial());
}

ClassElement RingMap::pushforward(const ClassElement& x) const {
  if (x.ring() && x.ring() != source_) throw RingMismatch("pushforward of a class outside the source ring");
  ClassElement out = target_->zero();
  std::map<int, bool> degrees;
  for (const auto& [e, c] : x.coeffs()) degrees[source_->degree_of(e)] = true;
  for (const auto& [deg, unused] : degrees) {
    const int ydeg = deg - 2 * fiber_dim_;
    if (ydeg < 0 || ydeg > target_->top_degree()) continue;
    const ClassElement part = x.component(deg);
    const auto basis = target_->basis_classes(ydeg);
    const auto dual = target_->basis_classes(target_->top_degree() - ydeg);
    std::vector<std::vector<BigRational>> a(dual.size(), std::vector<BigRational>(basis.size()));
    std::vector<BigRational> b(dual.size());
    for (std::size_t j = 0; j < dual.size(); ++j) {
      for (std::size_t i = 0; i < basis.size(); ++i) a[j][i] = target_->integrate(basis[i] * dual[j]);
      b[j] = source_->integrate(part * pullback(dual[j]));
    }
    const auto coeffs = solve_linear(std::move(a), std::move(b));
    for (std::size_t i = 0; i < basis.size(); ++i) out += coeffs[i] * basis[i];
  }
  return out;
}

// -------------------------------------------------------------- linear algebra

std::size_t matrix_rank(std::vector<std::vector<BigRational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const BigRational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<BigRational> solve_linear(std::vector<std::vector<BigRational>> a, std::vector<BigRational> b) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw NonRepresentable("pairing system is not square");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw NonRepresentable("pairing system is singular");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const BigRational inv = BigRational(1) / a[c][c];
    for (std::size_t k = c; k < n; ++k) a[c][k] *= inv;
    b[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const BigRational f = a[r][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  return b;
}

}  // namespace flopgw
