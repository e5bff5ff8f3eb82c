#include "flopgw/ruan.hpp"

#include "flopgw/errors.hpp"

namespace flopgw::ruan {

RuanModel diagonal_model(int n) {
  if (n < 2) throw InvalidGeometry("the model needs n >= 2");
  PresentationData d;
  d.name = "P^" + std::to_string(n) + "xP^" + std::to_string(n);
  d.generators = {{"h1", 2}, {"h2", 2}};
  const std::string np1 = std::to_string(n + 1);
  d.relations = {"h1^" + np1, "h2^" + np1};
  d.top_degree = 4 * n;
  d.normalizer = "h1^" + std::to_string(n) + "*h2^" + std::to_string(n);
  return {build_ring(std::move(d)), {BigRational(1), BigRational(1)}, n};
}

std::vector<BigRational> restrict_to_exceptional(const RuanModel& m, const ClassElement& x) {
  const auto degs = m.ring->generator_degrees();
  if (m.restriction.size() != degs.size()) throw InvalidQuery("restriction needs one coefficient per generator");
  for (int g : degs)
    if (g != 2) throw InvalidQuery("restriction is only defined for degree-2 generators");
  std::vector<BigRational> out(static_cast<std::size_t>(m.n) + 1, BigRational(0));
  for (const auto& [e, c] : x.coeffs()) {
    int power = 0;
    BigRational coeff = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      power += e[i];
      coeff *= m.restriction[i].pow(e[i]);
    }
    if (power <= m.n) out[static_cast<std::size_t>(power)] += coeff;
  }
  return out;
}

BigRational ExceptionalInvariants::triple(int d, int a, int b, int c) {
  if (a + b + c != 2 * n_) return BigRational(0);
  const std::array<int, 4> key{d, a, b, c};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const gw::InvariantQuery q{n_, d, 3, {a, b, c}, gw::BundleSpec::cotangent()};
  return cache_.emplace(key, gw::invariant(q, opts_).value).first->second;
}

std::size_t ExceptionalInvariants::nonzero() const {
  std::size_t s = 0;
  for (const auto& [k, v] : cache_) s += v.is_zero() ? 0 : 1;
  return s;
}

std::vector<flop::SeriesTerm> correction_series(const RuanModel& m, ExceptionalInvariants& inv, int d_max,
                                                const ClassElement& a, const ClassElement& b, const ClassElement& c) {
  const auto ra = restrict_to_exceptional(m, a);
  const auto rb = restrict_to_exceptional(m, b);
  const auto rc = restrict_to_exceptional(m, c);
  std::vector<flop::SeriesTerm> out;
  for (int d = 1; d <= d_max; ++d) {
    BigRational psi(0);
    for (int i = 0; i <= m.n; ++i)
      for (int j = 0; j <= m.n; ++j)
        for (int k = 0; k <= m.n; ++k) {
          const auto& x = ra[static_cast<std::size_t>(i)];
          const auto& y = rb[static_cast<std::size_t>(j)];
          const auto& z = rc[static_cast<std::size_t>(k)];
          if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
          psi += x * y * z * inv.triple(d, i, j, k);
        }
    out.push_back({d, psi});
  }
  return out;
}

RuanReport ruan_collapse(int n, int d_max, const gw::InvariantOptions& opts) {
  if (d_max < 1) throw InvalidQuery("d_max must be >= 1");
  const RuanModel m = diagonal_model(n);
  ExceptionalInvariants inv(n, opts);
  // evaluate every balanced insertion triple up front so the report covers
  // them even if no basis triple happens to hit one
  for (int d = 1; d <= d_max; ++d)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        if (2 * n - a - b >= 0 && 2 * n - a - b <= n) inv.triple(d, a, b, 2 * n - a - b);
  RuanReport r{n, d_max, 0, 0, 0, 0};
  const auto basis = m.ring->full_basis();
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : basis) {
        ++r.triples;
        const auto series = correction_series(m, inv, d_max, a, b, c);
        if (flop::quantum_corrected_triple(*m.ring, a, b, c, series) != m.ring->integrate(a * b * c)) ++r.mismatches;
      }
  r.invariants_evaluated = inv.evaluated();
  r.invariants_nonzero = inv.nonzero();
  return r;
}

nlohmann::json to_json(const RuanReport& r) {
  return {{"n", r.n},
          {"d_max", r.d_max},
          {"model", "P^" + std::to_string(r.n) + "xP^" + std::to_string(r.n)},
          {"triples", r.triples},
          {"mismatches", r.mismatches},
          {"invariants_evaluated", r.invariants_evaluated},
          {"invariants_nonzero", r.invariants_nonzero},
          {"collapsed", r.collapsed()}};
}

}  // namespace flopgw::ruan
