#include "flopgw/flop.hpp"

#include "flopgw/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace flopgw::flop {

Convention parse_convention(std::string_view text) {
  if (text == "paper") return Convention::Paper;
  if (text == "chern") return Convention::Chern;
  throw std::invalid_argument("unknown convention '" + std::string(text) + "' (expected paper or chern)");
}

std::string to_string(Convention c) { return c == Convention::Paper ? "paper" : "chern"; }

BigRational ExceptionalCorrectionConvention::value_at(int n) const { return self_intersection(n, mode); }

PresentationData projective_space(int n, const std::string& gen, const std::string& name) {
  PresentationData d;
  d.name = name.empty() ? "P^" + std::to_string(n) : name;
  d.generators = {{gen, 2}};
  d.relations = {gen + "^" + std::to_string(n + 1)};
  d.top_degree = 2 * n;
  d.normalizer = gen + "^" + std::to_string(n);
  return d;
}

PresentationData incidence_divisor(int n) {
  PresentationData d;
  d.name = "E(" + std::to_string(n) + ")";
  d.generators = {{"h", 2}, {"h'", 2}};
  const std::string np1 = std::to_string(n + 1);
  d.relations = {"h^" + np1, "h'^" + np1};
  std::string alt;
  for (int i = 0; i <= n; ++i) {
    alt += (i == 0 ? "" : (i % 2 ? " - " : " + "));
    alt += "h^" + std::to_string(i) + "*h'^" + std::to_string(n - i);
  }
  d.relations.push_back(alt);
  d.top_degree = 2 * (2 * n - 1);
  d.normalizer = "h^" + std::to_string(n) + "*h'^" + std::to_string(n - 1);
  return d;
}

namespace {

PresentationData product_space(int n) {
  PresentationData d;
  d.name = "P^" + std::to_string(n) + "x(P^" + std::to_string(n) + ")*";
  d.generators = {{"h", 2}, {"h'", 2}};
  const std::string np1 = std::to_string(n + 1);
  d.relations = {"h^" + np1, "h'^" + np1};
  d.top_degree = 4 * n;
  d.normalizer = "h^" + std::to_string(n) + "*h'^" + std::to_string(n);
  return d;
}

RingMap make_map(std::string name, const RingPtr& source, const RingPtr& target,
                 const std::vector<std::string>& images) {
  std::vector<ClassElement> imgs;
  for (const auto& s : images) imgs.push_back(source->parse(s));
  return RingMap(std::move(name), source, target, std::move(imgs));
}

struct Rings {
  RingPtr pn, dual, product, e;
};

Rings build_rings(int n) {
  if (n < 2)
    throw InvalidGeometry("Mukai flop needs n >= 2 (n = " + std::to_string(n) +
                          " gives normal bundle O(-2), not a Mukai datum)");
  return {build_ring(projective_space(n, "H")), build_ring(projective_space(n, "H'", "(P^" + std::to_string(n) + ")*")),
          build_ring(product_space(n)), build_ring(incidence_divisor(n))};
}

}  // namespace

FlopGeometry build_geometry(int n) {
  Rings r = build_rings(n);
  FlopGeometry g{n,
                 r.pn,
                 r.dual,
                 r.product,
                 r.e,
                 make_map("p", r.e, r.pn, {"h"}),
                 make_map("q", r.e, r.dual, {"h'"}),
                 make_map("j", r.e, r.product, {"h", "h'"})};
  return g;
}

ClassElement FlopGeometry::cycle(int k) const {
  if (k < 0 || k > n) throw std::out_of_range("cycle dimension out of range");
  return pn->generator(0).pow(n - k);
}

ClassElement FlopGeometry::dual_cycle(int k) const {
  if (k < 0 || k > n) throw std::out_of_range("cycle dimension out of range");
  return dual->generator(0).pow(n - k);
}

BigRational FlopGeometry::dual_cycle_coefficient(const ClassElement& x, int k) const {
  if (x.is_zero()) return BigRational(0);
  const ClassElement basis = dual_cycle(k);
  const Exponents& m = basis.coeffs().begin()->first;
  const BigRational c = x.coefficient(m) / basis.coeffs().begin()->second;
  if (!(c * basis == x)) throw std::logic_error("class " + x.str() + " is not a multiple of (P^" + std::to_string(k) + ")*");
  return c;
}

ClassElement excess_chern(const FlopGeometry& g) {
  const int n = g.n;
  const ClassElement h = g.e->generator("h");
  const ClassElement hd = g.e->generator("h'");
  ClassElement out = g.e->zero();
  for (int i = 0; i <= n - 1; ++i) {
    for (int j = 0; j <= n - i - 1; ++j) {
      BigRational c = binomial(n + 1, i) * binomial(n - i - 1, j);
      if (i % 2) c = -c;
      out += c * (hd.pow(n - i - j - 1) * h.pow(i + j));
    }
  }
  return out;
}

ClassElement excess_chern_total(const FlopGeometry& g) {
  const int n = g.n;
  const ClassElement h = g.e->generator("h");
  const ClassElement c1 = h + g.e->generator("h'");
  ClassElement cotangent = g.e->zero();
  for (int i = 0; i <= n + 1; ++i) {
    BigRational c = binomial(n + 1, i);
    if (i % 2) c = -c;
    cotangent += c * h.pow(i);
  }
  ClassElement inverse_line = g.e->zero();
  for (int j = 0; j <= 2 * n - 1; ++j) inverse_line += c1.pow(j);
  return cotangent * inverse_line;
}

ClassElement exceptional_pullback(const FlopGeometry& g, const ClassElement& x) {
  if (!x.is_homogeneous()) throw std::invalid_argument("exceptional_pullback needs a homogeneous class");
  return excess_chern(g) * g.p.pullback(x);
}

ClassElement flop_image(const FlopGeometry& g, const ClassElement& x) {
  return g.q.pushforward(exceptional_pullback(g, x));
}

ClassElement flop_T(const FlopGeometry& g, const ClassElement& x, ExceptionalCorrectionConvention conv) {
  ClassElement out = flop_image(g, x);
  const BigRational top_coeff = x.component(0).coefficient(Exponents(1, 0));
  if (!top_coeff.is_zero()) {
    BigRational sign = (g.n + 1) % 2 ? BigRational(-1) : BigRational(1);
    const ClassElement correction = g.e->generator("h").pow(g.n - 1);
    out += (top_coeff * sign * conv.value_at(g.n)) * g.q.pushforward(correction);
  }
  return out;
}

BigRational flop_image_binomial(int n, int k) {
  BigRational s(0);
  if (k < n) {
    for (int i = 0; i <= k; ++i) {
      BigRational t = binomial(n + 1, i) * binomial(n - i, k - i);
      s += (i % 2) ? -t : t;
    }
  } else {
    for (int i = 0; i <= n - 1; ++i) {
      BigRational t = binomial(n + 1, i);
      s += (i % 2) ? -t : t;
    }
  }
  return s;
}

BigRational self_intersection(int n, Convention conv) {
  if (n < 2) throw InvalidGeometry("self_intersection needs n >= 2");
  if (conv == Convention::Paper) return BigRational(-(n + 1));
  return BigRational(n % 2 ? -(n + 1) : (n + 1));
}

BigRational quantum_corrected_triple(const RingPresentation& model, const ClassElement& a, const ClassElement& b,
                                     const ClassElement& c, const std::vector<SeriesTerm>& series) {
  BigRational out = model.integrate(a * b * c);
  for (const auto& t : series) out += (t.degree % 2 ? -t.value : t.value);
  return out;
}

std::vector<TMapRow> t_map_table(const FlopGeometry& g, ExceptionalCorrectionConvention conv) {
  std::vector<TMapRow> rows;
  for (int k = 0; k <= g.n; ++k) {
    TMapRow r;
    r.k = k;
    r.image = g.dual_cycle_coefficient(flop_image(g, g.cycle(k)), k);
    r.binomial = flop_image_binomial(g.n, k);
    r.t_value = g.dual_cycle_coefficient(flop_T(g, g.cycle(k), conv), k);
    rows.push_back(r);
  }
  return rows;
}

std::string describe_dual_cycle(const BigRational& coeff, int k) {
  return coeff.str() + " * (P^" + std::to_string(k) + ")*";
}

nlohmann::json geometry_summary(const FlopGeometry& g) {
  auto ring_json = [](const RingPtr& r) {
    nlohmann::json j;
    j["name"] = r->name();
    j["top_degree"] = r->top_degree();
    j["betti"] = r->betti();
    j["relations"] = r->data().relations;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& gen : r->data().generators) gens.push_back({{"name", gen.name}, {"degree", gen.degree}});
    j["generators"] = gens;
    j["normalizer"] = r->data().normalizer;
    return j;
  };
  nlohmann::json j;
  j["n"] = g.n;
  j["rings"] = {ring_json(g.pn), ring_json(g.dual), ring_json(g.product), ring_json(g.e)};
  j["excess_chern"] = excess_chern(g).str();
  j["class_of_E"] = g.incl.pushforward(g.e->one()).str();
  return j;
}

nlohmann::json t_map_json(const FlopGeometry& g, ExceptionalCorrectionConvention conv) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t_map_table(g, conv)) {
    rows.push_back({{"k", r.k},
                    {"image", r.image.str()},
                    {"binomial", r.binomial.str()},
                    {"T", r.t_value.str()},
                    {"T_image", describe_dual_cycle(r.t_value, r.k)}});
  }
  return {{"n", g.n}, {"convention", to_string(conv.mode)}, {"alpha", conv.value_at(g.n).str()}, {"rows", rows}};
}

}  // namespace flopgw::flop
