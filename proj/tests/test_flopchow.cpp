#include "doctest.h"

#include "flopgw/errors.hpp"
#include "flopgw/flop.hpp"

using namespace flopgw;
using namespace flopgw::flop;

namespace {

// c_m(Q) straight from c(Q) = (1 - h)^{n+1} * sum_j (h + h')^j, expanded with
// binomials and no reduction until the end.
ClassElement chern_component_by_expansion(const FlopGeometry& g, int m) {
  ClassElement out = g.e->zero();
  const auto h = g.e->generator("h");
  const auto c1 = h + g.e->generator("h'");
  for (int i = 0; i <= m; ++i) {
    BigRational c = binomial(g.n + 1, i);
    if (i % 2) c = -c;
    out += c * (h.pow(i) * c1.pow(m - i));
  }
  return out;
}

BigRational alternating_binomial_sum(int n, int k) {
  BigRational s(0);
  for (int i = 0; i <= k; ++i) {
    const BigRational t = binomial(n + 1, i) * binomial(n - i, k - i);
    s += i % 2 ? -t : t;
  }
  return s;
}

}  // namespace

TEST_CASE("build_geometry") {
  const auto g2 = build_geometry(2);
  CHECK(g2.e->betti() == std::vector<std::size_t>{1, 2, 2, 1});
  CHECK(g2.e->top_degree() == 6);
  // P^2-bundle over P^3: (1+t+t^2+t^3)(1+t+t^2).
  const auto g3 = build_geometry(3);
  CHECK(g3.e->betti() == std::vector<std::size_t>{1, 2, 3, 3, 2, 1});
  CHECK(g3.e->top_degree() == 10);
  CHECK_THROWS_AS(build_geometry(1), InvalidGeometry);
  CHECK_THROWS_AS(build_geometry(0), InvalidGeometry);
}

TEST_CASE("class of E in the product is h + h'") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = build_geometry(n);
    CHECK(g.incl.pushforward(g.e->one()) == g.product->parse("h + h'"));
  }
}

TEST_CASE("excess_chern for n = 2 is h' - 2h") {
  const auto g = build_geometry(2);
  CHECK(excess_chern(g) == g.e->parse("h' - 2*h"));
}

TEST_CASE("excess_chern matches the direct expansion of c(Q)") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = build_geometry(n);
    CHECK(excess_chern(g) == chern_component_by_expansion(g, n - 1));
    CHECK(excess_chern_total(g).component(2 * (n - 1)) == excess_chern(g));
  }
  const auto g3 = build_geometry(3);
  const auto c2 = excess_chern(g3);
  CHECK(c2.degree() == 4);
  CHECK(c2.coefficient({2, 0}) == chern_component_by_expansion(g3, 2).coefficient({2, 0}));
}

TEST_CASE("Whitney identity c(Q) c(O_E(-1)) = p^* c(T*P^n), n <= 5") {
  {
    const auto g = build_geometry(2);
    const auto lhs = (g.e->one() + g.e->parse("h' - 2*h")) * (g.e->one() - g.e->parse("h + h'"));
    CHECK(lhs == g.e->parse("1 - 3*h + 3*h^2"));
  }
  for (int n = 2; n <= 5; ++n) {
    const auto g = build_geometry(n);
    const auto total = excess_chern_total(g);
    // Q has rank n - 1, so c_m(Q) must vanish in A*(E) for m >= n.
    ClassElement truncated = g.e->zero();
    for (int m = 0; m <= n - 1; ++m) truncated += total.component(2 * m);
    CHECK(truncated == total);
    const auto line = g.e->one() - g.e->parse("h + h'");
    const auto cotangent = g.p.pullback(g.pn->parse("(1 - H)^" + std::to_string(n + 1)));
    CHECK(truncated * line == cotangent);
  }
}

TEST_CASE("exceptional_pullback") {
  const auto g2 = build_geometry(2);
  CHECK(exceptional_pullback(g2, g2.pn->parse("H^2")) == g2.e->parse("h^2*h'"));
  CHECK(exceptional_pullback(g2, g2.pn->one()) == g2.e->parse("h' - 2*h"));
  const auto g3 = build_geometry(3);
  const auto v = exceptional_pullback(g3, g3.pn->parse("H"));
  CHECK(v.degree() == 6);
  CHECK(v == excess_chern(g3) * g3.e->parse("h"));
}

TEST_CASE("flop_image reproduces the signed dual cycles") {
  const auto g2 = build_geometry(2);
  CHECK(flop_image(g2, g2.cycle(1)) == -g2.dual_cycle(1));
  CHECK(flop_image(g2, g2.cycle(0)) == g2.dual_cycle(0));
  CHECK(flop_image(g2, g2.cycle(2)) == BigRational(-2) * g2.dual_cycle(2));
  const auto g3 = build_geometry(3);
  CHECK(flop_image(g3, g3.cycle(3)) == BigRational(3) * g3.dual_cycle(3));
}

TEST_CASE("binomial collapse: pushforward path and closed form agree, n <= 8") {
  for (int n = 2; n <= 8; ++n) {
    const auto g = build_geometry(n);
    for (int k = 0; k < n; ++k) {
      const BigRational expected = k % 2 ? BigRational(-1) : BigRational(1);
      CHECK(alternating_binomial_sum(n, k) == expected);
      CHECK(flop_image_binomial(n, k) == expected);
      const auto img = flop_image(g, g.cycle(k));
      CHECK(img.degree() == 2 * (n - k));
      CHECK(g.dual_cycle_coefficient(img, k) == expected);
    }
    const BigRational top = (n + 1) % 2 ? BigRational(-n) : BigRational(n);
    CHECK(flop_image_binomial(n, n) == top);
    CHECK(g.dual_cycle_coefficient(flop_image(g, g.cycle(n)), n) == top);
  }
}

TEST_CASE("flop_T on [P^n] and below middle dimension") {
  const auto g3 = build_geometry(3);
  CHECK(flop_T(g3, g3.cycle(3)) == -g3.dual_cycle(3));
  const auto g2 = build_geometry(2);
  CHECK(flop_T(g2, g2.cycle(2)) == g2.dual_cycle(2));
  CHECK(flop_T(g2, g2.cycle(1)) == -g2.dual_cycle(1));
  CHECK(flop_T(g2, g2.cycle(1), {Convention::Chern}) == -g2.dual_cycle(1));
  // chern convention at even n: (-1)^{n+1} n - (n+1) = -5 for n = 2
  CHECK(flop_T(g2, g2.cycle(2), {Convention::Chern}) == BigRational(-5) * g2.dual_cycle(2));
  CHECK(flop_T(g3, g3.cycle(3), {Convention::Chern}) == -g3.dual_cycle(3));
}

TEST_CASE("T restricted to {[P^k]} is a signed bijection") {
  for (int n = 2; n <= 6; ++n) {
    const auto g = build_geometry(n);
    for (const auto conv : {Convention::Paper, Convention::Chern}) {
      if (conv == Convention::Chern && n % 2 == 0) continue;
      for (int k = 0; k <= n; ++k) {
        const auto t = flop_T(g, g.cycle(k), {conv});
        const auto c = g.dual_cycle_coefficient(t, k);
        CHECK((c == BigRational(1) || c == BigRational(-1)));
      }
    }
  }
}

TEST_CASE("flop_T is linear") {
  const auto g = build_geometry(3);
  const auto x = g.pn->parse("2*H^2");
  const auto y = g.pn->parse("H^2");
  CHECK(flop_T(g, x + y) == flop_T(g, x) + flop_T(g, y));
  CHECK(flop_T(g, BigRational(5) * g.cycle(3)) == BigRational(5) * flop_T(g, g.cycle(3)));
}

TEST_CASE("self_intersection conventions") {
  CHECK(self_intersection(3, Convention::Paper) == BigRational(-4));
  CHECK(self_intersection(3, Convention::Chern) == BigRational(-4));
  CHECK(self_intersection(2, Convention::Chern) == BigRational(3));
  CHECK(self_intersection(2, Convention::Paper) == BigRational(-3));
  CHECK_THROWS_AS(self_intersection(1, Convention::Paper), InvalidGeometry);
  // chern value = integral of c_n(T*P^n) = coefficient of H^n in (1 - H)^{n+1}
  for (int n = 2; n <= 7; ++n) {
    const auto pn = build_ring(projective_space(n));
    const auto c = pn->parse("(1 - H)^" + std::to_string(n + 1)).component(2 * n);
    CHECK(pn->integrate(c) == self_intersection(n, Convention::Chern));
    CHECK((self_intersection(n, Convention::Chern) == self_intersection(n, Convention::Paper)) == (n % 2 == 1));
  }
}

TEST_CASE("quantum_corrected_triple") {
  const auto g = build_geometry(2);
  const auto& r = *g.product;
  const auto basis = r.full_basis();
  for (const auto& a : basis)
    for (const auto& b : basis) {
      const auto c = r.parse("h*h'");
      CHECK(quantum_corrected_triple(r, a, b, c, {}) == r.integrate(a * b * c));
      CHECK(quantum_corrected_triple(r, a, b, c, {{1, BigRational(0)}, {2, BigRational(0)}}) ==
            r.integrate(a * b * c));
    }
  const auto one = r.one();
  CHECK(quantum_corrected_triple(r, one, one, one, {{1, BigRational(1)}, {2, BigRational(1)}}) == BigRational(0));
  CHECK(quantum_corrected_triple(r, one, one, one, {{1, BigRational(1, 2)}}) == BigRational(-1, 2));
}

TEST_CASE("T map table and JSON summary") {
  const auto g = build_geometry(2);
  const auto rows = t_map_table(g);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].image == BigRational(-1));
  CHECK(rows[2].t_value == BigRational(1));
  const auto j = t_map_json(g);
  CHECK(j["rows"][1]["T_image"] == "-1 * (P^1)*");
  CHECK(j["alpha"] == "-3");
  const auto s = geometry_summary(g);
  CHECK(s["rings"][3]["betti"] == nlohmann::json({1, 2, 2, 1}));
  CHECK(s["class_of_E"] == "h + h'");
}
