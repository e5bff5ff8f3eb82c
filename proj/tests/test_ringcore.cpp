#include "doctest.h"

#include "flopgw/errors.hpp"
#include "flopgw/flop.hpp"
#include "flopgw/ring.hpp"

#include <random>

using namespace flopgw;

namespace {

// Betti numbers of a P^{r}-bundle over P^{m}: coefficients of
// (1 + t + ... + t^m)(1 + t + ... + t^r).
std::vector<std::size_t> projective_bundle_betti(int m, int r) {
  std::vector<std::size_t> out(static_cast<std::size_t>(m + r + 1), 0);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= r; ++j) ++out[static_cast<std::size_t>(i + j)];
  return out;
}

// Integral over E of a raw polynomial in h, h': push into P^n x (P^n)* where
// E has class h + h', and read the coefficient of h^n h'^n. No reduction
// modulo the relations of E is involved.
BigRational ambient_integral_over_E(const Polynomial& x, int n) {
  const Polynomial divisor = Polynomial::variable(2, 0) + Polynomial::variable(2, 1);
  const Polynomial prod = divisor * x;
  auto it = prod.terms().find(Exponents{n, n});
  return it == prod.terms().end() ? BigRational(0) : it->second;
}

RingPtr ring_from_text(std::string_view text) { return build_ring(parse_presentation(text)); }

}  // namespace

TEST_CASE("BigRational stays in lowest terms") {
  CHECK(BigRational(6, -4).str() == "-3/2");
  CHECK(BigRational(0, 5).str() == "0");
  CHECK(BigRational::parse("10/4") == BigRational(5, 2));
  CHECK(BigRational::parse("-7") == BigRational(-7));
  CHECK_THROWS_AS(BigRational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(BigRational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), std::domain_error);
  CHECK(BigRational(2, 3).pow(-2) == BigRational(9, 4));
  CHECK(binomial(5, 2) == BigRational(10));
  CHECK(binomial(3, 5) == BigRational(0));
  CHECK(factorial(5) == BigRational(120));
}

TEST_CASE("BigRational parse/str round-trip on random values") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 100000);
  for (int i = 0; i < 500; ++i) {
    const BigRational q(num(rng), den(rng));
    CHECK(BigRational::parse(q.str()) == q);
  }
}

TEST_CASE("build_ring: projective plane") {
  auto r = ring_from_text("name P2\ngenerators H:2\nrelations H^3\ntop 4\nnormalizer H^2\n");
  CHECK(r->betti() == std::vector<std::size_t>{1, 1, 1});
  CHECK(r->parse("H^3").is_zero());
  CHECK(r->integrate(r->parse("H^2")) == BigRational(1));
  CHECK(r->integrate(r->parse("H")) == BigRational(0));
}

TEST_CASE("build_ring: P2 x P2*") {
  auto r = build_ring(flop::build_geometry(2).product->data());
  CHECK(r->betti() == std::vector<std::size_t>{1, 2, 3, 2, 1});
  CHECK(r->basis(4).size() == 3);
  CHECK(r->parse("(h+h')*(h^2-h*h'+h'^2)").is_zero());
}

TEST_CASE("build_ring: incidence divisor E for n = 2") {
  auto r = build_ring(flop::incidence_divisor(2));
  CHECK(r->betti() == projective_bundle_betti(2, 1));
  CHECK(r->betti() == std::vector<std::size_t>{1, 2, 2, 1});
  // h^2 reduces against its own relation under graded lex with h > h'.
  CHECK(r->parse("h^2") == r->parse("h*h' - h'^2"));
  CHECK(r->parse("h^2").str() == "h*h' - h'^2");
  CHECK(r->integrate(r->parse("h^2*h'")) == ambient_integral_over_E(parse_polynomial("h^2*h'", {"h", "h'"}), 2));
  CHECK(r->integrate(r->parse("h^2*h'")) == BigRational(1));
  CHECK(r->integrate(r->parse("h^3")) == BigRational(0));
}

TEST_CASE("incidence divisor Betti numbers match a P^{n-1}-bundle over P^n") {
  for (int n = 2; n <= 5; ++n) {
    auto r = build_ring(flop::incidence_divisor(n));
    CHECK(r->betti() == projective_bundle_betti(n, n - 1));
  }
}

TEST_CASE("E integrals agree with the ambient pushout on every monomial") {
  for (int n = 2; n <= 4; ++n) {
    auto r = build_ring(flop::incidence_divisor(n));
    const int top = 2 * n - 1;
    for (int a = 0; a <= top; ++a) {
      const Exponents e{a, top - a};
      Polynomial p(2);
      p.add_term(e, BigRational(1));
      CHECK(r->integrate(r->monomial(e)) == ambient_integral_over_E(p, n));
    }
  }
}

TEST_CASE("build_ring error paths") {
  CHECK_THROWS_AS(ring_from_text("generators x:2 y:4\nrelations x^2 - x\ntop 4\nnormalizer y\n"),
                  RelationNotHomogeneous);
  CHECK_THROWS_AS(ring_from_text("generators x:2\nrelations x^2 + z\ntop 2\nnormalizer x\n"), UnknownGenerator);
  // x^3 = 0 but declared top 2: x^2 survives above the top.
  CHECK_THROWS_AS(ring_from_text("generators x:2\nrelations x^3\ntop 2\nnormalizer x\n"), InvalidPresentation);
  // Q[x,y]/(x^2, y^2, xy) with top 2: two-dimensional top piece.
  CHECK_THROWS_AS(ring_from_text("generators x:2 y:2\nrelations x^2; y^2; x*y\ntop 2\nnormalizer x\n"),
                  InvalidPresentation);
  // Q[x,y]/(x^2, xy, y^3): one-dimensional top piece, but x pairs to zero with
  // everything in degree 2.
  CHECK_THROWS_AS(ring_from_text("generators x:2 y:2\nrelations x^2; x*y; y^3\ntop 4\nnormalizer y^2\n"),
                  DegeneratePairing);
  CHECK_THROWS_AS(ring_from_text("generators x:3\nrelations x^2\ntop 6\nnormalizer x\n"), InvalidPresentation);
  CHECK_THROWS_AS(parse_presentation("generators x:2\nbogus 1\n"), InvalidPresentation);
}

TEST_CASE("normal_form rejects unknown generators") {
  auto r = build_ring(flop::incidence_divisor(2));
  CHECK_THROWS_AS(r->parse("h*k"), UnknownGenerator);
  CHECK_THROWS_AS(r->parse("h +* h"), std::invalid_argument);
}

TEST_CASE("normal_form is idempotent and linear on samples") {
  for (int n = 2; n <= 4; ++n) {
    auto r = build_ring(flop::incidence_divisor(n));
    std::mt19937_64 rng(static_cast<unsigned>(n));
    std::uniform_int_distribution<int> coef(-5, 5), expo(0, 2 * n);
    for (int trial = 0; trial < 40; ++trial) {
      Polynomial x(2), y(2);
      for (int t = 0; t < 4; ++t) {
        x.add_term({expo(rng), expo(rng)}, BigRational(coef(rng)));
        y.add_term({expo(rng), expo(rng)}, BigRational(coef(rng)));
      }
      const ClassElement nx = r->normal_form(x);
      CHECK(r->normal_form(nx.to_polynomial()) == nx);
      const BigRational a(coef(rng)), b(coef(rng), 7);
      CHECK(r->normal_form(x * a + y * b) == a * nx + b * r->normal_form(y));
    }
  }
}

TEST_CASE("product is associative and commutative on basis triples") {
  auto r = build_ring(flop::incidence_divisor(3));
  const auto basis = r->full_basis();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& a = basis[pick(rng)];
    const auto& b = basis[pick(rng)];
    const auto& c = basis[pick(rng)];
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
  }
}

TEST_CASE("Poincare pairing is square and invertible in every degree") {
  for (int n = 2; n <= 4; ++n) {
    const auto g = flop::build_geometry(n);
    for (const auto& r : {g.pn, g.dual, g.product, g.e}) {
      for (int d = 0; d <= r->top_degree(); d += 2) {
        const auto m = r->pairing_matrix(d);
        REQUIRE(m.size() == r->basis(r->top_degree() - d).size());
        CHECK(matrix_rank(m) == m.size());
      }
    }
  }
}

TEST_CASE("pullback along p and q") {
  const auto g = flop::build_geometry(2);
  CHECK(g.p.pullback(g.pn->parse("H")) == g.e->parse("h"));
  CHECK(g.q.pullback(g.dual->parse("H'")) == g.e->parse("h'"));
  CHECK(g.p.pullback(g.pn->parse("H^2")) == g.e->parse("h^2"));
  const auto x = g.pn->parse("H + 2");
  const auto y = g.pn->parse("3*H^2 - H");
  CHECK(g.p.pullback(x * y) == g.p.pullback(x) * g.p.pullback(y));
}

TEST_CASE("ring map construction validates degrees and relations") {
  const auto g = flop::build_geometry(2);
  CHECK_THROWS_AS(RingMap("bad", g.e, g.pn, {g.e->parse("h^2")}), InvalidPresentation);
  // H -> h + h' is fine degree-wise but (h+h')^3 != 0 in A*(E).
  CHECK_THROWS_AS(RingMap("bad", g.e, g.pn, {g.e->parse("h + h'")}), InvalidPresentation);
  CHECK_THROWS_AS(RingMap("bad", g.e, g.pn, {}), RingMismatch);
}

TEST_CASE("pushforward along p and q") {
  {
    const auto g = flop::build_geometry(2);
    CHECK(g.p.pushforward(g.e->parse("h'")) == g.pn->one());
    CHECK(g.p.pushforward(g.e->one()).is_zero());
    CHECK(g.q.pushforward(g.e->parse("h")) == g.dual->one());
    // E sits in the product with class h + h'.
    CHECK(g.incl.pushforward(g.e->one()) == g.product->parse("h + h'"));
  }
  for (int n = 2; n <= 3; ++n) {
    const auto g = flop::build_geometry(n);
    CHECK(g.q.pushforward(g.e->generator("h").pow(n - 1)) == g.dual->one());
    CHECK(g.p.pushforward(g.e->one()).is_zero());
  }
}

TEST_CASE("projection formula on full bases, n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    const auto g = flop::build_geometry(n);
    for (const auto& x : g.e->full_basis()) {
      const auto px = g.p.pushforward(x);
      const auto qx = g.q.pushforward(x);
      for (const auto& y : g.pn->full_basis())
        CHECK(g.e->integrate(x * g.p.pullback(y)) == g.pn->integrate(px * y));
      for (const auto& y : g.dual->full_basis())
        CHECK(g.e->integrate(x * g.q.pullback(y)) == g.dual->integrate(qx * y));
    }
  }
}

TEST_CASE("p_* p^* vanishes on classes of P^n, n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    const auto g = flop::build_geometry(n);
    for (const auto& y : g.pn->full_basis()) CHECK(g.p.pushforward(g.p.pullback(y)).is_zero());
  }
}

TEST_CASE("presentation text round-trip") {
  const auto data = flop::incidence_divisor(3);
  const auto again = parse_presentation(format_presentation(data));
  CHECK(again.relations == data.relations);
  CHECK(again.top_degree == data.top_degree);
  CHECK(build_ring(again)->betti() == build_ring(data)->betti());
}
