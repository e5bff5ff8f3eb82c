#include "flopgw/chow_verify.hpp"

#include "flopgw/flop.hpp"

#include <algorithm>
#include <sstream>

namespace flopgw::chow {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return "(" + os.str() + ")";
}

}  // namespace

bool ChowReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.gating; });
}

ChowReport verify(int nmax, int projection_nmax) {
  ChowReport rep{nmax, {}};
  auto add = [&](int n, std::string name, bool pass, std::string detail = {}, bool gating = true) {
    rep.checks.push_back({n, std::move(name), pass, gating, std::move(detail)});
  };
  for (int n = 2; n <= nmax; ++n) {
    const auto g = flop::build_geometry(n);

    bool pairing = true;
    for (const auto& r : {g.pn, g.dual, g.product, g.e})
      for (int d = 0; d <= r->top_degree(); d += 2) {
        const auto m = r->pairing_matrix(d);
        pairing = pairing && m.size() == r->basis(r->top_degree() - d).size() && matrix_rank(m) == m.size();
      }
    add(n, "pairing_nondegenerate", pairing);

    // P^{n-1}-bundle over P^n
    std::vector<std::size_t> bundle(static_cast<std::size_t>(2 * n), 0);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < n; ++j) ++bundle[static_cast<std::size_t>(i + j)];
    const auto betti = g.e->betti();
    add(n, "betti_E_projective_bundle", betti == bundle, join(betti));
    std::vector<std::size_t> flat(static_cast<std::size_t>(2 * n), 2);
    flat.front() = flat.back() = 1;
    add(n, "betti_E_is_1_2_..._2_1", betti == flat, join(betti) + " vs " + join(flat), false);

    add(n, "class_of_E", g.incl.pushforward(g.e->one()) == g.product->parse("h + h'"));

    const auto total = flop::excess_chern_total(g);
    ClassElement truncated = g.e->zero();
    for (int m = 0; m < n; ++m) truncated += total.component(2 * m);
    const auto cot = g.p.pullback(g.pn->parse("(1 - H)^" + std::to_string(n + 1)));
    add(n, "whitney", truncated == total && truncated * (g.e->one() - g.e->parse("h + h'")) == cot);

    if (n <= projection_nmax) {
      bool proj = true;
      for (const auto& x : g.e->full_basis()) {
        const auto px = g.p.pushforward(x);
        const auto qx = g.q.pushforward(x);
        for (const auto& y : g.pn->full_basis()) proj = proj && g.e->integrate(x * g.p.pullback(y)) == g.pn->integrate(px * y);
        for (const auto& y : g.dual->full_basis())
          proj = proj && g.e->integrate(x * g.q.pullback(y)) == g.dual->integrate(qx * y);
      }
      add(n, "projection_formula", proj);
    }

    for (int k = 0; k < n; ++k) {
      const BigRational expected = k % 2 ? BigRational(-1) : BigRational(1);
      const BigRational got = g.dual_cycle_coefficient(flop::flop_image(g, g.cycle(k)), k);
      add(n, "flop_image_P" + std::to_string(k), got == expected && flop::flop_image_binomial(n, k) == expected,
          flop::describe_dual_cycle(got, k));
    }
    const BigRational top_expected = (n + 1) % 2 ? BigRational(-n) : BigRational(n);
    const BigRational top = g.dual_cycle_coefficient(flop::flop_image(g, g.cycle(n)), n);
    add(n, "flop_image_Pn", top == top_expected && flop::flop_image_binomial(n, n) == top_expected,
        flop::describe_dual_cycle(top, n));

    const BigRational sign = n % 2 ? BigRational(-1) : BigRational(1);
    const BigRational t_paper = g.dual_cycle_coefficient(flop::flop_T(g, g.cycle(n)), n);
    add(n, "T_Pn_paper", t_paper == sign, flop::describe_dual_cycle(t_paper, n));
    const BigRational t_chern = g.dual_cycle_coefficient(flop::flop_T(g, g.cycle(n), {flop::Convention::Chern}), n);
    add(n, "T_Pn_chern", t_chern == sign, flop::describe_dual_cycle(t_chern, n), n % 2 == 1);
  }
  return rep;
}

nlohmann::json to_json(const ChowReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"n", c.n}, {"check", c.name}, {"pass", c.pass}, {"gating", c.gating}, {"detail", c.detail}});
  return {{"nmax", r.nmax}, {"checks", checks}, {"all_pass", r.all_pass()}};
}

}  // namespace flopgw::chow
