// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "flopgw/flop.hpp"
#include "flopgw/localization.hpp"
#include "flopgw/ruan.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace flopgw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string tuple(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + ')';
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  return a == std::string::npos ? std::string() : s.substr(a);
}

BigRational sign(int e) { return e % 2 ? BigRational(-1) : BigRational(1); }

Outcome criterion1() {
  Outcome o;
  int checked = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto g = flop::build_geometry(n);
    for (int k = 0; k < n; ++k) {
      const auto img = flop::flop_image(g, g.cycle(k));
      const bool ok = img == sign(k) * g.dual_cycle(k) && flop::flop_image_binomial(n, k) == sign(k);
      ++checked;
      if (!ok) {
        o.pass = false;
        o.detail += " n=" + std::to_string(n) + ",k=" + std::to_string(k) + " gives " + img.str();
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " classes, pushforward and binomial paths agree";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int n = 2; n <= 6; ++n) {
    const auto g = flop::build_geometry(n);
    const BigRational expected = sign(n + 1) * BigRational(n);
    const auto img = flop::flop_image(g, g.cycle(n));
    if (img != expected * g.dual_cycle(n) || flop::flop_image_binomial(n, n) != expected) {
      o.pass = false;
      o.detail += " n=" + std::to_string(n) + " gives " + img.str();
    }
  }
  if (o.pass) o.detail = "n = 2..6";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::string even;
  for (int n = 2; n <= 6; ++n) {
    const auto g = flop::build_geometry(n);
    const auto paper = flop::flop_T(g, g.cycle(n), {flop::Convention::Paper});
    if (paper != sign(n) * g.dual_cycle(n)) {
      o.pass = false;
      o.detail += " paper n=" + std::to_string(n) + " gives " + paper.str();
    }
    const auto chern = flop::flop_T(g, g.cycle(n), {flop::Convention::Chern});
    const BigRational c = g.dual_cycle_coefficient(chern, n);
    if (n % 2 == 1) {
      if (c != sign(n)) {
        o.pass = false;
        o.detail += " chern n=" + std::to_string(n) + " gives " + c.str();
      }
    } else {
      even += " n=" + std::to_string(n) + ":" + c.str();
    }
  }
  if (o.pass) o.detail = "paper n=2..6, chern odd n; chern even-n coefficients (reported)" + even;
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int d = 1; d <= 4; ++d) {
    const BigRational v = gw::multiple_cover(d);
    if (v != BigRational(1) / BigRational(d * d * d)) {
      o.pass = false;
      o.detail += " d=" + std::to_string(d) + " gives " + v.str();
    } else {
      o.detail += " M_" + std::to_string(d) + "=" + v.str();
    }
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (auto [n, dmax] : {std::pair{2, 2}, std::pair{3, 1}}) {
    const auto rep = gw::vanishing_scan(n, dmax, 3);
    std::size_t graphs = 0;
    for (const auto& r : rep.rows) graphs += r.graph_count;
    const bool ok = !rep.rows.empty() && rep.all_zero() && rep.full_zero_incidence();
    o.pass = o.pass && ok;
    o.detail += " (n=" + std::to_string(n) + ",dmax=" + std::to_string(dmax) + "): " + std::to_string(rep.rows.size()) +
                " rows, " + std::to_string(graphs) + " graphs" + (ok ? "" : " NONZERO");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int d = 1; d <= 3; ++d) {
    const BigRational loc = gw::invariant(gw::plane_curve_query(d)).value;
    const BigRational rec = gw::kontsevich_recursion_N(d);
    o.pass = o.pass && loc == rec;
    o.detail += " N_" + std::to_string(d) + "=" + loc.str() + (loc == rec ? "" : " (recursion " + rec.str() + ")");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  gw::InvariantOptions opts;
  opts.seeds = {1, 2, 3};
  std::size_t queries = 0;
  auto agree = [&](const gw::InvariantQuery& q) {
    const auto r = gw::invariant(q, opts);
    ++queries;
    for (const auto& v : r.per_seed)
      if (v != r.per_seed.front()) return false;
    return r.per_seed.size() == 3;
  };
  for (int d = 1; d <= 4; ++d) {
    o.pass = o.pass && agree(gw::multiple_cover_query(d)) && agree(gw::multiple_cover_query(d, gw::LiftChoice::Antidiagonal));
    const auto a = gw::multiple_cover(d, opts), b = gw::multiple_cover(d, opts, gw::LiftChoice::Antidiagonal);
    if (a != b) {
      o.pass = false;
      o.detail += " lift mismatch at d=" + std::to_string(d);
    }
  }
  for (auto [n, dmax] : {std::pair{2, 2}, std::pair{3, 1}})
    for (const auto& row : gw::vanishing_scan(n, dmax, 3, opts).rows) o.pass = o.pass && agree(row.query);
  for (int d = 1; d <= 3; ++d) o.pass = o.pass && agree(gw::plane_curve_query(d));
  o.detail = std::to_string(queries) + " invariants agree over seeds {1,2,3}; two lifts agree for d=1..4" + o.detail;
  return o;
}

Outcome criterion8() {
  const auto rep = ruan::ruan_collapse(2, 2);
  Outcome o;
  o.pass = rep.collapsed() && rep.invariants_evaluated > 0 && rep.triples > 0;
  o.detail = std::to_string(rep.triples) + " basis triples, " + std::to_string(rep.mismatches) + " mismatches, " +
             std::to_string(rep.invariants_evaluated) + " localization invariants, " +
             std::to_string(rep.invariants_nonzero) + " nonzero";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::string failures;
  for (int n = 2; n <= 5; ++n) {
    const auto g = flop::build_geometry(n);
    if (n <= 4) {
      for (const auto& r : {g.pn, g.dual, g.product, g.e})
        for (int d = 0; d <= r->top_degree(); d += 2) {
          const auto m = r->pairing_matrix(d);
          if (m.size() != r->basis(r->top_degree() - d).size() || matrix_rank(m) != m.size()) {
            o.pass = false;
            failures += " pairing " + r->name() + " deg " + std::to_string(d) + ";";
          }
        }
      for (const auto& x : g.e->full_basis()) {
        const auto px = g.p.pushforward(x), qx = g.q.pushforward(x);
        for (const auto& y : g.pn->full_basis())
          if (g.e->integrate(x * g.p.pullback(y)) != g.pn->integrate(px * y)) o.pass = false;
        for (const auto& y : g.dual->full_basis())
          if (g.e->integrate(x * g.q.pullback(y)) != g.dual->integrate(qx * y)) o.pass = false;
      }
      // the pattern as stated: 1, then 2 in every degree strictly between, then 1
      std::vector<std::size_t> stated(static_cast<std::size_t>(2 * n), 2);
      stated.front() = stated.back() = 1;
      const auto betti = g.e->betti();
      if (betti != stated) {
        o.pass = false;
        failures += " n=" + std::to_string(n) + " Betti(E)=" + tuple(betti) + " expected " + tuple(stated) + ";";
      }
    }
    const auto total = flop::excess_chern_total(g);
    ClassElement truncated = g.e->zero();
    for (int m = 0; m < n; ++m) truncated += total.component(2 * m);
    const auto cot = g.p.pullback(g.pn->parse("(1 - H)^" + std::to_string(n + 1)));
    if (truncated != total || truncated * (g.e->one() - g.e->parse("h + h'")) != cot) {
      o.pass = false;
      failures += " Whitney n=" + std::to_string(n) + ";";
    }
  }
  o.detail = o.pass ? "pairing, projection formula, Betti, Whitney" : failures;
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "flop image of [P^k], k < n, n = 2..6", 10, criterion1},
      {2, "flop image of [P^n], n = 2..6", 5, criterion2},
      {3, "T([P^n]) = (-1)^n [(P^n)*]", 5, criterion3},
      {4, "multiple covers 1/d^3, d = 1..4", 30, criterion4},
      {5, "vanishing scans (2,2,3) and (3,1,3)", 60, criterion5},
      {6, "plane curve counts vs recursion, d = 1..3", 120, criterion6},
      {7, "seed and lift independence", 60, criterion7},
      {8, "corrected triple products collapse, n = 2, d <= 2", 60, criterion8},
      {9, "ring kernel properties", 30, criterion9},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << t.str() << " s / limit "
              << c.limit_s << " s]" << (in_time ? "" : " TIMEOUT") << " -- " << trim(o.detail) << '\n';
  }
  std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}
