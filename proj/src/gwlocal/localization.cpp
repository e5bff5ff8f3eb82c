#include "flopgw/localization.hpp"

#include "flopgw/errors.hpp"
#include "graph_internal.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace flopgw::gw {

namespace {

BigRational checked_inverse(const BigRational& x, const char* what) {
  if (x.is_zero()) throw GenericityFailure(std::string("vanishing denominator: ") + what);
  return BigRational(1) / x;
}

BigRational signed_power(const BigRational& x, int e, const char* what) {
  if (e < 0 && x.is_zero()) throw GenericityFailure(std::string("vanishing denominator: ") + what);
  return x.pow(e);
}

// Inverse Euler class of the moving part of H^0(f^*TP^n) - Aut on one edge.
BigRational edge_factor(int i, int j, int d, const WeightVector& w) {
  const int np1 = static_cast<int>(w.lambdas.size());
  const BigRational diff = w[i] - w[j];
  BigRational f = factorial(d).pow(-2) * BigRational(d).pow(2L * d) * signed_power(diff, -2 * d, "lambda_i - lambda_j");
  if (d % 2) f = -f;
  for (int k = 1; k <= np1; ++k) {
    if (k == i || k == j) continue;
    for (int a = 0; a <= d; ++a) {
      const BigRational x = (BigRational(a) * w[i] + BigRational(d - a) * w[j]) / BigRational(d) - w[k];
      f *= checked_inverse(x, "(a lambda_i + b lambda_j)/d - lambda_k");
    }
  }
  return f;
}

// Vertex term: flag weights, psi integral over M_{0,val} in closed form, and
// (edges - 1) copies of the tangent space at the fixed point.
BigRational vertex_factor(int label, const std::vector<BigRational>& flag_weights, int val, const WeightVector& w) {
  const int np1 = static_cast<int>(w.lambdas.size());
  BigRational tangent(1);
  for (int j = 1; j <= np1; ++j)
    if (j != label) tangent *= w[label] - w[j];
  BigRational inv_sum(0), inv_prod(1);
  for (const auto& f : flag_weights) {
    const BigRational inv = checked_inverse(f, "flag weight");
    inv_sum += inv;
    inv_prod *= inv;
  }
  const int edges = static_cast<int>(flag_weights.size());
  return inv_prod * signed_power(inv_sum, val - 3, "sum of inverse flag weights") * tangent.pow(edges - 1);
}

std::vector<BigRational> flag_weights(const FixedGraph& g, const detail::Adjacency& adj, int v, const WeightVector& w) {
  std::vector<BigRational> out;
  const int f = g.vertices[static_cast<std::size_t>(v)].label;
  for (const auto& [u, deg] : adj[static_cast<std::size_t>(v)])
    out.push_back((w[f] - w[g.vertices[static_cast<std::size_t>(u)].label]) / BigRational(deg));
  return out;
}

BigRational product(const std::vector<BigRational>& xs) {
  BigRational p(1);
  for (const auto& x : xs) p *= x;
  return p;
}

bool contains_zero(const std::vector<BigRational>& xs) {
  return std::any_of(xs.begin(), xs.end(), [](const BigRational& x) { return x.is_zero(); });
}

}  // namespace

// ---------------------------------------------------------------- bundles --

BigRational LineSummand::lift_at(int label, const WeightVector& w) const {
  BigRational mu = BigRational(degree) * w[label] + shift;
  for (std::size_t i = 0; i < lambda_coeffs.size(); ++i) mu += lambda_coeffs[i] * w.lambdas.at(i);
  return mu;
}

BundleSpec BundleSpec::line_sum(const std::vector<int>& degrees, LiftChoice lift, int n) {
  if (degrees.empty()) throw std::invalid_argument("linesum needs at least one degree");
  BundleSpec b;
  b.kind = Kind::LineSum;
  for (std::size_t s = 0; s < degrees.size(); ++s) {
    if (degrees[s] >= 0) throw NotConcave("line bundle degree " + std::to_string(degrees[s]) + " is not negative");
    LineSummand l;
    l.degree = degrees[s];
    if (lift == LiftChoice::Antidiagonal) {
      l.lambda_coeffs.assign(static_cast<std::size_t>(n + 1), BigRational(0));
      l.lambda_coeffs[s % static_cast<std::size_t>(n + 1)] = BigRational(1);
    }
    b.lines.push_back(std::move(l));
  }
  return b;
}

int BundleSpec::rank(int n, int d) const {
  switch (kind) {
    case Kind::None:
      return 0;
    case Kind::CotangentTarget:
      return (n + 1) * d - n;
    case Kind::LineSum: {
      int r = 0;
      for (const auto& l : lines) r += -l.degree * d - 1;
      return r;
    }
  }
  return 0;
}

std::string BundleSpec::str() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::CotangentTarget:
      return "cotangent";
    case Kind::LineSum: {
      std::string s = "linesum:";
      for (std::size_t i = 0; i < lines.size(); ++i) s += (i ? "," : "") + std::to_string(lines[i].degree);
      return s;
    }
  }
  return "none";
}

BundleSpec BundleSpec::parse(std::string_view text, LiftChoice lift, int n) {
  if (text == "none") return none();
  if (text == "cotangent") return cotangent();
  constexpr std::string_view prefix = "linesum:";
  if (text.substr(0, prefix.size()) != prefix)
    throw std::invalid_argument("obstruction must be none, cotangent or linesum:a1,a2,...");
  std::vector<int> degrees;
  std::stringstream ss{std::string(text.substr(prefix.size()))};
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int a = 0;
    try {
      a = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad line bundle degree '" + item + "'");
    degrees.push_back(a);
  }
  return line_sum(degrees, lift, n);
}

// ---------------------------------------------------------------- queries --

int InvariantQuery::insertion_degree() const {
  int s = 0;
  for (int m : insertions) s += m;
  return s;
}

bool InvariantQuery::balanced() const { return insertion_degree() + obstruction.rank(n, d) == moduli_dimension(); }

void InvariantQuery::check() const {
  if (n < 1) throw InvalidQuery("n must be >= 1");
  if (d < 1) throw InvalidQuery("d must be >= 1");
  if (k < 0) throw InvalidQuery("k must be >= 0");
  if (static_cast<int>(insertions.size()) != k)
    throw InvalidQuery("expected " + std::to_string(k) + " insertions, got " + std::to_string(insertions.size()));
  for (int m : insertions)
    if (m < 0) throw InvalidQuery("insertion powers must be >= 0");
  if (obstruction.kind == BundleSpec::Kind::LineSum) {
    if (obstruction.lines.empty()) throw InvalidQuery("linesum needs at least one summand");
    for (const auto& l : obstruction.lines) {
      if (l.degree >= 0) throw NotConcave("line bundle degree " + std::to_string(l.degree) + " is not negative");
      if (l.lambda_coeffs.size() > static_cast<std::size_t>(n + 1)) throw InvalidQuery("lift has too many coefficients");
    }
  }
  if (!balanced())
    throw DimensionMismatch("insertion degree " + std::to_string(insertion_degree()) + " + obstruction rank " +
                            std::to_string(obstruction.rank(n, d)) + " != moduli dimension " +
                            std::to_string(moduli_dimension()));
}

// ------------------------------------------------------------ genericity --

bool is_generic(std::span<const BigRational> lambdas, int d) {
  const int np1 = static_cast<int>(lambdas.size());
  for (int i = 0; i < np1; ++i)
    for (int j = i + 1; j < np1; ++j)
      if (lambdas[static_cast<std::size_t>(i)] == lambdas[static_cast<std::size_t>(j)]) return false;
  for (int e = 2; e <= d; ++e)
    for (int a = 1; a < e; ++a)
      for (int i = 0; i < np1; ++i)
        for (int j = 0; j < np1; ++j) {
          if (i == j) continue;
          const BigRational x = (BigRational(a) * lambdas[static_cast<std::size_t>(i)] +
                                 BigRational(e - a) * lambdas[static_cast<std::size_t>(j)]) / BigRational(e);
          for (int k = 0; k < np1; ++k)
            if (k != i && k != j && x == lambdas[static_cast<std::size_t>(k)]) return false;
        }
  for (int f = 0; f < np1; ++f)
    for (int u = 0; u < np1; ++u)
      for (int v = 0; v < np1; ++v) {
        if (u == f || v == f) continue;
        for (int d1 = 1; d1 < d; ++d1)
          for (int d2 = 1; d1 + d2 <= d; ++d2) {
            const BigRational s = (lambdas[static_cast<std::size_t>(f)] - lambdas[static_cast<std::size_t>(u)]) / BigRational(d1) +
                                  (lambdas[static_cast<std::size_t>(f)] - lambdas[static_cast<std::size_t>(v)]) / BigRational(d2);
            if (s.is_zero()) return false;
          }
      }
  return true;
}

WeightVector select_generic_weights(const std::function<std::vector<BigRational>()>& candidate, int d) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto c = candidate();
    if (is_generic(c, d)) return WeightVector{std::move(c), 0, 0};
  }
  throw GenericityFailure("no generic weight vector found in 1000 candidates");
}

WeightVector sample_generic_weights(std::uint64_t seed, int n, int d, std::uint64_t salt) {
  std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::mt19937_64 rng(sseq);
  // modular reduction instead of std::uniform_int_distribution keeps the
  // stream identical across standard libraries
  auto draw = [&] {
    std::vector<BigRational> out;
    for (int i = 0; i <= n; ++i) {
      const long num = static_cast<long>(rng() % 19999) - 9999;
      const long den = static_cast<long>(rng() % 9) + 1;
      out.emplace_back(num, den);
    }
    return out;
  };
  WeightVector w = select_generic_weights(draw, d);
  w.seed = seed;
  w.salt = salt;
  return w;
}

// ----------------------------------------------------------- obstruction --

std::vector<BigRational> line_h1_weights(int a, int i, int j, int d_alpha, const BigRational& mu_i,
                                         const BigRational& mu_j, const WeightVector& w) {
  if (a >= 0) throw NotConcave("H^1 weights need a negative degree, got " + std::to_string(a));
  if (d_alpha < 1) throw std::invalid_argument("edge degree must be >= 1");
  if (mu_j - mu_i != BigRational(a) * (w[j] - w[i]))
    throw std::invalid_argument("lifts at the two ends of the edge are inconsistent with the bundle degree");
  const BigRational step = (w[i] - w[j]) / BigRational(d_alpha);
  std::vector<BigRational> out;
  const int count = -a * d_alpha - 1;
  for (int t = 1; t <= count; ++t) out.push_back(mu_i + BigRational(t) * step);
  return out;
}

std::vector<BigRational> cotangent_obstruction_factors(const FixedGraph& g, int n, const WeightVector& w) {
  std::vector<BigRational> out;
  const auto edges_at = g.edge_valence();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const int f = g.vertices[v].label;
    for (int c = 0; c < edges_at[v] - 1; ++c)
      for (int m = 1; m <= n + 1; ++m)
        if (m != f) out.push_back(w[m] - w[f]);
  }
  for (const auto& e : g.edges) {
    const int i = g.vertices[static_cast<std::size_t>(e.u)].label;
    const int j = g.vertices[static_cast<std::size_t>(e.v)].label;
    out.emplace_back(0);
    for (int k = 1; k <= n + 1; ++k) {
      auto part = line_h1_weights(-1, i, j, e.degree, w[k] - w[i], w[k] - w[j], w);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

std::vector<BigRational> line_sum_obstruction_factors(const FixedGraph& g, const BundleSpec& bundle,
                                                      const WeightVector& w) {
  std::vector<BigRational> out;
  const auto edges_at = g.edge_valence();
  for (const auto& line : bundle.lines) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      for (int c = 0; c < edges_at[v] - 1; ++c) out.push_back(line.lift_at(g.vertices[v].label, w));
    for (const auto& e : g.edges) {
      const int i = g.vertices[static_cast<std::size_t>(e.u)].label;
      const int j = g.vertices[static_cast<std::size_t>(e.v)].label;
      auto part = line_h1_weights(line.degree, i, j, e.degree, line.lift_at(i, w), line.lift_at(j, w), w);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

std::vector<BigRational> obstruction_factors(const InvariantQuery& q, const FixedGraph& g, const WeightVector& w) {
  switch (q.obstruction.kind) {
    case BundleSpec::Kind::None:
      return {};
    case BundleSpec::Kind::CotangentTarget:
      return cotangent_obstruction_factors(g, q.n, w);
    case BundleSpec::Kind::LineSum:
      return line_sum_obstruction_factors(g, q.obstruction, w);
  }
  return {};
}

// ---------------------------------------------------------- contributions --

BigRational graph_contribution(const InvariantQuery& q, const FixedGraph& g, const WeightVector& w,
                               const EnumerationLimits& limits) {
  g.validate(q.n, q.d, q.k);
  if (static_cast<int>(w.lambdas.size()) != q.n + 1) throw InvalidQuery("weight vector has the wrong length");
  const auto adj = detail::adjacency(g);
  const auto val = g.valence();
  BigRational c(1);
  for (const auto& e : g.edges)
    c *= edge_factor(g.vertices[static_cast<std::size_t>(e.u)].label, g.vertices[static_cast<std::size_t>(e.v)].label,
                     e.degree, w);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const int f = g.vertices[v].label;
    c *= vertex_factor(f, flag_weights(g, adj, static_cast<int>(v), w), val[v], w);
    for (int t : g.vertices[v].tails) c *= w[f].pow(q.insertions[static_cast<std::size_t>(t - 1)]);
  }
  c *= product(obstruction_factors(q, g, w));
  return c / automorphism_multiplicity(g, limits);
}

namespace {

// Sum of the contributions of every tail assignment on one decorated tree,
// divided by its automorphism group: by orbit-stabilizer this equals the sum
// over isomorphism classes of tailed graphs, each weighted by 1/|Stab|.
BigRational tree_sum(const InvariantQuery& q, const detail::DecoratedTree& t, const WeightVector& w) {
  const FixedGraph& g = t.graph;
  const int nv = static_cast<int>(g.vertices.size());
  BigRational c(1), degrees(1);
  for (const auto& e : g.edges) {
    c *= edge_factor(g.vertices[static_cast<std::size_t>(e.u)].label, g.vertices[static_cast<std::size_t>(e.v)].label,
                     e.degree, w);
    degrees *= BigRational(e.degree);
  }
  const auto edges_at = g.edge_valence();
  std::vector<std::vector<BigRational>> base(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const auto flags = flag_weights(g, t.adj, v, w);
    for (int tails = 0; tails <= q.k; ++tails)
      base[static_cast<std::size_t>(v)].push_back(
          vertex_factor(g.vertices[static_cast<std::size_t>(v)].label, flags, edges_at[static_cast<std::size_t>(v)] + tails, w));
  }
  c *= product(obstruction_factors(q, g, w));
  if (c.is_zero()) return c;

  // distribute the tails one at a time, keeping only the count per vertex
  std::map<std::vector<int>, BigRational> states{{std::vector<int>(static_cast<std::size_t>(nv), 0), BigRational(1)}};
  for (int i = 0; i < q.k; ++i) {
    std::map<std::vector<int>, BigRational> next;
    for (const auto& [counts, s] : states)
      for (int v = 0; v < nv; ++v) {
        auto key = counts;
        ++key[static_cast<std::size_t>(v)];
        next[key] += s * w[g.vertices[static_cast<std::size_t>(v)].label].pow(q.insertions[static_cast<std::size_t>(i)]);
      }
    states = std::move(next);
  }
  BigRational total(0);
  for (const auto& [counts, s] : states) {
    BigRational term = s;
    for (int v = 0; v < nv; ++v) term *= base[static_cast<std::size_t>(v)][static_cast<std::size_t>(counts[static_cast<std::size_t>(v)])];
    total += term;
  }
  return c * total / (degrees * BigRational(static_cast<long>(t.automorphisms.size())));
}

BigRational sum_trees(const InvariantQuery& q, const std::vector<detail::DecoratedTree>& trees, const WeightVector& w,
                      unsigned jobs) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(trees.size())));
  if (jobs == 1) {
    BigRational s(0);
    for (const auto& t : trees) s += tree_sum(q, t, w);
    return s;
  }
  std::vector<BigRational> partial(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < trees.size(); i += jobs) partial[j] += tree_sum(q, trees[i], w);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  BigRational s(0);
  for (const auto& p : partial) s += p;
  return s;
}

constexpr std::uint64_t kMaxSalt = 16;

}  // namespace

InvariantResult invariant(const InvariantQuery& q, const InvariantOptions& opts) {
  q.check();
  if (opts.seeds.size() < 2) throw InvalidQuery("at least two seeds are required");
  const auto trees = detail::decorated_trees(q.n, q.d, opts.limits);

  InvariantResult r;
  r.seeds = opts.seeds;
  BigRational count(0);
  for (const auto& t : trees) count += detail::orbit_count(t, q.k);
  if (count > BigRational(static_cast<long>(opts.limits.max_graphs)))
    throw ResourceLimit("fixed graph count " + count.str() + " exceeds cap " + std::to_string(opts.limits.max_graphs));
  r.graph_count = static_cast<std::size_t>(count.numerator().get_ui());

  for (std::size_t s = 0; s < opts.seeds.size(); ++s) {
    for (std::uint64_t salt = 0;; ++salt) {
      const WeightVector w = sample_generic_weights(opts.seeds[s], q.n, q.d, salt);
      try {
        r.per_seed.push_back(sum_trees(q, trees, w, opts.jobs));
      } catch (const GenericityFailure&) {
        if (salt + 1 >= kMaxSalt) throw;
        continue;
      }
      if (s == 0) {
        BigRational zero_graphs(0), traced(0);
        for (const auto& t : trees) {
          if (contains_zero(obstruction_factors(q, t.graph, w))) zero_graphs += detail::orbit_count(t, q.k);
          if (!opts.trace) continue;
          detail::for_each_tail_orbit(t, q.k, [&](const std::vector<int>& a, std::size_t) {
            const FixedGraph g = detail::with_tails(t, a);
            TraceRow row{g.canonical(), automorphism_multiplicity(g, opts.limits), graph_contribution(q, g, w, opts.limits),
                         contains_zero(obstruction_factors(q, g, w))};
            traced += row.contribution;
            opts.trace(row);
          });
        }
        r.zero_obstruction_graphs = static_cast<std::size_t>(zero_graphs.numerator().get_ui());
        if (opts.trace && traced != r.per_seed.back())
          throw std::logic_error("per-graph trace sums to " + traced.str() + " but the batched sum is " +
                                 r.per_seed.back().str());
      }
      break;
    }
  }
  for (const auto& v : r.per_seed)
    if (v != r.per_seed.front()) {
      std::string msg = "per-seed totals differ:";
      for (std::size_t i = 0; i < r.per_seed.size(); ++i)
        msg += " seed " + std::to_string(r.seeds[i]) + " -> " + r.per_seed[i].str() + ";";
      throw SeedDisagreement(msg);
    }
  r.value = r.per_seed.front();
  return r;
}

// ------------------------------------------------------- named invariants --

InvariantQuery multiple_cover_query(int d, LiftChoice lift) {
  if (d < 1) throw InvalidQuery("d must be >= 1");
  return InvariantQuery{1, d, 0, {}, BundleSpec::line_sum({-1, -1}, lift, 1)};
}

BigRational multiple_cover(int d, const InvariantOptions& opts, LiftChoice lift) {
  return invariant(multiple_cover_query(d, lift), opts).value;
}

InvariantQuery plane_curve_query(int d) {
  if (d < 1) throw InvalidQuery("d must be >= 1");
  return InvariantQuery{2, d, 3 * d - 1, std::vector<int>(static_cast<std::size_t>(3 * d - 1), 2), BundleSpec::none()};
}

BigRational kontsevich_recursion_N(int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  std::vector<BigRational> N(static_cast<std::size_t>(d) + 1, BigRational(0));
  N[1] = BigRational(1);
  for (int e = 2; e <= d; ++e) {
    BigRational s(0);
    for (int d1 = 1; d1 < e; ++d1) {
      const int d2 = e - d1;
      const BigRational w = BigRational(d2) * binomial(3 * e - 4, 3 * d1 - 2) - BigRational(d1) * binomial(3 * e - 4, 3 * d1 - 1);
      s += N[static_cast<std::size_t>(d1)] * N[static_cast<std::size_t>(d2)] * BigRational(d1 * d1 * d2) * w;
    }
    N[static_cast<std::size_t>(e)] = s;
  }
  return N[static_cast<std::size_t>(d)];
}

// ---------------------------------------------------------------- vanishing --

bool VanishingReport::all_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const VanishingRow& r) { return r.value.is_zero(); });
}

bool VanishingReport::full_zero_incidence() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const VanishingRow& r) { return r.zero_obstruction_graphs == r.graph_count; });
}

VanishingReport vanishing_scan(int n, int d_max, int k, const InvariantOptions& opts) {
  if (n < 2) throw InvalidQuery("vanishing scan needs n >= 2");
  if (d_max < 1) throw InvalidQuery("d_max must be >= 1");
  if (k < 0) throw InvalidQuery("k must be >= 0");
  VanishingReport rep{n, d_max, k, {}};
  const int target = 2 * n + k - 3;
  for (int d = 1; d <= d_max; ++d) {
    std::vector<int> m(static_cast<std::size_t>(k), 0);
    while (true) {
      int sum = 0;
      for (int x : m) sum += x;
      if (sum == target) {
        InvariantQuery q{n, d, k, m, BundleSpec::cotangent()};
        const auto r = invariant(q, opts);
        rep.rows.push_back({q, r.value, r.graph_count, r.zero_obstruction_graphs});
      }
      int i = k - 1;
      while (i >= 0 && m[static_cast<std::size_t>(i)] == n) m[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++m[static_cast<std::size_t>(i)];
    }
  }
  return rep;
}

// --------------------------------------------------------------------- json --

nlohmann::json to_json(const InvariantQuery& q) {
  nlohmann::json j;
  j["n"] = q.n;
  j["d"] = q.d;
  j["k"] = q.k;
  j["insertions"] = q.insertions;
  j["obstruction"] = q.obstruction.str();
  bool custom = false;
  for (const auto& l : q.obstruction.lines) custom = custom || !l.lambda_coeffs.empty() || !l.shift.is_zero();
  if (custom) {
    nlohmann::json lifts = nlohmann::json::array();
    for (const auto& l : q.obstruction.lines) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const auto& c : l.lambda_coeffs) coeffs.push_back(c.str());
      lifts.push_back({{"lambda", coeffs}, {"shift", l.shift.str()}});
    }
    j["lifts"] = lifts;
  }
  return j;
}

InvariantQuery query_from_json(const nlohmann::json& j) {
  try {
    InvariantQuery q;
    q.n = j.at("n").get<int>();
    q.d = j.at("d").get<int>();
    q.insertions = j.value("insertions", std::vector<int>{});
    q.k = j.value("k", static_cast<int>(q.insertions.size()));
    q.obstruction = BundleSpec::parse(j.value("obstruction", std::string("none")), LiftChoice::Standard, q.n);
    if (j.contains("lifts")) {
      const auto& lifts = j.at("lifts");
      if (!lifts.is_array() || lifts.size() != q.obstruction.lines.size())
        throw InvalidQuery("lifts must list one entry per line bundle summand");
      for (std::size_t s = 0; s < lifts.size(); ++s) {
        auto& line = q.obstruction.lines[s];
        line.lambda_coeffs.clear();
        for (const auto& c : lifts[s].value("lambda", nlohmann::json::array()))
          line.lambda_coeffs.push_back(BigRational::parse(c.get<std::string>()));
        line.shift = BigRational::parse(lifts[s].value("shift", std::string("0")));
      }
    }
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidQuery(std::string("malformed query: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidQuery(std::string("malformed query: ") + e.what());
  }
}

nlohmann::json to_json(const InvariantQuery& q, const InvariantResult& r) {
  nlohmann::json j = to_json(q);
  j["value"] = r.value.str();
  j["graph_count"] = r.graph_count;
  j["zero_obstruction_graphs"] = r.zero_obstruction_graphs;
  j["seeds"] = r.seeds;
  return j;
}

nlohmann::json to_json(const VanishingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = to_json(row.query);
    j["value"] = row.value.str();
    j["graph_count"] = row.graph_count;
    j["zero_obstruction_graphs"] = row.zero_obstruction_graphs;
    rows.push_back(j);
  }
  return {{"n", r.n},
          {"d_max", r.d_max},
          {"k", r.k},
          {"rows", rows},
          {"all_zero", r.all_zero()},
          {"full_zero_incidence", r.full_zero_incidence()}};
}

}  // namespace flopgw::gw
