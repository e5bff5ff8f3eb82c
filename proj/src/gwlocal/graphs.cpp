// Fixed-graph enumeration, canonical forms and automorphisms.

#include "flopgw/errors.hpp"
#include "flopgw/localization.hpp"
#include "graph_internal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace flopgw::gw {

int FixedGraph::total_degree() const {
  int s = 0;
  for (const auto& e : edges) s += e.degree;
  return s;
}

std::vector<int> FixedGraph::edge_valence() const {
  std::vector<int> out(vertices.size(), 0);
  for (const auto& e : edges) {
    ++out.at(static_cast<std::size_t>(e.u));
    ++out.at(static_cast<std::size_t>(e.v));
  }
  return out;
}

std::vector<int> FixedGraph::valence() const {
  auto out = edge_valence();
  for (std::size_t i = 0; i < vertices.size(); ++i) out[i] += static_cast<int>(vertices[i].tails.size());
  return out;
}

void FixedGraph::validate(int n, int d, int k) const {
  const int nv = static_cast<int>(vertices.size());
  if (nv == 0) throw InvalidQuery("fixed graph has no vertices");
  for (const auto& v : vertices)
    if (v.label < 1 || v.label > n + 1) throw InvalidQuery("vertex label out of range 1.." + std::to_string(n + 1));
  if (static_cast<int>(edges.size()) != nv - 1) throw InvalidQuery("fixed graph is not a tree (edge count)");
  std::vector<int> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= nv || e.v >= nv || e.u == e.v) throw InvalidQuery("edge endpoint out of range");
    if (e.degree < 1) throw InvalidQuery("edge degree must be >= 1");
    if (vertices[static_cast<std::size_t>(e.u)].label == vertices[static_cast<std::size_t>(e.v)].label)
      throw InvalidQuery("adjacent vertices share a fixed-point label");
    const int a = find(e.u), b = find(e.v);
    if (a == b) throw InvalidQuery("fixed graph is not a tree (cycle)");
    parent[static_cast<std::size_t>(a)] = b;
  }
  if (total_degree() != d) throw InvalidQuery("edge degrees do not sum to d = " + std::to_string(d));
  std::vector<int> seen(static_cast<std::size_t>(k) + 1, 0);
  for (const auto& v : vertices)
    for (int t : v.tails) {
      if (t < 1 || t > k) throw InvalidQuery("tail index out of range");
      ++seen[static_cast<std::size_t>(t)];
    }
  for (int t = 1; t <= k; ++t)
    if (seen[static_cast<std::size_t>(t)] != 1) throw InvalidQuery("tails do not partition the marks");
}

namespace detail {

Adjacency adjacency(const FixedGraph& g) {
  Adjacency adj(g.vertices.size());
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.degree});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.degree});
  }
  return adj;
}

namespace {

std::string encode(const FixedGraph& g, const Adjacency& adj, int v, int parent) {
  const auto& vx = g.vertices[static_cast<std::size_t>(v)];
  std::string s = std::to_string(vx.label) + "[";
  for (std::size_t i = 0; i < vx.tails.size(); ++i) s += (i ? "." : "") + std::to_string(vx.tails[i]);
  s += "]";
  std::vector<std::string> kids;
  for (const auto& [u, deg] : adj[static_cast<std::size_t>(v)])
    if (u != parent) kids.push_back("d" + std::to_string(deg) + encode(g, adj, u, v));
  if (kids.empty()) return s;
  std::sort(kids.begin(), kids.end());
  s += "{";
  for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
  return s + "}";
}

std::vector<int> centroids(const Adjacency& adj) {
  const int nv = static_cast<int>(adj.size());
  std::vector<int> size(static_cast<std::size_t>(nv), 1), order, parent(static_cast<std::size_t>(nv), -1);
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& [u, deg] : adj[static_cast<std::size_t>(order[i])])
      if (u != parent[static_cast<std::size_t>(order[i])]) {
        parent[static_cast<std::size_t>(u)] = order[i];
        order.push_back(u);
      }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[static_cast<std::size_t>(*it)] >= 0) size[static_cast<std::size_t>(parent[static_cast<std::size_t>(*it)])] += size[static_cast<std::size_t>(*it)];
  std::vector<int> out;
  int best = nv + 1;
  for (int v = 0; v < nv; ++v) {
    int worst = nv - size[static_cast<std::size_t>(v)];
    for (const auto& [u, deg] : adj[static_cast<std::size_t>(v)])
      if (u != parent[static_cast<std::size_t>(v)]) worst = std::max(worst, size[static_cast<std::size_t>(u)]);
    if (worst < best) {
      best = worst;
      out.clear();
    }
    if (worst == best) out.push_back(v);
  }
  return out;
}

}  // namespace

std::string canonical(const FixedGraph& g, const Adjacency& adj) {
  std::string best;
  for (int c : centroids(adj)) {
    std::string s = encode(g, adj, c, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::vector<std::vector<int>> automorphisms(const FixedGraph& g, const EnumerationLimits& limits) {
  const int nv = static_cast<int>(g.vertices.size());
  if (nv > limits.max_vertices)
    throw ResourceLimit("graph has " + std::to_string(nv) + " vertices, cap is " + std::to_string(limits.max_vertices));
  const Adjacency adj = adjacency(g);
  // edge degree between two vertices, 0 when not adjacent
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(nv), std::vector<int>(static_cast<std::size_t>(nv), 0));
  for (const auto& e : g.edges) {
    deg[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = e.degree;
    deg[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.degree;
  }
  // BFS order so every vertex after the first has an assigned neighbour
  std::vector<int> order{0};
  std::vector<char> queued(static_cast<std::size_t>(nv), 0);
  queued[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& [u, d] : adj[static_cast<std::size_t>(order[i])])
      if (!queued[static_cast<std::size_t>(u)]) {
        queued[static_cast<std::size_t>(u)] = 1;
        order.push_back(u);
      }

  auto compatible = [&](int v, int w) {
    const auto& a = g.vertices[static_cast<std::size_t>(v)];
    const auto& b = g.vertices[static_cast<std::size_t>(w)];
    return a.label == b.label && a.tails == b.tails && adj[static_cast<std::size_t>(v)].size() == adj[static_cast<std::size_t>(w)].size();
  };

  std::vector<std::vector<int>> out;
  std::vector<int> image(static_cast<std::size_t>(nv), -1);
  std::vector<char> used(static_cast<std::size_t>(nv), 0);
  auto search = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      out.push_back(image);
      return;
    }
    const int v = order[pos];
    for (int w = 0; w < nv; ++w) {
      if (used[static_cast<std::size_t>(w)] || !compatible(v, w)) continue;
      bool ok = true;
      for (std::size_t p = 0; p < pos && ok; ++p) {
        const int u = order[p];
        ok = deg[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ==
             deg[static_cast<std::size_t>(image[static_cast<std::size_t>(u)])][static_cast<std::size_t>(w)];
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      self(self, pos + 1);
      used[static_cast<std::size_t>(w)] = 0;
      image[static_cast<std::size_t>(v)] = -1;
    }
  };
  search(search, 0);
  return out;
}

namespace {

// Labelled trees on nv vertices from Pruefer sequences.
template <class F>
void for_each_labelled_tree(int nv, F&& visit) {
  if (nv == 2) {
    visit(std::vector<std::pair<int, int>>{{0, 1}});
    return;
  }
  const int len = nv - 2;
  std::vector<int> seq(static_cast<std::size_t>(len), 0);
  while (true) {
    std::vector<int> count(static_cast<std::size_t>(nv), 1);
    for (int s : seq) ++count[static_cast<std::size_t>(s)];
    std::vector<std::pair<int, int>> edges;
    for (int s : seq) {
      int leaf = 0;
      while (count[static_cast<std::size_t>(leaf)] != 1) ++leaf;
      edges.push_back({std::min(leaf, s), std::max(leaf, s)});
      --count[static_cast<std::size_t>(leaf)];
      --count[static_cast<std::size_t>(s)];
    }
    int a = -1, b = -1;
    for (int v = 0; v < nv; ++v)
      if (count[static_cast<std::size_t>(v)] == 1) (a < 0 ? a : b) = v;
    edges.push_back({a, b});
    visit(edges);
    int i = len - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == nv - 1) seq[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++seq[static_cast<std::size_t>(i)];
  }
}

// Compositions of d into `parts` positive integers.
template <class F>
void for_each_composition(int d, int parts, std::vector<int>& cur, F&& visit) {
  if (parts == 1) {
    cur.push_back(d);
    visit(cur);
    cur.pop_back();
    return;
  }
  for (int first = 1; first <= d - parts + 1; ++first) {
    cur.push_back(first);
    for_each_composition(d - first, parts - 1, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<DecoratedTree> decorated_trees(int n, int d, const EnumerationLimits& limits) {
  if (n < 1 || d < 1) throw InvalidQuery("need n >= 1 and d >= 1");
  if (d + 1 > limits.max_vertices)
    throw ResourceLimit("degree " + std::to_string(d) + " needs up to " + std::to_string(d + 1) +
                        " vertices, cap is " + std::to_string(limits.max_vertices));
  std::vector<DecoratedTree> out;
  std::set<std::string> seen;
  for (int nv = 2; nv <= d + 1; ++nv) {
    for_each_labelled_tree(nv, [&](const std::vector<std::pair<int, int>>& shape) {
      std::vector<int> comp;
      for_each_composition(d, nv - 1, comp, [&](const std::vector<int>& degs) {
        FixedGraph g;
        g.vertices.resize(static_cast<std::size_t>(nv));
        for (std::size_t i = 0; i < shape.size(); ++i) g.edges.push_back({shape[i].first, shape[i].second, degs[i]});
        const Adjacency adj = adjacency(g);
        std::vector<int> order{0}, parent(static_cast<std::size_t>(nv), -1);
        for (std::size_t i = 0; i < order.size(); ++i)
          for (const auto& [u, dd] : adj[static_cast<std::size_t>(order[i])])
            if (u != parent[static_cast<std::size_t>(order[i])]) {
              parent[static_cast<std::size_t>(u)] = order[i];
              order.push_back(u);
            }
        auto label = [&](auto&& self, std::size_t pos) -> void {
          if (pos == order.size()) {
            std::string c = canonical(g, adj);
            if (seen.insert(c).second) {
              if (out.size() >= limits.max_graphs) throw ResourceLimit("decorated tree count exceeds cap");
              DecoratedTree t;
              t.graph = g;
              t.adj = adj;
              t.canonical = std::move(c);
              t.automorphisms = automorphisms(g, limits);
              out.push_back(std::move(t));
            }
            return;
          }
          const int v = order[pos];
          const int p = parent[static_cast<std::size_t>(v)];
          for (int l = 1; l <= n + 1; ++l) {
            if (p >= 0 && g.vertices[static_cast<std::size_t>(p)].label == l) continue;
            g.vertices[static_cast<std::size_t>(v)].label = l;
            self(self, pos + 1);
          }
        };
        label(label, 0);
      });
    });
  }
  return out;
}

BigRational orbit_count(const DecoratedTree& t, int k) {
  // Burnside: tail assignments V^k up to the automorphisms of the tree.
  BigRational sum(0);
  for (const auto& sigma : t.automorphisms) {
    long fixed = 0;
    for (std::size_t v = 0; v < sigma.size(); ++v)
      if (sigma[v] == static_cast<int>(v)) ++fixed;
    sum += BigRational(fixed).pow(k);
  }
  return sum / BigRational(static_cast<long>(t.automorphisms.size()));
}

void for_each_tail_orbit(const DecoratedTree& t, int k,
                         const std::function<void(const std::vector<int>&, std::size_t)>& visit) {
  const int nv = static_cast<int>(t.graph.vertices.size());
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  std::vector<int> img(static_cast<std::size_t>(k));
  while (true) {
    bool minimal = true;
    std::size_t stab = 0;
    for (const auto& sigma : t.automorphisms) {
      for (int i = 0; i < k; ++i) img[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])];
      if (img == a) {
        ++stab;
      } else if (std::lexicographical_compare(img.begin(), img.end(), a.begin(), a.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) visit(a, stab);
    int i = k - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == nv - 1) a[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
}

FixedGraph with_tails(const DecoratedTree& t, const std::vector<int>& assignment) {
  FixedGraph g = t.graph;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    g.vertices[static_cast<std::size_t>(assignment[i])].tails.push_back(static_cast<int>(i) + 1);
  return g;
}

}  // namespace detail

std::string FixedGraph::canonical() const { return detail::canonical(*this, detail::adjacency(*this)); }

void for_each_fixed_graph(int n, int d, int k, const EnumerationLimits& limits,
                          const std::function<void(const FixedGraph&)>& visit) {
  if (k < 0) throw InvalidQuery("k must be >= 0");
  const auto trees = detail::decorated_trees(n, d, limits);
  BigRational total(0);
  for (const auto& t : trees) total += detail::orbit_count(t, k);
  if (total > BigRational(static_cast<long>(limits.max_graphs)))
    throw ResourceLimit("fixed graph count " + total.str() + " exceeds cap " + std::to_string(limits.max_graphs));
  for (const auto& t : trees)
    detail::for_each_tail_orbit(t, k, [&](const std::vector<int>& a, std::size_t) { visit(detail::with_tails(t, a)); });
}

std::vector<FixedGraph> enumerate_fixed_graphs(int n, int d, int k, const EnumerationLimits& limits) {
  std::vector<FixedGraph> out;
  for_each_fixed_graph(n, d, k, limits, [&](const FixedGraph& g) { out.push_back(g); });
  return out;
}

std::size_t automorphism_count(const FixedGraph& g, const EnumerationLimits& limits) {
  return detail::automorphisms(g, limits).size();
}

BigRational automorphism_multiplicity(const FixedGraph& g, const EnumerationLimits& limits) {
  BigRational m(static_cast<long>(automorphism_count(g, limits)));
  for (const auto& e : g.edges) m *= BigRational(e.degree);
  return m;
}

}  // namespace flopgw::gw
