#pragma once

#include "flopgw/localization.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flopgw::gw::detail {

/// (neighbour, edge degree) per vertex.
using Adjacency = std::vector<std::vector<std::pair<int, int>>>;

Adjacency adjacency(const FixedGraph& g);
std::string canonical(const FixedGraph& g, const Adjacency& adj);

/// Every automorphism as a vertex permutation (image of each vertex).
std::vector<std::vector<int>> automorphisms(const FixedGraph& g, const EnumerationLimits& limits);

/// A fixed graph without tails, together with its automorphism group.
struct DecoratedTree {
  FixedGraph graph;
  Adjacency adj;
  std::string canonical;
  std::vector<std::vector<int>> automorphisms;
};

/// One representative per isomorphism class of labelled, degree-decorated
/// trees of total degree d on n + 1 fixed points.
std::vector<DecoratedTree> decorated_trees(int n, int d, const EnumerationLimits& limits);

/// Number of tail assignments up to automorphism.
BigRational orbit_count(const DecoratedTree& t, int k);

/// Visits the lexicographically least assignment (tail i -> vertex a[i-1]) of
/// each orbit together with the size of its stabilizer.
void for_each_tail_orbit(const DecoratedTree& t, int k,
                         const std::function<void(const std::vector<int>&, std::size_t)>& visit);

FixedGraph with_tails(const DecoratedTree& t, const std::vector<int>& assignment);

}  // namespace flopgw::gw::detail
