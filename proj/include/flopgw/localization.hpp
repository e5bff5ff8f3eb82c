#pragma once

// Genus-0 torus localization on moduli spaces of stable maps to P^n.
//
// Conventions (checked by the multiple-cover numbers, the plane-curve counts
// and the divisor axiom in the tests):
//   * the torus acts on V = C^{n+1} with weights -lambda_1, ..., -lambda_{n+1};
//   * the tangent space at the fixed point p_i has weights lambda_i - lambda_j;
//   * H restricts to +lambda_i at p_i, O(-1) has fibre weight -lambda_i there;
//   * a degree-d cover of the line l_ij has tangent weight
//     w = (lambda_i - lambda_j) / d at the preimage of p_i.
// All arithmetic is exact; rational functions in lambda are never formed.
// Instead every invariant is evaluated at several sampled weight vectors and
// the results must agree exactly.

#include "flopgw/rational.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace flopgw::gw {

/// Equivariant parameters lambda_1 .. lambda_{n+1} (stored 0-based).
struct WeightVector {
  std::vector<BigRational> lambdas;
  std::uint64_t seed = 0;
  std::uint64_t salt = 0;

  const BigRational& operator[](int label) const { return lambdas.at(static_cast<std::size_t>(label - 1)); }
};

/// One torus-fixed locus: a tree whose vertices map to fixed points and whose
/// edges are covers of the coordinate lines. Vertex labels are 1-based fixed
/// points, tails are 1-based mark indices.
struct FixedGraph {
  struct Vertex {
    int label = 1;
    std::vector<int> tails;  ///< sorted
  };
  struct Edge {
    int u = 0;
    int v = 0;
    int degree = 1;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int total_degree() const;
  /// Number of incident edges of each vertex.
  std::vector<int> edge_valence() const;
  /// Edges plus tails.
  std::vector<int> valence() const;

  /// Checks the tree, adjacent-label, degree-sum and tail-partition
  /// conditions; throws InvalidQuery naming the violated one.
  void validate(int n, int d, int k) const;

  /// Deterministic string that is equal for isomorphic graphs (isomorphisms
  /// preserve labels, edge degrees and tail sets).
  std::string canonical() const;
};

struct EnumerationLimits {
  std::size_t max_graphs = 50'000'000;
  int max_vertices = 12;
};

/// All fixed graphs of M_{0,k}(P^n, d), one per isomorphism class, in a
/// deterministic order. Throws ResourceLimit past the caps.
std::vector<FixedGraph> enumerate_fixed_graphs(int n, int d, int k, const EnumerationLimits& limits = {});

/// Streams the same graphs as enumerate_fixed_graphs without storing them.
void for_each_fixed_graph(int n, int d, int k, const EnumerationLimits& limits,
                          const std::function<void(const FixedGraph&)>& visit);

/// |Aut| of the graph: vertex permutations preserving adjacency, edge degrees,
/// labels and tails, found by exhaustive matching.
std::size_t automorphism_count(const FixedGraph& g, const EnumerationLimits& limits = {});

/// |Aut| times the product of edge degrees (the deck transformations of each
/// cover).
BigRational automorphism_multiplicity(const FixedGraph& g, const EnumerationLimits& limits = {});

/// Line bundle summand O(degree) with lift mu_p = degree * lambda_p +
/// sum_i lambda_coeffs[i] * lambda_{i+1} + shift at the fixed point p.
struct LineSummand {
  int degree = -1;
  std::vector<BigRational> lambda_coeffs;
  BigRational shift;

  BigRational lift_at(int label, const WeightVector& w) const;
};

enum class LiftChoice {
  Standard,      ///< mu_p = a * lambda_p
  Antidiagonal,  ///< summand s shifted by lambda_{(s mod (n+1)) + 1}
};

struct BundleSpec {
  enum class Kind { None, LineSum, CotangentTarget };
  Kind kind = Kind::None;
  std::vector<LineSummand> lines;

  static BundleSpec none() { return {}; }
  static BundleSpec cotangent() { return {Kind::CotangentTarget, {}}; }
  /// Throws NotConcave when a degree is >= 0.
  static BundleSpec line_sum(const std::vector<int>& degrees, LiftChoice lift = LiftChoice::Standard, int n = 1);

  /// Rank of the induced obstruction bundle on M_{0,k}(P^n, d).
  int rank(int n, int d) const;
  /// "none", "cotangent" or "linesum:a1,a2,...".
  std::string str() const;
  /// Inverse of str(). Throws std::invalid_argument / NotConcave.
  static BundleSpec parse(std::string_view text, LiftChoice lift = LiftChoice::Standard, int n = 1);
};

/// Integral over M_{0,k}(P^n, d) of prod_i ev_i^*(H^{m_i}) times the Euler
/// class of the obstruction bundle.
struct InvariantQuery {
  int n = 1;
  int d = 1;
  int k = 0;
  std::vector<int> insertions;
  BundleSpec obstruction;

  int moduli_dimension() const { return n + (n + 1) * d + k - 3; }
  int insertion_degree() const;
  bool balanced() const;
  /// Throws InvalidQuery on malformed fields and DimensionMismatch when the
  /// degrees do not add up to the moduli dimension.
  void check() const;
};

/// True when no factor that appears in a denominator of a graph contribution
/// up to degree `d` vanishes: distinct lambdas, no
/// (a lambda_i + b lambda_j)/e = lambda_k with a + b = e <= d, and no
/// opposite flag weights at a two-edge vertex.
bool is_generic(std::span<const BigRational> lambdas, int d);

/// Draws candidates until one is generic for degree `d`.
WeightVector select_generic_weights(const std::function<std::vector<BigRational>()>& candidate, int d);

/// Deterministic generic weights for n + 1 fixed points.
WeightVector sample_generic_weights(std::uint64_t seed, int n, int d, std::uint64_t salt = 0);

/// Torus weights of H^1(C, f^*O(a)) for a degree-d_alpha cover C of the line
/// joining fixed points i and j, given the lifts mu_i, mu_j of O(a) at the
/// end points. Returns -a*d_alpha - 1 weights. Throws NotConcave for a >= 0 and
/// std::invalid_argument when the lifts are inconsistent.
std::vector<BigRational> line_h1_weights(int a, int i, int j, int d_alpha, const BigRational& mu_i,
                                         const BigRational& mu_j, const WeightVector& w);

/// Weights of H^1(C, f^*T*P^n) over the fixed locus of `g`, from the
/// normalization sequence: per edge a zero weight plus H^1(O(-d) x V^*), per
/// vertex (edges - 1) copies of the cotangent fibre. Size (n+1)d - n.
std::vector<BigRational> cotangent_obstruction_factors(const FixedGraph& g, int n, const WeightVector& w);

/// Weights of H^1(C, f^*(sum of line bundles)) over the fixed locus of `g`.
std::vector<BigRational> line_sum_obstruction_factors(const FixedGraph& g, const BundleSpec& bundle,
                                                      const WeightVector& w);

std::vector<BigRational> obstruction_factors(const InvariantQuery& q, const FixedGraph& g, const WeightVector& w);

/// Localization contribution of one fixed locus. Throws GenericityFailure when
/// a denominator vanishes.
BigRational graph_contribution(const InvariantQuery& q, const FixedGraph& g, const WeightVector& w,
                               const EnumerationLimits& limits = {});

struct TraceRow {
  std::string canonical;
  BigRational multiplicity;
  BigRational contribution;
  bool obstruction_has_zero = false;
};

struct InvariantOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3};
  unsigned jobs = 1;
  EnumerationLimits limits;
  /// Called once per graph for the first seed, in enumeration order.
  std::function<void(const TraceRow&)> trace;
};

struct InvariantResult {
  BigRational value;
  std::size_t graph_count = 0;
  /// Graphs whose obstruction weights include a zero.
  std::size_t zero_obstruction_graphs = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<BigRational> per_seed;
};

/// Sums graph contributions for every seed. Throws DimensionMismatch for an
/// unbalanced query, InvalidQuery for fewer than two seeds, and
/// SeedDisagreement when the per-seed totals differ.
InvariantResult invariant(const InvariantQuery& q, const InvariantOptions& opts = {});

InvariantQuery multiple_cover_query(int d, LiftChoice lift = LiftChoice::Standard);
/// Contribution of degree-d covers of a rigid (-1,-1) curve.
BigRational multiple_cover(int d, const InvariantOptions& opts = {}, LiftChoice lift = LiftChoice::Standard);

/// Plane-curve count N_d as a localization query: 3d - 1 point insertions on P^2.
InvariantQuery plane_curve_query(int d);

/// N_d of P^2 from the classical associativity recursion.
BigRational kontsevich_recursion_N(int d);

struct VanishingRow {
  InvariantQuery query;
  BigRational value;
  std::size_t graph_count = 0;
  std::size_t zero_obstruction_graphs = 0;
};

struct VanishingReport {
  int n = 0;
  int d_max = 0;
  int k = 0;
  std::vector<VanishingRow> rows;

  bool all_zero() const;
  /// Every graph of every row had a zero obstruction weight.
  bool full_zero_incidence() const;
};

/// All dimension-balanced queries prod ev_i^*(H^{m_i}) with 0 <= m_i <= n
/// against the cotangent obstruction bundle, d = 1..d_max. Throws
/// InvalidQuery for n < 2.
VanishingReport vanishing_scan(int n, int d_max, int k, const InvariantOptions& opts = {});

nlohmann::json to_json(const InvariantQuery& q);
InvariantQuery query_from_json(const nlohmann::json& j);
nlohmann::json to_json(const InvariantQuery& q, const InvariantResult& r);
nlohmann::json to_json(const VanishingReport& r);

}  // namespace flopgw::gw
