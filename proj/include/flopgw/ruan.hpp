#pragma once

// Quantum-corrected triple products on a model ring containing an exceptional
// P^n, with the correction series produced by localization. Every curve class
// in question lies in the exceptional P^n, so an insertion only sees the
// restriction of a class to P^n, a polynomial in H.

#include "flopgw/flop.hpp"
#include "flopgw/localization.hpp"
#include "flopgw/ring.hpp"

#include "json.hpp"

#include <array>
#include <map>
#include <vector>

namespace flopgw::ruan {

struct RuanModel {
  RingPtr ring;
  /// Generator i restricts to restriction[i] * H. Generators must have degree 2.
  std::vector<BigRational> restriction;
  int n = 2;
};

/// P^n x P^n with the exceptional P^n embedded diagonally (both generators
/// restrict to H).
RuanModel diagonal_model(int n);

/// Coefficients of H^0 .. H^n in the restriction of x.
std::vector<BigRational> restrict_to_exceptional(const RuanModel& m, const ClassElement& x);

/// Genus-0, degree-d, three-point invariants of the exceptional P^n against
/// the cotangent obstruction bundle, cached per insertion triple.
class ExceptionalInvariants {
public:
  ExceptionalInvariants(int n, gw::InvariantOptions opts) : n_(n), opts_(std::move(opts)) {}

  /// Zero without evaluation when a + b + c does not match the dimension.
  BigRational triple(int d, int a, int b, int c);
  std::size_t evaluated() const { return cache_.size(); }
  std::size_t nonzero() const;

private:
  int n_;
  gw::InvariantOptions opts_;
  std::map<std::array<int, 4>, BigRational> cache_;
};

/// Psi_1 .. Psi_{d_max} for the triple (a, b, c), by multilinearity.
std::vector<flop::SeriesTerm> correction_series(const RuanModel& m, ExceptionalInvariants& inv, int d_max,
                                                const ClassElement& a, const ClassElement& b, const ClassElement& c);

struct RuanReport {
  int n = 0;
  int d_max = 0;
  std::size_t triples = 0;
  std::size_t mismatches = 0;
  std::size_t invariants_evaluated = 0;
  std::size_t invariants_nonzero = 0;
  bool collapsed() const { return mismatches == 0 && invariants_nonzero == 0; }
};

/// Compares the quantum-corrected and ordinary triple products on every basis
/// triple of the diagonal model.
RuanReport ruan_collapse(int n, int d_max, const gw::InvariantOptions& opts = {});

nlohmann::json to_json(const RuanReport& r);

}  // namespace flopgw::ruan
