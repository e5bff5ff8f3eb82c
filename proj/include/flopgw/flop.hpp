#pragma once

// Chow-ring model of the Mukai flop of an embedded P^n with normal bundle
// T*P^n. Everything is computed on the exceptional divisor
//
//   E = {(P, L) : P in L} in P^n x (P^n)*,   p: E -> P^n,  q: E -> (P^n)*,
//
// with A*(E) = Q[h, h'] / (h^{n+1}, h'^{n+1}, sum_i (-1)^i h^i h'^{n-i}),
// h = p^*H and h' = q^*H'. The class of E in the product is h + h'.

#include "flopgw/rational.hpp"
#include "flopgw/ring.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flopgw::flop {

/// How the self-intersection number alpha(P^n) = P^n . P^n entering the
/// middle-dimension correction of T is taken.
enum class Convention {
  Paper,  ///< -(n+1) for every n
  Chern,  ///< (-1)^n (n+1) = integral of c_n(T*P^n)
};

Convention parse_convention(std::string_view text);
std::string to_string(Convention c);

struct ExceptionalCorrectionConvention {
  Convention mode = Convention::Paper;
  BigRational value_at(int n) const;
};

struct FlopGeometry {
  int n = 0;
  RingPtr pn;       ///< A*(P^n), generator H
  RingPtr dual;     ///< A*((P^n)*), generator H'
  RingPtr product;  ///< A*(P^n x (P^n)*), generators h, h'
  RingPtr e;        ///< A*(E), generators h, h'
  RingMap p;        ///< E -> P^n
  RingMap q;        ///< E -> (P^n)*
  RingMap incl;     ///< E -> P^n x (P^n)*

  /// [P^k] = H^{n-k} in A*(P^n).
  ClassElement cycle(int k) const;
  /// [(P^k)*] = H'^{n-k} in A*((P^n)*).
  ClassElement dual_cycle(int k) const;
  /// Coefficient c with x = c * [(P^k)*] for a class of dimension k; throws
  /// std::logic_error when x is not of that shape.
  BigRational dual_cycle_coefficient(const ClassElement& x, int k) const;
};

/// Builds and verifies all four rings and the maps p, q and the inclusion.
/// Throws InvalidGeometry for n < 2.
FlopGeometry build_geometry(int n);

/// Presentation data of the four rings, usable without building a geometry.
PresentationData projective_space(int n, const std::string& gen = "H", const std::string& name = "");
PresentationData incidence_divisor(int n);

/// c_{n-1}(Q) of the excess bundle Q = p^*T*P^n / O_E(-1), from the double sum
/// over binomials.
ClassElement excess_chern(const FlopGeometry& g);

/// Full Chern class c(Q) = c(p^*T*P^n) / c(O_E(-1)) with c_1(O_E(1)) = h + h'.
ClassElement excess_chern_total(const FlopGeometry& g);

/// c_{n-1}(Q) * p^*x, the class on E whose pushforward into the blowup is
/// phi^* i_* x.
ClassElement exceptional_pullback(const FlopGeometry& g, const ClassElement& x);

/// q_*(c_{n-1}(Q) * p^*x).
ClassElement flop_image(const FlopGeometry& g, const ClassElement& x);

/// The correspondence T on the exceptional summand: flop_image plus, on the
/// degree-zero part (the class [P^n]), the correction
/// (-1)^{n+1} alpha(P^n) q_*(h^{n-1}).
ClassElement flop_T(const FlopGeometry& g, const ClassElement& x, ExceptionalCorrectionConvention conv = {});

/// Closed-form coefficient of flop_image([P^k]) on [(P^k)*]:
/// sum_{i<=k} (-1)^i C(n+1,i) C(n-i,k-i) for k < n and
/// sum_{i<n} (-1)^i C(n+1,i) for k = n.
BigRational flop_image_binomial(int n, int k);

/// alpha(P^n) under the chosen convention. Throws InvalidGeometry for n < 2.
BigRational self_intersection(int n, Convention conv);

/// One term Psi_d of the exceptional-curve series, evaluated at q = -1.
struct SeriesTerm {
  int degree = 0;
  BigRational value;
};

/// integrate(a*b*c) + sum_d Psi_d * (-1)^d.
BigRational quantum_corrected_triple(const RingPresentation& model, const ClassElement& a, const ClassElement& b,
                                     const ClassElement& c, const std::vector<SeriesTerm>& series);

/// One row of the T table: k, coefficient of flop_image([P^k]) and of T([P^k])
/// on [(P^k)*].
struct TMapRow {
  int k = 0;
  BigRational image;
  BigRational binomial;
  BigRational t_value;
};

std::vector<TMapRow> t_map_table(const FlopGeometry& g, ExceptionalCorrectionConvention conv = {});

/// Human-readable "c * (P^k)*".
std::string describe_dual_cycle(const BigRational& coeff, int k);

nlohmann::json geometry_summary(const FlopGeometry& g);
nlohmann::json t_map_json(const FlopGeometry& g, ExceptionalCorrectionConvention conv = {});

}  // namespace flopgw::flop
