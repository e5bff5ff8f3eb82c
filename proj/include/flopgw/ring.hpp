#pragma once

// Finitely presented graded-commutative rings over Q with a top-degree
// integration functional. Rings here are small (two or three generators,
// top degree at most a few dozen), so each graded piece is handled by dense
// exact Gaussian elimination on the span of {monomial * relation}.

#include "flopgw/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace flopgw {

using Exponents = std::vector<int>;

/// A polynomial in the generators of some ring, not reduced modulo relations.
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const BigRational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponents, BigRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const BigRational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const BigRational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const BigRational& c) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int e) const;

private:
  std::size_t num_vars_ = 0;
  std::map<Exponents, BigRational> terms_;
};

/// Parses an expression such as "(h+h')*(h^2 - h*h' + h'^2) - 3/2*h" over the
/// given generator names. Numbers may carry a "/q" suffix. Throws
/// UnknownGenerator for identifiers not in `names`, std::invalid_argument on
/// syntax errors.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names);

/// Renders a polynomial with generator names, highest graded-lex term first.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names,
                              const std::vector<int>& degrees);

struct Generator {
  std::string name;
  int degree = 2;  ///< cohomological (real) degree, positive and even
};

/// Raw description of a presented ring, as read from text or built in code.
struct PresentationData {
  std::string name;
  std::vector<Generator> generators;
  std::vector<std::string> relations;  ///< polynomial expressions
  int top_degree = 0;                  ///< real dimension of the space
  std::string normalizer;              ///< top-degree monomial with integral 1
};

class ClassElement;

class RingPresentation : public std::enable_shared_from_this<RingPresentation> {
  struct Private {};

public:
  RingPresentation(Private, PresentationData data);

  /// Builds and verifies a ring. Throws RelationNotHomogeneous, UnknownGenerator,
  /// InvalidPresentation (ring does not vanish above top, or the top piece is
  /// not one-dimensional) and DegeneratePairing.
  static std::shared_ptr<const RingPresentation> build(PresentationData data);

  const std::string& name() const { return data_.name; }
  const PresentationData& data() const { return data_; }
  std::size_t num_generators() const { return data_.generators.size(); }
  std::vector<std::string> generator_names() const;
  std::vector<int> generator_degrees() const;
  int top_degree() const { return data_.top_degree; }
  const std::vector<Polynomial>& relations() const { return relations_; }

  /// Cohomological degree of a monomial.
  int degree_of(const Exponents& e) const;

  /// Standard monomials in cohomological degree `deg` (even), highest first.
  const std::vector<Exponents>& basis(int deg) const;
  /// Betti numbers b_0, b_2, ..., b_top.
  std::vector<std::size_t> betti() const;

  /// All standard monomials of all degrees, ascending degree.
  std::vector<ClassElement> full_basis() const;
  /// Standard monomials of one degree, as classes.
  std::vector<ClassElement> basis_classes(int deg) const;

  ClassElement zero() const;
  ClassElement one() const;
  ClassElement generator(std::size_t index) const;
  ClassElement generator(std::string_view name) const;
  ClassElement monomial(const Exponents& e) const;
  ClassElement scalar(const BigRational& c) const;

  /// Unique representative on the standard monomial basis.
  ClassElement normal_form(const Polynomial& p) const;
  /// Parses an expression in the generators and reduces it.
  ClassElement parse(std::string_view expr) const;

  /// Coefficient of the top-degree normalizer; lower-degree parts contribute 0.
  BigRational integrate(const ClassElement& x) const;

  /// Matrix (integrate(b_i * c_j)) for b in basis(deg), c in basis(top - deg).
  std::vector<std::vector<BigRational>> pairing_matrix(int deg) const;

private:
  friend class ClassElement;

  struct Piece {
    std::vector<Exponents> monomials;          // all monomials of this degree, highest first
    std::map<Exponents, std::size_t> column;   // monomial -> index in `monomials`
    // Reduced row-echelon rows of the relation span keyed by pivot monomial;
    // each row has coefficient 1 on its pivot and 0 on every other pivot.
    std::map<Exponents, std::map<Exponents, BigRational>> reducer;
    std::vector<Exponents> standard;           // non-pivot monomials, highest first
  };

  void compute_pieces();
  void verify();
  const Piece* piece(int deg) const;
  void reduce_homogeneous(int deg, std::map<Exponents, BigRational>& terms) const;

  PresentationData data_;
  std::vector<Polynomial> relations_;
  std::vector<int> weights_;  // generator degrees / 2
  int max_weight_ = 0;
  std::vector<Piece> pieces_;  // index = complex degree, 0 .. top/2 + max_weight
  Exponents normalizer_standard_;
  BigRational normalizer_scale_;
};

using RingPtr = std::shared_ptr<const RingPresentation>;

inline RingPtr build_ring(PresentationData data) { return RingPresentation::build(std::move(data)); }

/// Parses the declarative text format:
///
///   name E2
///   generators h:2 h':2
///   relations h^3; h'^3
///   relations h^2 - h*h' + h'^2
///   top 6
///   normalizer h^2*h'
///
/// Lines starting with '#' are comments; `relations` may repeat.
PresentationData parse_presentation(std::string_view text);
std::string format_presentation(const PresentationData& data);

/// A class in a presented ring, stored in normal form. Immutable in spirit:
/// all arithmetic returns new values.
class ClassElement {
public:
  ClassElement() = default;
  ClassElement(RingPtr ring, std::map<Exponents, BigRational> coeffs)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

  const RingPtr& ring() const { return ring_; }
  const std::map<Exponents, BigRational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Degree of the single homogeneous component, or -1 for zero. Throws
  /// std::logic_error for a mixed-degree class.
  int degree() const;
  bool is_homogeneous() const;
  ClassElement component(int deg) const;
  BigRational coefficient(const Exponents& monomial) const;

  Polynomial to_polynomial() const;
  std::string str() const;

  ClassElement& operator+=(const ClassElement& o);
  ClassElement& operator-=(const ClassElement& o);
  friend ClassElement operator+(ClassElement a, const ClassElement& b) { return a += b; }
  friend ClassElement operator-(ClassElement a, const ClassElement& b) { return a -= b; }
  friend ClassElement operator-(const ClassElement& a);
  friend ClassElement operator*(const ClassElement& a, const ClassElement& b);
  friend ClassElement operator*(const BigRational& c, const ClassElement& a);
  friend bool operator==(const ClassElement& a, const ClassElement& b);

  ClassElement pow(int e) const;

private:
  void check_same_ring(const ClassElement& o) const;

  RingPtr ring_;
  std::map<Exponents, BigRational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const ClassElement& x);

inline BigRational integrate(const ClassElement& x) { return x.ring()->integrate(x); }

/// A map of spaces f: source -> target described by f^* of each target
/// generator (as classes in the source ring). Pushforward is defined by the
/// projection formula against the Poincare pairings of both rings.
class RingMap {
public:
  /// Validates degrees of the images and that every target relation pulls back
  /// to zero. Throws RingMismatch / InvalidPresentation on a malformed map.
  RingMap(std::string name, RingPtr source, RingPtr target, std::vector<ClassElement> generator_images);

  const std::string& name() const { return name_; }
  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<ClassElement>& generator_images() const { return images_; }
  /// Complex dimension of the fibres, (top(source) - top(target)) / 2.
  /// Negative for embeddings, where it is minus the codimension.
  int fiber_dimension() const { return fiber_dim_; }

  /// f^*: target ring -> source ring.
  ClassElement pullback(const ClassElement& x) const;
  /// f_*: source ring -> target ring, lowering degree by 2 * fiber_dimension.
  /// The result y is the unique class with integrate(y * z) = integrate(x * f^*z)
  /// for every z in the target ring.
  ClassElement pushforward(const ClassElement& x) const;

private:
  ClassElement pull_polynomial(const Polynomial& p) const;

  std::string name_;
  RingPtr source_;
  RingPtr target_;
  std::vector<ClassElement> images_;
  int fiber_dim_ = 0;
};

/// Rank of a rational matrix (fraction-free enough for the sizes used here).
std::size_t matrix_rank(std::vector<std::vector<BigRational>> m);
/// Solves A x = b for square invertible A; throws NonRepresentable when A is
/// singular.
std::vector<BigRational> solve_linear(std::vector<std::vector<BigRational>> a, std::vector<BigRational> b);

}  // namespace flopgw
