#pragma once

#include <map>
#include <span>
#include <vector>

#include "tropcram/polytope.hpp"
#include "tropcram/rational.hpp"

// The min-plus semiring: a (+) b = min(a, b), a (.) b = a + b, over exact
// rationals. There is no infinity element; a polynomial simply omits terms.
namespace tropcram {

using Monomial = LatticePoint;

class TropPolynomial {
 public:
  TropPolynomial(int dimension, std::map<Monomial, Rational> terms);

  // Coefficients listed in the canonical lattice-point order of `polytope`.
  static TropPolynomial on_polytope(const LatticePolytope& polytope, const RationalVector& coefficients);

  int dimension() const { return dimension_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::vector<Monomial> monomials() const;
  const Rational& coefficient(const Monomial& m) const;

  // Newton polytope conv(monomials).
  LatticePolytope newton_polytope() const;

  bool operator==(const TropPolynomial& other) const = default;

 private:
  int dimension_;
  std::map<Monomial, Rational> terms_;
};

struct EvalResult {
  Rational min_value;
  std::vector<Monomial> argmin;  // ascending; every member attains min_value
};

EvalResult evaluate(const TropPolynomial& f, std::span<const Rational> x);

// |argmin| - 1; zero exactly off the hypersurface.
int multiplicity_at(const TropPolynomial& f, std::span<const Rational> x);

// Lowers every coefficient to the lower convex hull of the lifted points
// (I, a_I) and fills lattice points of the Newton polytope that have no term.
TropPolynomial saturate(const TropPolynomial& f);
bool is_saturated(const TropPolynomial& f);

// Adds c to every coefficient (tropical scalar multiplication).
TropPolynomial scale(const TropPolynomial& f, const Rational& c);

}  // namespace tropcram
