#include "tropcram/trop_core.hpp"

#include "tropcram/error.hpp"
#include "tropcram/lp.hpp"

namespace tropcram {

TropPolynomial::TropPolynomial(int dimension, std::map<Monomial, Rational> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension_ < 1) throw DomainError("polynomial", "dimension must be positive");
  if (terms_.empty()) throw DomainError("polynomial", "polynomial has no terms");
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m.size()) != dimension_) {
      throw DomainError("polynomial", "monomial length differs from the dimension");
    }
  }
}

TropPolynomial TropPolynomial::on_polytope(const LatticePolytope& polytope,
                                           const RationalVector& coefficients) {
  if (coefficients.size() != polytope.size()) {
    throw DomainError("polynomial", "coefficient count differs from the number of lattice points");
  }
  std::map<Monomial, Rational> terms;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    terms.emplace(polytope.lattice_points()[j], coefficients[j]);
  }
  return TropPolynomial(polytope.dimension(), std::move(terms));
}

std::vector<Monomial> TropPolynomial::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back(m);
  return out;
}

const Rational& TropPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) throw DomainError("polynomial", "no such monomial");
  return it->second;
}

LatticePolytope TropPolynomial::newton_polytope() const {
  return LatticePolytope(dimension_, monomials());
}

EvalResult evaluate(const TropPolynomial& f, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != f.dimension()) {
    throw DomainError("evaluate", "point dimension differs from the polynomial dimension");
  }
  EvalResult r;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational v = c;
    for (std::size_t k = 0; k < x.size(); ++k) v += m[k] * x[k];
    if (first || v < r.min_value) {
      r.min_value = v;
      r.argmin.assign(1, m);
      first = false;
    } else if (v == r.min_value) {
      r.argmin.push_back(m);
    }
  }
  return r;
}

int multiplicity_at(const TropPolynomial& f, std::span<const Rational> x) {
  try {
    return static_cast<int>(evaluate(f, x).argmin.size()) - 1;
  } catch (const DomainError& e) {
    throw DomainError("multiplicity_at", e.message());
  }
}

namespace {

// min sum_I lambda_I a_I  s.t.  sum_I lambda_I I = J, sum lambda = 1, lambda >= 0.
Rational lower_hull_value(const TropPolynomial& f, const Monomial& target) {
  lp::LinearProgram prog;
  const auto& terms = f.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) prog.add_variable();
  for (int k = 0; k < f.dimension(); ++k) {
    RationalVector row;
    row.reserve(terms.size());
    for (const auto& [m, c] : terms) row.emplace_back(m[k]);
    prog.add_constraint(std::move(row), lp::Sense::equal, target[k]);
  }
  prog.add_constraint(RationalVector(terms.size(), 1), lp::Sense::equal, 1);
  RationalVector obj;
  obj.reserve(terms.size());
  for (const auto& [m, c] : terms) obj.push_back(c);
  prog.set_objective(std::move(obj), false);
  auto sol = prog.solve();
  if (sol.status != lp::Status::optimal) {
    throw DomainError("saturate", "lattice point outside the Newton polytope");
  }
  return sol.objective;
}

}  // namespace

TropPolynomial saturate(const TropPolynomial& f) {
  const LatticePolytope newton = f.newton_polytope();
  std::map<Monomial, Rational> out;
  for (const auto& p : newton.lattice_points()) out.emplace(p, lower_hull_value(f, p));
  return TropPolynomial(f.dimension(), std::move(out));
}

bool is_saturated(const TropPolynomial& f) { return saturate(f) == f; }

TropPolynomial scale(const TropPolynomial& f, const Rational& c) {
  std::map<Monomial, Rational> out;
  for (const auto& [m, a] : f.terms()) out.emplace(m, a + c);
  return TropPolynomial(f.dimension(), std::move(out));
}

}  // namespace tropcram
