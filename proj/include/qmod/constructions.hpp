#ifndef QMOD_CONSTRUCTIONS_HPP
#define QMOD_CONSTRUCTIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "qmod/brackets.hpp"
#include "qmod/modular.hpp"

namespace qmod {

/// Injects an element of a smaller chart into a chart that contains all of
/// its coordinates (matched by name and parity).
GradedElem inject(const GradedElem& f, const Chart& into);
VectorField inject_field(const VectorField& x, const Chart& into);

/// PiTM: coordinates (x^a, dx^a) with parity(dx^a) = a~ + 1. When the base
/// carries bi-weights, fibres get weight + (1,0).
Chart antitangent(const Chart& base);

/// The de Rham differential d = dx^a d/dx^a on antitangent(base).
VectorField de_rham(const Chart& base);

/// i_X = (-1)^{X~} X^a d/d(dx^a) on the antitangent chart.
VectorField interior(const VectorField& x);

/// L_Q = [d, i_Q], computed literally from the bracket.
VectorField lie_derivative_lift(const VectorField& q);
/// The closed form Q^a d/dx^a - dx^b dQ^a/dx^b d/d(dx^a); test cross-check.
VectorField lie_derivative_lift_closed_form(const VectorField& q);

CotangentChart cotangent(const Chart& base);
AnticotangentChart anticotangent(const Chart& base);

/// Even symbol S = Q^a p_a of a vector field on the base.
GradedElem even_symbol(const VectorField& q, const CotangentChart& cc);
/// Odd symbol P = Q^a x*_a.
GradedElem odd_symbol(const VectorField& q, const AnticotangentChart& ac);

/// Hamiltonian lift {S, .} of a homological Q to T*M.
VectorField cotangent_lift(const VectorField& q, const CotangentChart& cc);
/// Hamiltonian lift [[P, .]] of a homological Q to PiT*M.
VectorField anticotangent_lift(const VectorField& q, const AnticotangentChart& ac);

struct ProductResult {
  Chart chart;
  VectorField q;
  std::vector<std::pair<std::string, std::string>> renamed;  // collisions, old -> new
};

/// Q-manifold product: concatenated chart, sum field.
ProductResult product(const Chart& m1, const VectorField& q1, const Chart& m2,
                      const VectorField& q2);

/// Structure data of an L-infinity algebroid in coordinates: terms keyed by
/// the ordered tuple of fibre indices multiplying the coefficient. A term
/// (tuple, target, coeff) contributes (1/n!) xi^{t1}...xi^{tn} coeff d/dtarget.
/// add_*_term stores the graded symmetrisation of a canonical entry.
class AlgebroidData {
 public:
  AlgebroidData(Chart base, std::vector<Coord> fibres);

  const Chart& base() const { return base_; }
  const Chart& total() const { return total_; }  // (x, xi)
  std::size_t fibre_count() const { return fibres_; }
  std::size_t fibre_index(std::size_t alpha) const { return base_.size() + alpha; }

  /// Adds the graded-symmetrised term xi^{tuple} coeff d/dx^a (coeff over
  /// the base chart; base_coord indexes the base chart).
  void add_x_term(std::vector<std::size_t> tuple, std::size_t base_coord, GradedElem coeff);
  /// Same, with target d/dxi^beta (beta a fibre index, 0-based).
  void add_f_term(std::vector<std::size_t> tuple, std::size_t beta, GradedElem coeff);

  struct Term {
    std::vector<std::size_t> tuple;  // fibre indices multiplying the coeff
    std::size_t target;              // coordinate index in the total chart
    GradedElem coeff;                // over the base chart
  };
  const std::vector<Term>& terms() const { return terms_; }

  /// Assembles d_A on the total chart; no homological check.
  VectorField assemble() const;

 private:
  void add_symmetrised(const std::vector<std::size_t>& tuple, std::size_t target,
                       const GradedElem& coeff);

  Chart base_;
  Chart total_;
  std::size_t fibres_ = 0;
  std::vector<Term> terms_;
};

/// Assembles and validates a Lie algebroid (the homological check *is* the
/// axiom check).
VectorField lie_algebroid(const AlgebroidData& data);

/// Local representative of the assembled field; requires it homological.
GradedElem l_infinity_local_rep(const AlgebroidData& data);
/// Direct transcription of the displayed characteristic-form formula; the
/// cross-check path, never used to compute l_infinity_local_rep.
GradedElem l_infinity_local_rep_formula(const AlgebroidData& data);

/// Q-structure of a 1-1 tensor N on a purely even base; throws unless N is
/// Nijenhuis (the homological check).
VectorField nijenhuis_field(const Chart& base,
                            const std::vector<std::vector<GradedElem>>& n);

/// Sum of a Lie algebroid differential and a commuting morphic weight-zero
/// homological field.
VectorField q_algebroid_sum(const VectorField& d_a, const VectorField& xi);

/// The odd anchor a_Q : M -> PiTM, x -> x, dx -> Q^a.
ChartMorphism anchor(const VectorField& q);

/// e^{-i_Q} d e^{i_Q} applied to f on the antitangent chart of Q's base.
GradedElem mqk_conjugate(const VectorField& q, const GradedElem& f);

/// A pair of commuting homological fields of bi-weights (0,1) and (1,0).
struct DoubleStructure {
  Chart chart;
  VectorField q01;
  VectorField q10;
};

/// PiTPiA of a Lie algebroid with Q01 = L_{d_A} and Q10 = d; validates
/// homologicality, commutation and bi-weights.
DoubleStructure double_from_algebroid(const AlgebroidData& data);

/// local_rep of Q01 + Q10.
GradedElem double_modular_rep(const DoubleStructure& d);

/// Bi-weight of a monomial (sum of coordinate weights); nullopt if some
/// coordinate carries no weight.
std::optional<BiWeight> monomial_weight(const Chart& chart, const Monomial& m);
/// Checks every component of x is homogeneous of bi-weight w relative to
/// its coordinate.
bool has_biweight(const VectorField& x, BiWeight w);

}  // namespace qmod

#endif
