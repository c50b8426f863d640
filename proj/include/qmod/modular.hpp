#ifndef QMOD_MODULAR_HPP
#define QMOD_MODULAR_HPP

#include <optional>
#include <vector>

#include "qmod/berezin.hpp"

namespace qmod {

/// Result of the Q-exactness decision procedure. A negative verdict is a
/// proof only when `complete` is set (purely odd chart, finite-dimensional
/// function space).
struct ExactnessVerdict {
  bool exact = false;
  std::optional<GradedElem> witness;  // Q(witness) == queried element when exact
  unsigned bound = 0;
  bool complete = false;

  static ExactnessVerdict found(GradedElem w, unsigned bound) {
    return {true, std::move(w), bound, true};
  }
  static ExactnessVerdict none(unsigned bound, bool complete) {
    return {false, std::nullopt, bound, complete};
  }
};

/// Square matrix A_beta^alpha of the linear behaviour of Q along a
/// subsupermanifold; entries live over the boundary chart.
struct OddMatrix {
  Chart chart;
  std::vector<std::vector<GradedElem>> entries;
};

/// Divergence with respect to the coordinate volume; no homological check.
/// For odd fields this is the plain sum d_a Q^a.
GradedElem coordinate_divergence(const VectorField& q);

/// phi_Q = sum_a (-1)^{a~(Q~+1)} d_a Q^a. Requires Q homological.
GradedElem local_rep(const VectorField& q);

/// Div_rho Q; requires Q homological. Always Q-closed.
GradedElem modular_rep(const VectorField& q, const BerezinVolume& rho);

bool is_closed(const GradedElem& f, const VectorField& q);

/// Decides Q(g) = f over the monomial basis of parity f~+1 and even degree
/// <= degree_bound, by exact linear algebra. f must be homogeneous and
/// Q-closed.
ExactnessVerdict solve_exactness(const GradedElem& f, const VectorField& q,
                                 unsigned degree_bound);

/// Whether f1 and f2 represent the same standard cohomology class.
ExactnessVerdict classes_equal(const GradedElem& f1, const GradedElem& f2,
                               const VectorField& q, unsigned degree_bound);

/// Mod(psi) representative: Div_rho1 Q1 - psi*(Div_rho2 Q2).
GradedElem relative_rep(const ChartMorphism& psi, const VectorField& q1,
                        const VectorField& q2, const BerezinVolume& rho1,
                        const BerezinVolume& rho2);

/// The boundary restriction data of an adapted-coordinate split: the chart
/// spanned by the non-interior coordinates, plus the pullback rule sending
/// interior coordinates to zero.
struct AdaptedSplit {
  Chart boundary;
  std::vector<std::size_t> interior;      // indices into the ambient chart
  ChartMorphism restrict;                 // ambient -> boundary, y -> 0
};

AdaptedSplit make_adapted_split(const Chart& ambient,
                                const std::vector<std::string>& interior_names);

/// phi_j = - sum_alpha (d Q^alpha / d y^alpha)|_{y=0}, over the boundary
/// chart. Requires Q tangent to {y=0} with a homological restriction.
GradedElem inclusion_rep(const VectorField& q_m, const AdaptedSplit& split);

/// A_beta^alpha = (d Q^alpha / d y^beta)|_{y=0}.
OddMatrix odd_matrix_of(const VectorField& q_m, const AdaptedSplit& split);

/// Plain diagonal sum, normalised so inclusion_rep == -supertrace_odd(A).
GradedElem supertrace_odd(const OddMatrix& a);

/// The restriction Q_N of a tangent field (components of the boundary
/// coordinates, restricted to y=0).
VectorField restrict_field(const VectorField& q_m, const AdaptedSplit& split);

}  // namespace qmod

#endif
