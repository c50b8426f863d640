#ifndef QMOD_BRACKETS_HPP
#define QMOD_BRACKETS_HPP

#include "qmod/berezin.hpp"
#include "qmod/vector_field.hpp"

namespace qmod {

/// Darboux chart on T*M: base coordinates x^a followed by momenta p_a with
/// parity(p_a) = a~.
struct CotangentChart {
  Chart chart;
  std::size_t base = 0;  // number of base coordinates

  std::size_t fibre_index(std::size_t a) const { return base + a; }
};

/// Darboux chart on PiT*M: base coordinates x^a followed by antimomenta
/// x*_a with parity(x*_a) = a~ + 1.
struct AnticotangentChart {
  Chart chart;
  std::size_t base = 0;

  std::size_t fibre_index(std::size_t a) const { return base + a; }
};

/// Canonical Poisson bracket {F,G} on a cotangent chart.
GradedElem poisson(const GradedElem& f, const GradedElem& g, const CotangentChart& cc);

/// Canonical Schouten bracket [[F,G]] on an anticotangent chart.
GradedElem schouten(const GradedElem& f, const GradedElem& g, const AnticotangentChart& ac);

/// The derivation {S, .} as a vector field.
VectorField hamiltonian_vf_even(const GradedElem& s, const CotangentChart& cc);

/// The derivation [[P, .]] as a vector field; P must be even.
VectorField hamiltonian_vf_odd(const GradedElem& p, const AnticotangentChart& ac);

/// BV-Laplacian: sum_a (-1)^{a~+1} d_a (dP/dx*_a) + [[P, g/2]].
GradedElem bv_laplacian(const GradedElem& p, const AnticotangentChart& ac);
GradedElem bv_laplacian(const GradedElem& p, const AnticotangentChart& ac,
                        const BerezinVolume& rho);

/// First-order quantum-master-equation check: [[P,P]] = 0 is required;
/// returns true iff [[P,P1]] equals Delta P (the formal unit i is absorbed
/// into P1).
bool first_order_qme_check(const GradedElem& p, const GradedElem& p1,
                           const AnticotangentChart& ac);

}  // namespace qmod

#endif
