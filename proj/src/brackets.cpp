#include "qmod/brackets.hpp"

namespace qmod {

namespace {

bool odd_coord(const Chart& ch, std::size_t i) {
  return ch.coord(i).parity == Parity::Odd;
}

}  // namespace

GradedElem poisson(const GradedElem& f, const GradedElem& g, const CotangentChart& cc) {
  require_same_chart(f.chart(), cc.chart);
  require_same_chart(g.chart(), cc.chart);
  GradedElem out = GradedElem::zero(cc.chart);
  // Bilinear in g; split f into homogeneous parts for the signs.
  for (Parity pf : {Parity::Even, Parity::Odd}) {
    GradedElem fp = f.part(pf);
    if (fp.is_zero()) continue;
    for (std::size_t a = 0; a < cc.base; ++a) {
      bool a_odd = odd_coord(cc.chart, a);
      std::size_t pa = cc.fibre_index(a);
      // (-1)^{a~(F~+1)} dF/dp_a dG/dx^a
      GradedElem t1 = fp.left_partial(pa) * g.left_partial(a);
      bool m1 = a_odd && pf == Parity::Even;
      out += m1 ? -t1 : t1;
      // - (-1)^{a~ F~} dF/dx^a dG/dp_a
      GradedElem t2 = fp.left_partial(a) * g.left_partial(pa);
      bool m2 = a_odd && pf == Parity::Odd;
      out -= m2 ? -t2 : t2;
    }
  }
  return out;
}

GradedElem schouten(const GradedElem& f, const GradedElem& g, const AnticotangentChart& ac) {
  require_same_chart(f.chart(), ac.chart);
  require_same_chart(g.chart(), ac.chart);
  GradedElem out = GradedElem::zero(ac.chart);
  for (Parity pf : {Parity::Even, Parity::Odd}) {
    GradedElem fp = f.part(pf);
    if (fp.is_zero()) continue;
    for (std::size_t a = 0; a < ac.base; ++a) {
      bool a_odd = odd_coord(ac.chart, a);
      std::size_t sa = ac.fibre_index(a);
      // (-1)^{(a~+1)(F~+1)} dF/dx*_a dG/dx^a
      GradedElem t1 = fp.left_partial(sa) * g.left_partial(a);
      bool m1 = !a_odd && pf == Parity::Even;
      out += m1 ? -t1 : t1;
      // - (-1)^{a~(F~+1)} dF/dx^a dG/dx*_a
      GradedElem t2 = fp.left_partial(a) * g.left_partial(sa);
      bool m2 = a_odd && pf == Parity::Even;
      out -= m2 ? -t2 : t2;
    }
  }
  return out;
}

VectorField hamiltonian_vf_even(const GradedElem& s, const CotangentChart& cc) {
  require_same_chart(s.chart(), cc.chart);
  VectorField x(cc.chart);
  for (std::size_t i = 0; i < cc.chart.size(); ++i)
    x.set_component(i, poisson(s, GradedElem::coordinate(cc.chart, i), cc));
  return x;
}

VectorField hamiltonian_vf_odd(const GradedElem& p, const AnticotangentChart& ac) {
  require_same_chart(p.chart(), ac.chart);
  if (p.parity() != Parity::Even)
    throw ParityError("hamiltonian_vf_odd: homotopy Poisson structure must be even");
  VectorField x(ac.chart);
  for (std::size_t i = 0; i < ac.chart.size(); ++i)
    x.set_component(i, schouten(p, GradedElem::coordinate(ac.chart, i), ac));
  return x;
}

GradedElem bv_laplacian(const GradedElem& p, const AnticotangentChart& ac) {
  require_same_chart(p.chart(), ac.chart);
  GradedElem out = GradedElem::zero(ac.chart);
  for (std::size_t a = 0; a < ac.base; ++a) {
    // d/dx*_a first, then d/dx^a; both left derivatives.
    GradedElem t = p.left_partial(ac.fibre_index(a)).left_partial(a);
    out += odd_coord(ac.chart, a) ? t : -t;  // (-1)^{a~+1}
  }
  return out;
}

GradedElem bv_laplacian(const GradedElem& p, const AnticotangentChart& ac,
                        const BerezinVolume& rho) {
  require_same_chart(rho.chart(), ac.chart);
  return bv_laplacian(p, ac) + schouten(p, (Rational(1) / 2) * rho.logdensity(), ac);
}

bool first_order_qme_check(const GradedElem& p, const GradedElem& p1,
                           const AnticotangentChart& ac) {
  if (p.parity() != Parity::Even || p1.parity() != Parity::Even)
    throw ParityError("first_order_qme_check: P and P1 must be even");
  if (!schouten(p, p, ac).is_zero())
    throw Error("first_order_qme_check: classical master equation [[P,P]] != 0");
  return schouten(p, p1, ac) == bv_laplacian(p, ac);
}

}  // namespace qmod
