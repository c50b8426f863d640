#ifndef QMOD_BEREZIN_HPP
#define QMOD_BEREZIN_HPP

#include <vector>

#include "qmod/vector_field.hpp"

namespace qmod {

/// A Berezin volume scale * e^g * D[x]; the exponential is never
/// materialised. g is even with zero constant term, scale > 0.
class BerezinVolume {
 public:
  BerezinVolume(Chart chart, Rational scale, GradedElem logdensity);

  /// The coordinate volume D[x].
  static BerezinVolume coordinate(const Chart& chart);

  const Chart& chart() const { return chart_; }
  const Rational& scale() const { return scale_; }
  const GradedElem& logdensity() const { return logdensity_; }

  std::string to_string() const;

 private:
  Chart chart_;
  Rational scale_;
  GradedElem logdensity_;
};

/// An even block supermatrix over a chart: A (even-even) and D (odd-odd)
/// blocks carry even entries, B and C odd entries.
class SuperMatrix {
 public:
  using Block = std::vector<std::vector<GradedElem>>;

  SuperMatrix(Chart chart, Block a, Block b, Block c, Block d);

  static SuperMatrix identity(const Chart& chart, std::size_t n_even, std::size_t n_odd);

  const Chart& chart() const { return chart_; }
  std::size_t n_even() const { return ne_; }
  std::size_t n_odd() const { return no_; }
  const Block& a() const { return a_; }
  const Block& b() const { return b_; }
  const Block& c() const { return c_; }
  const Block& d() const { return d_; }

  friend SuperMatrix operator*(const SuperMatrix& m, const SuperMatrix& n);

 private:
  Chart chart_;
  std::size_t ne_ = 0, no_ = 0;
  Block a_, b_, c_, d_;
};

/// det(A - B D^-1 C) * det(D)^-1 in the truncated algebra.
GradedElem berezinian(const SuperMatrix& m);

/// Div_rho X = sum_a (-1)^{a~(X~+1)} d_a X^a + X(g).
GradedElem divergence(const VectorField& x, const BerezinVolume& rho);

/// Density factor of L_X rho relative to rho; definitional alias of divergence.
GradedElem lie_derivative_volume(const VectorField& x, const BerezinVolume& rho);

/// Jacobian Berezinian of psi as a supermatrix over the source chart.
SuperMatrix jacobian(const ChartMorphism& psi);

/// Pullback of a volume on psi's target chart to the source chart.
/// Rejects non-invertible Jacobians and negative constant Berezinians.
BerezinVolume pullback_volume(const ChartMorphism& psi, const BerezinVolume& rho);

}  // namespace qmod

#endif
