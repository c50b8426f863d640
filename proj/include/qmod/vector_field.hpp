#ifndef QMOD_VECTOR_FIELD_HPP
#define QMOD_VECTOR_FIELD_HPP

#include <vector>

#include "qmod/graded.hpp"
#include "qmod/morphism.hpp"

namespace qmod {

/// A derivation X = sum_a X^a d/dx^a, one component per chart coordinate.
/// Parity is derived from the components: the part of X^a with parity
/// p + a~ belongs to the parity-p part of the field.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Chart chart);
  VectorField(Chart chart, std::vector<GradedElem> components);

  static VectorField zero(const Chart& chart) { return VectorField(chart); }

  const Chart& chart() const { return chart_; }
  const GradedElem& component(std::size_t i) const { return comps_[i]; }
  const GradedElem& component(const std::string& name) const {
    return comps_[chart_.require(name)];
  }
  const std::vector<GradedElem>& components() const { return comps_; }
  void set_component(std::size_t i, GradedElem g);
  void set_component(const std::string& name, GradedElem g) {
    set_component(chart_.require(name), std::move(g));
  }

  bool is_zero() const;

  /// Parity of a homogeneous field; nullopt when parts mix.
  std::optional<Parity> parity() const;
  VectorField part(Parity p) const;
  VectorField even_part() const { return part(Parity::Even); }
  VectorField odd_part() const { return part(Parity::Odd); }

  GradedElem apply(const GradedElem& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& x, const VectorField& y);
  friend VectorField operator-(const VectorField& x, const VectorField& y);
  friend VectorField operator*(const GradedElem& f, const VectorField& x);
  friend VectorField operator*(const Rational& c, const VectorField& x);

  bool operator==(const VectorField& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  /// Renders as `expr*d/d<coord> + ...` in chart coordinate order.
  std::string to_string() const;

 private:
  Chart chart_;
  std::vector<GradedElem> comps_;
};

/// Super Lie bracket [X,Y]; distributes bilinearly over parity parts.
VectorField bracket(const VectorField& x, const VectorField& y);

/// True iff Q is odd and sum_a Q^a d_a Q^b = 0 for every coordinate b.
bool is_homological(const VectorField& q);

/// True iff Q1(psi* y^alpha) = psi*(Q2 y^alpha) for every target coordinate.
bool is_q_morphism(const ChartMorphism& psi, const VectorField& q1, const VectorField& q2);

}  // namespace qmod

#endif
