#include "qmod/vector_field.hpp"

#include <sstream>

namespace qmod {

VectorField::VectorField(Chart chart) : chart_(std::move(chart)) {
  comps_.assign(chart_.size(), GradedElem::zero(chart_));
}

VectorField::VectorField(Chart chart, std::vector<GradedElem> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
  if (comps_.size() != chart_.size())
    throw Error("vector field needs one component per coordinate");
  for (const auto& c : comps_)
    if (c.chart() != chart_)
      throw ChartMismatch("vector field component on a different chart");
}

void VectorField::set_component(std::size_t i, GradedElem g) {
  if (i >= chart_.size()) throw Error("coordinate index out of range");
  if (g.chart() != chart_) throw ChartMismatch("component on a different chart");
  comps_[i] = std::move(g);
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

std::optional<Parity> VectorField::parity() const {
  std::optional<Parity> p;
  for (std::size_t a = 0; a < chart_.size(); ++a) {
    if (comps_[a].is_zero()) continue;
    auto cp = comps_[a].parity();
    if (!cp) return std::nullopt;
    Parity field_p = *cp + chart_.coord(a).parity;
    if (p && *p != field_p) return std::nullopt;
    p = field_p;
  }
  return p ? p : std::optional<Parity>(Parity::Even);  // zero field: even
}

VectorField VectorField::part(Parity p) const {
  VectorField out(chart_);
  for (std::size_t a = 0; a < chart_.size(); ++a)
    out.comps_[a] = comps_[a].part(p + chart_.coord(a).parity);
  return out;
}

GradedElem VectorField::apply(const GradedElem& f) const {
  require_same_chart(chart_, f.chart());
  GradedElem out = GradedElem::zero(chart_);
  for (std::size_t a = 0; a < chart_.size(); ++a) {
    if (comps_[a].is_zero()) continue;
    out += comps_[a] * f.left_partial(a);
  }
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out(chart_);
  for (std::size_t a = 0; a < chart_.size(); ++a) out.comps_[a] = -comps_[a];
  return out;
}

VectorField operator+(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart_, y.chart_);
  VectorField out(x.chart_);
  for (std::size_t a = 0; a < x.chart_.size(); ++a)
    out.comps_[a] = x.comps_[a] + y.comps_[a];
  return out;
}

VectorField operator-(const VectorField& x, const VectorField& y) { return x + (-y); }

VectorField operator*(const GradedElem& f, const VectorField& x) {
  require_same_chart(f.chart(), x.chart_);
  VectorField out(x.chart_);
  for (std::size_t a = 0; a < x.chart_.size(); ++a) out.comps_[a] = f * x.comps_[a];
  return out;
}

VectorField operator*(const Rational& c, const VectorField& x) {
  VectorField out(x.chart_);
  for (std::size_t a = 0; a < x.chart_.size(); ++a) out.comps_[a] = c * x.comps_[a];
  return out;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t a = 0; a < chart_.size(); ++a) {
    if (comps_[a].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[a].to_string() << ")*d/d" << chart_.coord(a).name;
  }
  return first ? "0" : os.str();
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  const Chart& chart = x.chart();
  VectorField out(chart);
  for (Parity px : {Parity::Even, Parity::Odd}) {
    VectorField xp = x.part(px);
    if (xp.is_zero()) continue;
    for (Parity py : {Parity::Even, Parity::Odd}) {
      VectorField yp = y.part(py);
      if (yp.is_zero()) continue;
      bool minus = (px == Parity::Odd && py == Parity::Odd);
      for (std::size_t a = 0; a < chart.size(); ++a) {
        GradedElem c = xp.apply(yp.component(a));
        GradedElem d = yp.apply(xp.component(a));
        out.set_component(a, out.component(a) + (minus ? c + d : c - d));
      }
    }
  }
  return out;
}

bool is_homological(const VectorField& q) {
  if (q.is_zero()) return true;  // the trivial Q-structure
  if (q.parity() != Parity::Odd) return false;
  for (std::size_t b = 0; b < q.chart().size(); ++b)
    if (!q.apply(q.component(b)).is_zero()) return false;
  return true;
}

bool is_q_morphism(const ChartMorphism& psi, const VectorField& q1, const VectorField& q2) {
  if (q1.chart() != psi.source())
    throw ChartMismatch("q1 must live on the morphism's source chart");
  if (q2.chart() != psi.target())
    throw ChartMismatch("q2 must live on the morphism's target chart");
  // Exact on generators: both sides are determined by coordinate images.
  for (std::size_t a = 0; a < psi.target().size(); ++a) {
    if (q1.apply(psi.image(a)) != substitute(q2.component(a), psi)) return false;
  }
  return true;
}

}  // namespace qmod
