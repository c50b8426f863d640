#include "qmod/morphism.hpp"

namespace qmod {

ChartMorphism::ChartMorphism(Chart source, Chart target, std::vector<GradedElem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != target_.size())
    throw Error("morphism needs one image per target coordinate");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].chart() != source_)
      throw ChartMismatch("image of '" + target_.coord(i).name +
                          "' does not live on the source chart");
    auto p = images_[i].parity();
    if (!p) throw ParityError("image of '" + target_.coord(i).name + "' mixes parities");
    if (!images_[i].is_zero() && *p != target_.coord(i).parity)
      throw ParityError("image of '" + target_.coord(i).name + "' has wrong parity");
  }
}

ChartMorphism ChartMorphism::identity(const Chart& chart) {
  std::vector<GradedElem> images;
  images.reserve(chart.size());
  for (std::size_t i = 0; i < chart.size(); ++i)
    images.push_back(GradedElem::coordinate(chart, i));
  return ChartMorphism(chart, chart, std::move(images));
}

GradedElem substitute(const GradedElem& f, const ChartMorphism& rule) {
  if (f.chart() != rule.target())
    throw ChartMismatch("substitute: element does not live on the rule's target chart");
  GradedElem out = GradedElem::zero(rule.source());
  for (const auto& [m, c] : f.terms()) {
    GradedElem term = GradedElem::constant(rule.source(), c);
    // Factors multiplied in chart coordinate order; the algebra handles
    // all Koszul signs since images parity-match their coordinates.
    for (std::size_t i = 0; i < rule.target().size(); ++i) {
      if (m.exps[i] == 0) continue;
      term = term * rule.image(i).pow(m.exps[i]);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

}  // namespace qmod
