#ifndef QMOD_MORPHISM_HPP
#define QMOD_MORPHISM_HPP

#include <vector>

#include "qmod/graded.hpp"

namespace qmod {

/// A pullback rule: each target coordinate maps to a parity-matching
/// element of the source chart. Substitution through it is an algebra
/// morphism from functions on the target chart to functions on the source.
class ChartMorphism {
 public:
  ChartMorphism(Chart source, Chart target, std::vector<GradedElem> images);

  static ChartMorphism identity(const Chart& chart);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const GradedElem& image(std::size_t target_coord) const { return images_[target_coord]; }
  const std::vector<GradedElem>& images() const { return images_; }

 private:
  Chart source_;
  Chart target_;
  std::vector<GradedElem> images_;  // indexed by target coordinate
};

/// Monomial-wise substitution of f (on rule.target()) into the source chart.
GradedElem substitute(const GradedElem& f, const ChartMorphism& rule);

}  // namespace qmod

#endif
