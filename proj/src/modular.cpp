#include "qmod/modular.hpp"

#include <map>

namespace qmod {

namespace {

bool purely_odd(const Chart& chart) {
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (chart.coord(i).parity == Parity::Even) return false;
  return true;
}

void enumerate_monomials(const Chart& chart, unsigned even_budget, std::size_t coord,
                         Monomial& m, std::vector<Monomial>& out) {
  if (coord == chart.size()) {
    out.push_back(m);
    return;
  }
  if (chart.coord(coord).parity == Parity::Odd) {
    m.exps[coord] = 0;
    enumerate_monomials(chart, even_budget, coord + 1, m, out);
    m.exps[coord] = 1;
    enumerate_monomials(chart, even_budget, coord + 1, m, out);
    m.exps[coord] = 0;
  } else {
    for (unsigned e = 0; e <= even_budget; ++e) {
      m.exps[coord] = e;
      enumerate_monomials(chart, even_budget - e, coord + 1, m, out);
    }
    m.exps[coord] = 0;
  }
}

}  // namespace

GradedElem coordinate_divergence(const VectorField& q) {
  return divergence(q, BerezinVolume::coordinate(q.chart()));
}

GradedElem local_rep(const VectorField& q) {
  if (!is_homological(q)) throw Error("local_rep: field is not homological");
  return coordinate_divergence(q);
}

GradedElem modular_rep(const VectorField& q, const BerezinVolume& rho) {
  if (!is_homological(q)) throw Error("modular_rep: field is not homological");
  GradedElem rep = divergence(q, rho);
  if (!is_closed(rep, q)) throw Error("modular_rep: representative not Q-closed (internal)");
  return rep;
}

bool is_closed(const GradedElem& f, const VectorField& q) {
  require_same_chart(f.chart(), q.chart());
  return q.apply(f).is_zero();
}

ExactnessVerdict solve_exactness(const GradedElem& f, const VectorField& q,
                                 unsigned degree_bound) {
  require_same_chart(f.chart(), q.chart());
  auto pf = f.parity();
  if (!pf) throw Error("solve_exactness: element must be homogeneous");
  if (!is_closed(f, q)) throw Error("solve_exactness: element is not Q-closed");
  const Chart& chart = f.chart();
  const bool complete = purely_odd(chart);
  if (f.is_zero()) {
    return ExactnessVerdict::found(GradedElem::zero(chart), degree_bound);
  }

  unsigned budget = std::min(degree_bound, chart.truncation());
  std::vector<Monomial> all;
  Monomial scratch;
  scratch.exps.assign(chart.size(), 0);
  enumerate_monomials(chart, budget, 0, scratch, all);

  Parity want = *pf + Parity::Odd;  // witness parity f~ + 1
  std::vector<Monomial> basis;
  for (auto& m : all)
    if (monomial_parity(chart, m) == want) basis.push_back(std::move(m));

  // Columns: Q applied to each candidate monomial.
  std::vector<GradedElem> images;
  images.reserve(basis.size());
  std::map<Monomial, std::size_t> row_of;
  for (const auto& m : basis) {
    GradedElem g = GradedElem::zero(chart);
    g.add_term(m, 1);
    GradedElem img = q.apply(g);
    for (const auto& [mm, c] : img.terms()) row_of.emplace(mm, row_of.size());
    images.push_back(std::move(img));
  }
  for (const auto& [mm, c] : f.terms()) row_of.emplace(mm, row_of.size());

  const std::size_t rows = row_of.size();
  const std::size_t cols = basis.size();
  std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(cols + 1, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [mm, c] : images[j].terms()) mat[row_of[mm]][j] = c;
  for (const auto& [mm, c] : f.terms()) mat[row_of[mm]][cols] = c;

  // Exact Gaussian elimination.
  std::vector<std::size_t> pivot_col_of_row(rows, SIZE_MAX);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = SIZE_MAX;
    for (std::size_t i = r; i < rows; ++i)
      if (mat[i][c] != 0) { pr = i; break; }
    if (pr == SIZE_MAX) continue;
    std::swap(mat[r], mat[pr]);
    Rational inv = Rational(1) / mat[r][c];
    for (std::size_t j = c; j <= cols; ++j) mat[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || mat[i][c] == 0) continue;
      Rational k = mat[i][c];
      for (std::size_t j = c; j <= cols; ++j) mat[i][j] -= k * mat[r][j];
    }
    pivot_col_of_row[r] = c;
    ++r;
  }
  // Inconsistent iff a zero row has nonzero rhs.
  for (std::size_t i = r; i < rows; ++i)
    if (mat[i][cols] != 0) return ExactnessVerdict::none(degree_bound, complete);

  GradedElem witness = GradedElem::zero(chart);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = pivot_col_of_row[i];
    if (mat[i][cols] != 0) witness.add_term(basis[c], mat[i][cols]);
  }
  // Soundness: verify the witness by direct application.
  if (q.apply(witness) != f)
    throw Error("solve_exactness: solver produced an invalid witness (internal)");
  return ExactnessVerdict::found(std::move(witness), degree_bound);
}

ExactnessVerdict classes_equal(const GradedElem& f1, const GradedElem& f2,
                               const VectorField& q, unsigned degree_bound) {
  return solve_exactness(f1 - f2, q, degree_bound);
}

GradedElem relative_rep(const ChartMorphism& psi, const VectorField& q1,
                        const VectorField& q2, const BerezinVolume& rho1,
                        const BerezinVolume& rho2) {
  if (!is_q_morphism(psi, q1, q2))
    throw Error("relative_rep: psi is not a morphism of Q-manifolds");
  return divergence(q1, rho1) - substitute(divergence(q2, rho2), psi);
}

AdaptedSplit make_adapted_split(const Chart& ambient,
                                const std::vector<std::string>& interior_names) {
  std::vector<std::size_t> interior;
  for (const auto& n : interior_names) interior.push_back(ambient.require(n));
  std::vector<Coord> boundary_coords;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    bool is_interior = false;
    for (auto j : interior)
      if (j == i) is_interior = true;
    if (!is_interior) boundary_coords.push_back(ambient.coord(i));
  }
  Chart boundary = Chart::make(boundary_coords, ambient.truncation());
  std::vector<GradedElem> images;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    bool is_interior = false;
    for (auto j : interior)
      if (j == i) is_interior = true;
    images.push_back(is_interior ? GradedElem::zero(boundary)
                                 : GradedElem::coordinate(boundary, ambient.coord(i).name));
  }
  ChartMorphism restrict(boundary, ambient, std::move(images));
  return AdaptedSplit{std::move(boundary), std::move(interior), std::move(restrict)};
}

VectorField restrict_field(const VectorField& q_m, const AdaptedSplit& split) {
  const Chart& ambient = q_m.chart();
  VectorField q_n(split.boundary);
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    auto bi = split.boundary.index_of(ambient.coord(i).name);
    if (!bi) continue;
    q_n.set_component(*bi, substitute(q_m.component(i), split.restrict));
  }
  return q_n;
}

GradedElem inclusion_rep(const VectorField& q_m, const AdaptedSplit& split) {
  for (auto a : split.interior)
    if (!substitute(q_m.component(a), split.restrict).is_zero())
      throw Error("inclusion_rep: Q is not tangent to the subsupermanifold");
  if (!is_homological(restrict_field(q_m, split)))
    throw Error("inclusion_rep: restricted field is not homological");
  GradedElem out = GradedElem::zero(split.boundary);
  for (auto a : split.interior)
    out -= substitute(q_m.component(a).left_partial(a), split.restrict);
  return out;
}

OddMatrix odd_matrix_of(const VectorField& q_m, const AdaptedSplit& split) {
  OddMatrix a;
  a.chart = split.boundary;
  const std::size_t n = split.interior.size();
  a.entries.assign(n, std::vector<GradedElem>(n, GradedElem::zero(split.boundary)));
  for (std::size_t bi = 0; bi < n; ++bi)
    for (std::size_t ai = 0; ai < n; ++ai)
      a.entries[bi][ai] = substitute(
          q_m.component(split.interior[ai]).left_partial(split.interior[bi]), split.restrict);
  return a;
}

GradedElem supertrace_odd(const OddMatrix& a) {
  if (!a.entries.empty())
    for (const auto& row : a.entries)
      if (row.size() != a.entries.size()) throw Error("supertrace_odd: non-square matrix");
  GradedElem out = GradedElem::zero(a.chart);
  for (std::size_t i = 0; i < a.entries.size(); ++i) out += a.entries[i][i];
  return out;
}

}  // namespace qmod
