#include "qmod/berezin.hpp"

#include <sstream>

namespace qmod {

namespace {

using Block = SuperMatrix::Block;

void check_block(const Chart& chart, const Block& blk, std::size_t rows,
                 std::size_t cols, Parity want, const char* name) {
  if (blk.size() != rows) throw Error(std::string("supermatrix block ") + name + ": bad row count");
  for (const auto& row : blk) {
    if (row.size() != cols)
      throw Error(std::string("supermatrix block ") + name + ": bad column count");
    for (const auto& e : row) {
      if (e.chart() != chart)
        throw ChartMismatch(std::string("supermatrix block ") + name + ": entry off-chart");
      if (!e.is_zero() && e.parity() != want)
        throw ParityError(std::string("supermatrix block ") + name + ": entry parity wrong");
    }
  }
}

// Determinant of a square matrix of even (commuting) elements, by cofactor
// expansion along the first column. Sizes here are tiny.
GradedElem det_even(const Chart& chart, const Block& m) {
  const std::size_t n = m.size();
  if (n == 0) return GradedElem::constant(chart, 1);
  if (n == 1) return m[0][0];
  GradedElem out = GradedElem::zero(chart);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    Block minor;
    minor.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<GradedElem> row(m[r].begin() + 1, m[r].end());
      minor.push_back(std::move(row));
    }
    GradedElem cof = m[i][0] * det_even(chart, minor);
    out += (i & 1u) ? -cof : cof;
  }
  return out;
}

// Inverse of a matrix of even elements via adjugate; requires det with
// nonzero rational constant term.
Block inverse_even(const Chart& chart, const Block& m, const GradedElem& det) {
  const std::size_t n = m.size();
  GradedElem det_inv = det.inverse();
  Block inv(n, std::vector<GradedElem>(n, GradedElem::zero(chart)));
  if (n == 1) {
    inv[0][0] = det_inv;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Block minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<GradedElem> row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      GradedElem cof = det_even(chart, minor) * det_inv;
      inv[i][j] = ((i + j) & 1u) ? -cof : cof;
    }
  }
  return inv;
}

Block mat_mul(const Chart& chart, const Block& x, const Block& y, std::size_t rows,
              std::size_t mid, std::size_t cols) {
  Block out(rows, std::vector<GradedElem>(cols, GradedElem::zero(chart)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < mid; ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

Block mat_add(const Chart& chart, const Block& x, const Block& y, Rational sy) {
  Block out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) out[i][j] += sy * y[i][j];
  (void)chart;
  return out;
}

}  // namespace

BerezinVolume::BerezinVolume(Chart chart, Rational scale, GradedElem logdensity)
    : chart_(std::move(chart)), scale_(std::move(scale)), logdensity_(std::move(logdensity)) {
  if (scale_ <= 0) throw Error("Berezin volume scale must be positive");
  if (logdensity_.chart() != chart_)
    throw ChartMismatch("log-density lives on a different chart");
  if (logdensity_.parity() != Parity::Even)
    throw ParityError("log-density must be even");
  if (logdensity_.constant_term() != 0)
    throw Error("log-density must have zero constant term (fold constants into the scale)");
}

BerezinVolume BerezinVolume::coordinate(const Chart& chart) {
  return BerezinVolume(chart, 1, GradedElem::zero(chart));
}

std::string BerezinVolume::to_string() const {
  std::ostringstream os;
  os << qmod::to_string(scale_) << " * exp(" << logdensity_.to_string() << ") D[";
  for (std::size_t i = 0; i < chart_.size(); ++i) {
    if (i) os << ",";
    os << chart_.coord(i).name;
  }
  os << "]";
  return os.str();
}

SuperMatrix::SuperMatrix(Chart chart, Block a, Block b, Block c, Block d)
    : chart_(std::move(chart)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  ne_ = a_.size();
  no_ = d_.size();
  check_block(chart_, a_, ne_, ne_, Parity::Even, "A");
  check_block(chart_, b_, ne_, no_, Parity::Odd, "B");
  check_block(chart_, c_, no_, ne_, Parity::Odd, "C");
  check_block(chart_, d_, no_, no_, Parity::Even, "D");
}

SuperMatrix SuperMatrix::identity(const Chart& chart, std::size_t n_even, std::size_t n_odd) {
  auto eye = [&](std::size_t n) {
    Block m(n, std::vector<GradedElem>(n, GradedElem::zero(chart)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = GradedElem::constant(chart, 1);
    return m;
  };
  Block b(n_even, std::vector<GradedElem>(n_odd, GradedElem::zero(chart)));
  Block c(n_odd, std::vector<GradedElem>(n_even, GradedElem::zero(chart)));
  return SuperMatrix(chart, eye(n_even), std::move(b), std::move(c), eye(n_odd));
}

SuperMatrix operator*(const SuperMatrix& m, const SuperMatrix& n) {
  require_same_chart(m.chart_, n.chart_);
  if (m.ne_ != n.ne_ || m.no_ != n.no_) throw Error("supermatrix size mismatch");
  const Chart& ch = m.chart_;
  Block a = mat_add(ch, mat_mul(ch, m.a_, n.a_, m.ne_, m.ne_, m.ne_),
                    mat_mul(ch, m.b_, n.c_, m.ne_, m.no_, m.ne_), 1);
  Block b = mat_add(ch, mat_mul(ch, m.a_, n.b_, m.ne_, m.ne_, m.no_),
                    mat_mul(ch, m.b_, n.d_, m.ne_, m.no_, m.no_), 1);
  Block c = mat_add(ch, mat_mul(ch, m.c_, n.a_, m.no_, m.ne_, m.ne_),
                    mat_mul(ch, m.d_, n.c_, m.no_, m.no_, m.ne_), 1);
  Block d = mat_add(ch, mat_mul(ch, m.c_, n.b_, m.no_, m.ne_, m.no_),
                    mat_mul(ch, m.d_, n.d_, m.no_, m.no_, m.no_), 1);
  return SuperMatrix(ch, std::move(a), std::move(b), std::move(c), std::move(d));
}

GradedElem berezinian(const SuperMatrix& m) {
  const Chart& ch = m.chart();
  GradedElem det_d = m.n_odd() ? det_even(ch, m.d()) : GradedElem::constant(ch, 1);
  if (det_d.constant_term() == 0) throw Error("berezinian: singular odd-odd block");
  GradedElem schur_det;
  if (m.n_even() == 0) {
    schur_det = GradedElem::constant(ch, 1);
  } else if (m.n_odd() == 0) {
    schur_det = det_even(ch, m.a());
  } else {
    Block d_inv = inverse_even(ch, m.d(), det_d);
    Block bdc = mat_mul(ch, mat_mul(ch, m.b(), d_inv, m.n_even(), m.n_odd(), m.n_odd()),
                        m.c(), m.n_even(), m.n_odd(), m.n_even());
    Block schur = mat_add(ch, m.a(), bdc, -1);
    schur_det = det_even(ch, schur);
  }
  return schur_det * det_d.inverse();
}

GradedElem divergence(const VectorField& x, const BerezinVolume& rho) {
  require_same_chart(x.chart(), rho.chart());
  const Chart& chart = x.chart();
  GradedElem out = GradedElem::zero(chart);
  for (Parity px : {Parity::Even, Parity::Odd}) {
    VectorField xp = x.part(px);
    if (xp.is_zero()) continue;
    for (std::size_t a = 0; a < chart.size(); ++a) {
      GradedElem d = xp.component(a).left_partial(a);
      // sign (-1)^{a~(X~+1)}
      bool minus = chart.coord(a).parity == Parity::Odd && px == Parity::Even;
      out += minus ? -d : d;
    }
    out += xp.apply(rho.logdensity());
  }
  return out;
}

GradedElem lie_derivative_volume(const VectorField& x, const BerezinVolume& rho) {
  return divergence(x, rho);
}

SuperMatrix jacobian(const ChartMorphism& psi) {
  const Chart& src = psi.source();
  const Chart& tgt = psi.target();
  std::vector<std::size_t> src_even, src_odd, tgt_even, tgt_odd;
  for (std::size_t i = 0; i < src.size(); ++i)
    (src.coord(i).parity == Parity::Even ? src_even : src_odd).push_back(i);
  for (std::size_t i = 0; i < tgt.size(); ++i)
    (tgt.coord(i).parity == Parity::Even ? tgt_even : tgt_odd).push_back(i);
  if (src_even.size() != tgt_even.size() || src_odd.size() != tgt_odd.size())
    throw Error("jacobian: charts have different dimensions");

  auto entry = [&](std::size_t t, std::size_t s) { return psi.image(t).left_partial(s); };
  auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Block m(rows.size(), std::vector<GradedElem>(cols.size(), GradedElem::zero(src)));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = entry(rows[i], cols[j]);
    return m;
  };
  return SuperMatrix(src, block(tgt_even, src_even), block(tgt_even, src_odd),
                     block(tgt_odd, src_even), block(tgt_odd, src_odd));
}

BerezinVolume pullback_volume(const ChartMorphism& psi, const BerezinVolume& rho) {
  if (rho.chart() != psi.target())
    throw ChartMismatch("pullback_volume: volume must live on the morphism's target chart");
  GradedElem ber = berezinian(jacobian(psi));
  Rational c = ber.constant_term();
  if (c == 0) throw Error("pullback_volume: non-invertible Jacobian");
  if (c < 0) throw Error("pullback_volume: orientation violation (negative Jacobian)");
  GradedElem g = substitute(rho.logdensity(), psi) + ((Rational(1) / c) * ber).log1();
  return BerezinVolume(psi.source(), rho.scale() * c, std::move(g));
}

}  // namespace qmod
