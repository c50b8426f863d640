#ifndef QMOD_TESTS_ORACLE_HPP
#define QMOD_TESTS_ORACLE_HPP

// Independent 2^n-dimensional matrix representation of the exterior algebra
// on a purely odd chart. Only the generator matrices are written by hand;
// products and derivatives come out of plain rational linear algebra, so
// this path shares no sign logic with the kernel.

#include <cstddef>
#include <vector>

#include "qmod/graded.hpp"

namespace qmod::test {

class ExteriorOracle {
 public:
  using Vec = std::vector<Rational>;
  using Mat = std::vector<std::vector<Rational>>;

  explicit ExteriorOracle(const Chart& chart) : chart_(chart), n_(chart.size()) {
    for (std::size_t i = 0; i < n_; ++i)
      if (chart.coord(i).parity != Parity::Odd)
        throw Error("oracle needs a purely odd chart");
    dim_ = std::size_t{1} << n_;
    gen_.resize(n_);
    der_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      gen_[i] = zero_mat();
      der_[i] = zero_mat();
      for (std::size_t s = 0; s < dim_; ++s) {
        // count generators below i present in the subset s
        unsigned below = 0;
        for (std::size_t j = 0; j < i; ++j)
          if (s & (std::size_t{1} << j)) ++below;
        Rational sign = (below & 1u) ? -1 : 1;
        if (!(s & (std::size_t{1} << i))) {
          gen_[i][s | (std::size_t{1} << i)][s] = sign;  // theta_i * e_S
        } else {
          der_[i][s & ~(std::size_t{1} << i)][s] = sign;  // d/dtheta_i e_S
        }
      }
    }
  }

  std::size_t dim() const { return dim_; }

  Vec to_vec(const GradedElem& f) const {
    Vec v(dim_, 0);
    for (const auto& [m, c] : f.terms()) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (m.exps[i]) s |= std::size_t{1} << i;
      v[s] = c;
    }
    return v;
  }

  GradedElem from_vec(const Vec& v) const {
    GradedElem f = GradedElem::zero(chart_);
    for (std::size_t s = 0; s < dim_; ++s) {
      if (v[s] == 0) continue;
      Monomial m;
      m.exps.resize(n_, 0);
      for (std::size_t i = 0; i < n_; ++i)
        if (s & (std::size_t{1} << i)) m.exps[i] = 1;
      f.add_term(m, v[s]);
    }
    return f;
  }

  /// Left-multiplication matrix of f, built from generator matrices only.
  Mat mult_matrix(const GradedElem& f) const {
    Mat out = zero_mat();
    for (const auto& [m, c] : f.terms()) {
      Mat prod = eye();
      for (std::size_t i = 0; i < n_; ++i)
        if (m.exps[i]) prod = mat_mul(prod, gen_[i]);
      add_scaled(out, prod, c);
    }
    return out;
  }

  GradedElem mul(const GradedElem& f, const GradedElem& g) const {
    return from_vec(apply(mult_matrix(f), to_vec(g)));
  }

  GradedElem add(const GradedElem& f, const GradedElem& g) const {
    Vec a = to_vec(f), b = to_vec(g);
    for (std::size_t i = 0; i < dim_; ++i) a[i] += b[i];
    return from_vec(a);
  }

  GradedElem left_partial(const GradedElem& f, std::size_t coord) const {
    return from_vec(apply(der_[coord], to_vec(f)));
  }

 private:
  Mat zero_mat() const { return Mat(dim_, Vec(dim_, 0)); }
  Mat eye() const {
    Mat m = zero_mat();
    for (std::size_t i = 0; i < dim_; ++i) m[i][i] = 1;
    return m;
  }
  Mat mat_mul(const Mat& x, const Mat& y) const {
    Mat out = zero_mat();
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        if (x[i][k] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
          if (y[k][j] != 0) out[i][j] += x[i][k] * y[k][j];
      }
    return out;
  }
  static void add_scaled(Mat& x, const Mat& y, const Rational& c) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[i][j] += c * y[i][j];
  }
  Vec apply(const Mat& m, const Vec& v) const {
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
    return out;
  }

  Chart chart_;
  std::size_t n_;
  std::size_t dim_;
  std::vector<Mat> gen_;
  std::vector<Mat> der_;
};

}  // namespace qmod::test

#endif
