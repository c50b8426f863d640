#ifndef QMOD_TESTS_TESTUTIL_HPP
#define QMOD_TESTS_TESTUTIL_HPP

#include <random>

#include "qmod/graded.hpp"
#include "qmod/vector_field.hpp"

namespace qmod::test {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed = 20240817u) : gen(seed) {}
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  Rational coeff() {
    int n = uniform(-4, 4);
    if (n == 0) n = 1;
    int d = uniform(1, 3);
    return Rational(n) / d;
  }
};

/// Random element with a handful of monomials (bounded even degree).
inline GradedElem random_elem(const Chart& chart, Rng& rng, int terms = 4,
                              int max_exp = 2) {
  GradedElem f = GradedElem::zero(chart);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    m.exps.resize(chart.size(), 0);
    for (std::size_t i = 0; i < chart.size(); ++i) {
      if (chart.coord(i).parity == Parity::Even)
        m.exps[i] = static_cast<std::uint32_t>(rng.uniform(0, max_exp));
      else
        m.exps[i] = static_cast<std::uint32_t>(rng.uniform(0, 1));
    }
    f.add_term(m, rng.coeff());
  }
  return f;
}

inline GradedElem random_homogeneous(const Chart& chart, Rng& rng, Parity p,
                                     int terms = 4, int max_exp = 2) {
  for (int tries = 0; tries < 64; ++tries) {
    GradedElem f = random_elem(chart, rng, terms, max_exp).part(p);
    if (!f.is_zero()) return f;
  }
  return GradedElem::zero(chart);
}

/// Random homogeneous vector field of the given parity.
inline VectorField random_vf(const Chart& chart, Rng& rng, Parity p, int terms = 3) {
  VectorField x(chart);
  for (std::size_t a = 0; a < chart.size(); ++a)
    x.set_component(a, random_homogeneous(chart, rng, p + chart.coord(a).parity, terms));
  return x;
}

}  // namespace qmod::test

#endif
