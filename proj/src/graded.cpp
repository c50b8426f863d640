#include "qmod/graded.hpp"

#include <algorithm>
#include <sstream>

namespace qmod {

namespace {

// Koszul sign from multiplying monomial a by monomial b (in that order) and
// reordering the odd factors into canonical ascending position. Returns 0 on
// odd-variable collision (nilpotency), otherwise +1/-1.
int koszul_sign(const Chart& chart, const Monomial& a, const Monomial& b) {
  unsigned inversions = 0;
  for (std::size_t k = 0; k < chart.size(); ++k) {
    if (chart.coord(k).parity != Parity::Odd || b.exps[k] == 0) continue;
    if (a.exps[k] != 0) return 0;
    // b's factor at k must pass every odd factor of a sitting to its right.
    for (std::size_t j = k + 1; j < chart.size(); ++j)
      if (chart.coord(j).parity == Parity::Odd && a.exps[j] != 0) ++inversions;
  }
  return (inversions & 1u) ? -1 : 1;
}

}  // namespace

unsigned even_degree(const Chart& chart, const Monomial& m) {
  unsigned d = 0;
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (chart.coord(i).parity == Parity::Even) d += m.exps[i];
  return d;
}

unsigned total_degree(const Chart& chart, const Monomial& m) {
  unsigned d = 0;
  for (std::size_t i = 0; i < chart.size(); ++i) d += m.exps[i];
  return d;
}

Parity monomial_parity(const Chart& chart, const Monomial& m) {
  unsigned n = 0;
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (chart.coord(i).parity == Parity::Odd) n += m.exps[i];
  return parity_of_int(n);
}

void GradedElem::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (even_degree(chart_, m) > chart_.truncation()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedElem GradedElem::constant(const Chart& chart, const Rational& c) {
  GradedElem f(chart);
  Monomial one{std::vector<std::uint32_t>(chart.size(), 0)};
  f.add_term(one, c);
  return f;
}

GradedElem GradedElem::coordinate(const Chart& chart, std::size_t index) {
  if (index >= chart.size()) throw Error("coordinate index out of range");
  GradedElem f(chart);
  Monomial m{std::vector<std::uint32_t>(chart.size(), 0)};
  m.exps[index] = 1;
  f.add_term(m, 1);
  return f;
}

GradedElem GradedElem::coordinate(const Chart& chart, const std::string& name) {
  return coordinate(chart, chart.require(name));
}

Rational GradedElem::constant_term() const {
  Monomial one{std::vector<std::uint32_t>(chart_.size(), 0)};
  auto it = terms_.find(one);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Parity> GradedElem::parity() const {
  if (terms_.empty()) return Parity::Even;
  Parity p = monomial_parity(chart_, terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (monomial_parity(chart_, m) != p) return std::nullopt;
  return p;
}

GradedElem GradedElem::part(Parity p) const {
  GradedElem out(chart_);
  for (const auto& [m, c] : terms_)
    if (monomial_parity(chart_, m) == p) out.terms_.emplace(m, c);
  return out;
}

GradedElem GradedElem::operator-() const {
  GradedElem out(chart_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

GradedElem operator+(const GradedElem& f, const GradedElem& g) {
  require_same_chart(f.chart_, g.chart_);
  GradedElem out = f;
  for (const auto& [m, c] : g.terms_) out.add_term(m, c);
  return out;
}

GradedElem operator-(const GradedElem& f, const GradedElem& g) {
  return f + (-g);
}

GradedElem operator*(const GradedElem& f, const GradedElem& g) {
  require_same_chart(f.chart_, g.chart_);
  GradedElem out(f.chart_);
  const Chart& chart = f.chart_;
  const unsigned cap = chart.truncation();
  for (const auto& [ma, ca] : f.terms_) {
    const unsigned da = even_degree(chart, ma);
    for (const auto& [mb, cb] : g.terms_) {
      if (da + even_degree(chart, mb) > cap) continue;
      int sign = koszul_sign(chart, ma, mb);
      if (sign == 0) continue;
      Monomial m;
      m.exps.resize(chart.size());
      for (std::size_t i = 0; i < chart.size(); ++i)
        m.exps[i] = ma.exps[i] + mb.exps[i];
      Rational prod = ca * cb;
      out.add_term(m, sign > 0 ? prod : Rational(-prod));
    }
  }
  return out;
}

GradedElem operator*(const Rational& c, const GradedElem& f) {
  GradedElem out(f.chart_);
  if (c == 0) return out;
  for (const auto& [m, k] : f.terms_) out.terms_.emplace(m, c * k);
  return out;
}

GradedElem GradedElem::left_partial(std::size_t coord) const {
  if (coord >= chart_.size()) throw Error("unknown coordinate index");
  GradedElem out(chart_);
  const bool odd = chart_.coord(coord).parity == Parity::Odd;
  for (const auto& [m, c] : terms_) {
    if (m.exps[coord] == 0) continue;
    Monomial dm = m;
    if (odd) {
      // Anticommute the derivative past the odd factors to the left of coord.
      unsigned passed = 0;
      for (std::size_t j = 0; j < coord; ++j)
        if (chart_.coord(j).parity == Parity::Odd && m.exps[j] != 0) ++passed;
      dm.exps[coord] = 0;
      out.add_term(dm, (passed & 1u) ? -c : c);
    } else {
      dm.exps[coord] -= 1;
      out.add_term(dm, Rational(m.exps[coord]) * c);
    }
  }
  return out;
}

GradedElem GradedElem::pow(unsigned n) const {
  GradedElem out = constant(chart_, 1);
  GradedElem base = *this;
  while (n > 0) {
    if (n & 1u) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

GradedElem GradedElem::inverse() const {
  Rational c0 = constant_term();
  if (c0 == 0) throw Error("inverse: zero constant term");
  if (parity() != Parity::Even) throw Error("inverse: element must be even");
  // f = c0 (1 + u) with u augmentation-nilpotent at the truncation order.
  GradedElem u = (Rational(1) / c0) * *this - constant(chart_, 1);
  GradedElem acc = constant(chart_, 1);
  GradedElem power = constant(chart_, 1);
  while (true) {
    power = power * (-u);
    if (power.is_zero()) break;
    acc += power;
  }
  return (Rational(1) / c0) * acc;
}

GradedElem GradedElem::log1() const {
  if (constant_term() != 1) throw Error("log1: constant term must be 1");
  if (parity() != Parity::Even) throw Error("log1: element must be even");
  GradedElem u = *this - constant(chart_, 1);
  GradedElem acc = zero(chart_);
  GradedElem power = constant(chart_, 1);
  unsigned k = 0;
  while (true) {
    power = power * u;
    ++k;
    if (power.is_zero()) break;
    Rational coeff = Rational(1) / Rational(k);
    if ((k & 1u) == 0) coeff = -coeff;
    acc += coeff * power;
  }
  return acc;
}

std::string GradedElem::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
    unsigned da = total_degree(chart_, a->first), db = total_degree(chart_, b->first);
    if (da != db) return da < db;
    // Within a degree, higher power on an earlier coordinate comes first.
    return a->first.exps > b->first.exps;
  });

  std::ostringstream os;
  bool first = true;
  for (auto* t : sorted) {
    const Monomial& m = t->first;
    Rational c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < chart_.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (m.exps[i] == 1)
        factors.push_back(chart_.coord(i).name);
      else
        factors.push_back(chart_.coord(i).name + "^" + std::to_string(m.exps[i]));
    }
    if (factors.empty()) {
      os << qmod::to_string(c);
    } else {
      if (c != 1) os << qmod::to_string(c) << "*";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
      }
    }
  }
  return os.str();
}

}  // namespace qmod
