#include "qmod/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace qmod {

namespace {

Rational factorial(std::size_t n) {
  Rational r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= Rational(k);
  return r;
}

// Koszul sign of reordering factors with the given parities by the
// permutation perm (perm[i] = original position of the factor now at i).
int perm_koszul_sign(const std::vector<std::size_t>& perm, const std::vector<Parity>& par) {
  unsigned swaps = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && par[perm[i]] == Parity::Odd && par[perm[j]] == Parity::Odd)
        ++swaps;
  return (swaps & 1u) ? -1 : 1;
}

}  // namespace

GradedElem inject(const GradedElem& f, const Chart& into) {
  std::vector<GradedElem> images;
  images.reserve(f.chart().size());
  for (std::size_t i = 0; i < f.chart().size(); ++i) {
    const Coord& c = f.chart().coord(i);
    auto j = into.index_of(c.name);
    if (!j) throw Error("inject: coordinate '" + c.name + "' missing in larger chart");
    if (into.coord(*j).parity != c.parity)
      throw ParityError("inject: parity of '" + c.name + "' differs");
    images.push_back(GradedElem::coordinate(into, *j));
  }
  return substitute(f, ChartMorphism(into, f.chart(), std::move(images)));
}

VectorField inject_field(const VectorField& x, const Chart& into) {
  VectorField out(into);
  for (std::size_t i = 0; i < x.chart().size(); ++i)
    out.set_component(into.require(x.chart().coord(i).name), inject(x.component(i), into));
  return out;
}

Chart antitangent(const Chart& base) {
  std::vector<Coord> coords = base.coords();
  for (const Coord& c : base.coords()) {
    Coord fibre;
    fibre.name = "d" + c.name;
    fibre.parity = c.parity + Parity::Odd;
    if (c.weight) fibre.weight = BiWeight{c.weight->first + 1, c.weight->second};
    coords.push_back(std::move(fibre));
  }
  return Chart::make(std::move(coords), base.truncation());
}

VectorField de_rham(const Chart& base) {
  Chart at = antitangent(base);
  VectorField d(at);
  for (std::size_t a = 0; a < base.size(); ++a)
    d.set_component(a, GradedElem::coordinate(at, base.size() + a));
  return d;
}

VectorField interior(const VectorField& x) {
  const Chart& base = x.chart();
  Chart at = antitangent(base);
  VectorField out(at);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    VectorField xp = x.part(p);
    if (xp.is_zero()) continue;
    for (std::size_t a = 0; a < base.size(); ++a) {
      GradedElem comp = inject(xp.component(a), at);
      if (p == Parity::Odd) comp = -comp;  // (-1)^{X~}
      out.set_component(base.size() + a, out.component(base.size() + a) + comp);
    }
  }
  return out;
}

VectorField lie_derivative_lift(const VectorField& q) {
  return bracket(de_rham(q.chart()), interior(q));
}

VectorField lie_derivative_lift_closed_form(const VectorField& q) {
  const Chart& base = q.chart();
  Chart at = antitangent(base);
  VectorField out(at);
  for (std::size_t a = 0; a < base.size(); ++a) {
    out.set_component(a, inject(q.component(a), at));
    GradedElem fibre = GradedElem::zero(at);
    for (std::size_t b = 0; b < base.size(); ++b)
      fibre += GradedElem::coordinate(at, base.size() + b) *
               inject(q.component(a).left_partial(b), at);
    out.set_component(base.size() + a, -fibre);
  }
  return out;
}

CotangentChart cotangent(const Chart& base) {
  std::vector<Coord> coords = base.coords();
  for (const Coord& c : base.coords()) coords.push_back({"p_" + c.name, c.parity, {}});
  return CotangentChart{Chart::make(std::move(coords), base.truncation()), base.size()};
}

AnticotangentChart anticotangent(const Chart& base) {
  std::vector<Coord> coords = base.coords();
  for (const Coord& c : base.coords())
    coords.push_back({c.name + "_star", c.parity + Parity::Odd, {}});
  return AnticotangentChart{Chart::make(std::move(coords), base.truncation()), base.size()};
}

GradedElem even_symbol(const VectorField& q, const CotangentChart& cc) {
  GradedElem s = GradedElem::zero(cc.chart);
  for (std::size_t a = 0; a < cc.base; ++a)
    s += inject(q.component(a), cc.chart) * GradedElem::coordinate(cc.chart, cc.fibre_index(a));
  return s;
}

GradedElem odd_symbol(const VectorField& q, const AnticotangentChart& ac) {
  GradedElem p = GradedElem::zero(ac.chart);
  for (std::size_t a = 0; a < ac.base; ++a)
    p += inject(q.component(a), ac.chart) * GradedElem::coordinate(ac.chart, ac.fibre_index(a));
  return p;
}

VectorField cotangent_lift(const VectorField& q, const CotangentChart& cc) {
  if (!is_homological(q)) throw Error("cotangent_lift: field is not homological");
  return hamiltonian_vf_even(even_symbol(q, cc), cc);
}

VectorField anticotangent_lift(const VectorField& q, const AnticotangentChart& ac) {
  if (!is_homological(q)) throw Error("anticotangent_lift: field is not homological");
  return hamiltonian_vf_odd(odd_symbol(q, ac), ac);
}

ProductResult product(const Chart& m1, const VectorField& q1, const Chart& m2,
                      const VectorField& q2) {
  if (q1.chart() != m1 || q2.chart() != m2)
    throw ChartMismatch("product: fields must live on the given charts");
  std::vector<Coord> coords = m1.coords();
  std::vector<std::pair<std::string, std::string>> renamed;
  for (Coord c : m2.coords()) {
    std::string name = c.name;
    while (std::any_of(coords.begin(), coords.end(),
                       [&](const Coord& d) { return d.name == name; }))
      name += "_2";
    if (name != c.name) renamed.emplace_back(c.name, name);
    c.name = name;
    coords.push_back(std::move(c));
  }
  Chart chart = Chart::make(std::move(coords), std::max(m1.truncation(), m2.truncation()));

  auto lift = [&](const Chart& small, std::size_t offset) {
    std::vector<GradedElem> images;
    for (std::size_t j = 0; j < small.size(); ++j)
      images.push_back(GradedElem::coordinate(chart, offset + j));
    return ChartMorphism(chart, small, std::move(images));
  };
  ChartMorphism l1 = lift(m1, 0), l2 = lift(m2, m1.size());

  VectorField q(chart);
  for (std::size_t a = 0; a < m1.size(); ++a)
    q.set_component(a, substitute(q1.component(a), l1));
  for (std::size_t a = 0; a < m2.size(); ++a)
    q.set_component(m1.size() + a, substitute(q2.component(a), l2));
  return ProductResult{std::move(chart), std::move(q), std::move(renamed)};
}

AlgebroidData::AlgebroidData(Chart base, std::vector<Coord> fibres)
    : base_(std::move(base)), fibres_(fibres.size()) {
  std::vector<Coord> coords = base_.coords();
  for (auto& f : fibres) coords.push_back(std::move(f));
  total_ = Chart::make(std::move(coords), base_.truncation());
}

void AlgebroidData::add_symmetrised(const std::vector<std::size_t>& tuple,
                                    std::size_t target, const GradedElem& coeff) {
  if (coeff.chart() != base_) throw ChartMismatch("algebroid coefficient must live on the base");
  const std::size_t n = tuple.size();
  if (n == 0) {
    terms_.push_back({{}, target, coeff});
    return;
  }
  std::vector<Parity> par(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (tuple[i] >= fibres_) throw Error("algebroid term: fibre index out of range");
    par[i] = total_.coord(fibre_index(tuple[i])).parity;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<std::size_t>> seen;
  do {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = tuple[perm[i]];
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
    seen.push_back(t);
    int sign = perm_koszul_sign(perm, par);
    terms_.push_back({std::move(t), target, sign > 0 ? coeff : -coeff});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void AlgebroidData::add_x_term(std::vector<std::size_t> tuple, std::size_t base_coord,
                               GradedElem coeff) {
  if (base_coord >= base_.size()) throw Error("algebroid x-term: base coordinate out of range");
  add_symmetrised(tuple, base_coord, coeff);
}

void AlgebroidData::add_f_term(std::vector<std::size_t> tuple, std::size_t beta,
                               GradedElem coeff) {
  if (beta >= fibres_) throw Error("algebroid f-term: fibre index out of range");
  add_symmetrised(tuple, fibre_index(beta), coeff);
}

VectorField AlgebroidData::assemble() const {
  VectorField q(total_);
  for (const Term& t : terms_) {
    GradedElem e = GradedElem::constant(total_, Rational(1) / factorial(t.tuple.size()));
    for (std::size_t i : t.tuple) e = e * GradedElem::coordinate(total_, fibre_index(i));
    e = e * inject(t.coeff, total_);
    q.set_component(t.target, q.component(t.target) + e);
  }
  return q;
}

VectorField lie_algebroid(const AlgebroidData& data) {
  VectorField q = data.assemble();
  if (!is_homological(q))
    throw Error("lie_algebroid: structure data violates the algebroid axioms");
  return q;
}

GradedElem l_infinity_local_rep(const AlgebroidData& data) {
  return local_rep(data.assemble());
}

GradedElem l_infinity_local_rep_formula(const AlgebroidData& data) {
  const Chart& total = data.total();
  GradedElem phi = GradedElem::zero(total);
  for (const auto& t : data.terms()) {
    const std::size_t n = t.tuple.size();
    if (t.target < data.base().size()) {
      // (1/n!) (-1)^eps xi^{t1}..xi^{tn} d coeff/dx^a,
      // eps = a~ * (parity(xi^{t1}) + ... + parity(xi^{tn})).
      unsigned eps = 0;
      if (total.coord(t.target).parity == Parity::Odd)
        for (std::size_t i : t.tuple)
          if (total.coord(data.fibre_index(i)).parity == Parity::Odd) ++eps;
      GradedElem e = GradedElem::constant(total, Rational(1) / factorial(n));
      for (std::size_t i : t.tuple) e = e * GradedElem::coordinate(total, data.fibre_index(i));
      e = e * inject(t.coeff.left_partial(t.target), total);
      phi += (eps & 1u) ? -e : e;
    } else {
      // Contributes only when the contracted slot matches the target fibre:
      // (1/(n-1)!) xi^{t2}..xi^{tn} coeff.
      std::size_t beta = t.target - data.base().size();
      if (n == 0 || t.tuple[0] != beta) continue;
      GradedElem e = GradedElem::constant(total, Rational(1) / factorial(n - 1));
      for (std::size_t k = 1; k < n; ++k)
        e = e * GradedElem::coordinate(total, data.fibre_index(t.tuple[k]));
      e = e * inject(t.coeff, total);
      phi += e;
    }
  }
  return phi;
}

VectorField nijenhuis_field(const Chart& base,
                            const std::vector<std::vector<GradedElem>>& n) {
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base.coord(i).parity != Parity::Even)
      throw Error("nijenhuis_field: base must be purely even");
  const std::size_t dim = base.size();
  if (n.size() != dim) throw Error("nijenhuis_field: tensor has wrong shape");
  for (const auto& row : n)
    if (row.size() != dim) throw Error("nijenhuis_field: tensor has wrong shape");

  Chart at = antitangent(base);
  VectorField q(at);
  for (std::size_t a = 0; a < dim; ++a) {
    GradedElem comp = GradedElem::zero(at);
    for (std::size_t b = 0; b < dim; ++b)
      comp += GradedElem::coordinate(at, dim + b) * inject(n[b][a], at);
    q.set_component(a, comp);
  }
  for (std::size_t c = 0; c < dim; ++c) {
    GradedElem comp = GradedElem::zero(at);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        comp += GradedElem::coordinate(at, dim + a) * GradedElem::coordinate(at, dim + b) *
                inject(n[a][c].left_partial(b) - n[b][c].left_partial(a), at);
    q.set_component(dim + c, (Rational(1) / 2) * comp);
  }
  if (!is_homological(q)) throw Error("nijenhuis_field: tensor is not Nijenhuis");
  return q;
}

VectorField q_algebroid_sum(const VectorField& d_a, const VectorField& xi) {
  if (!is_homological(d_a) || !is_homological(xi))
    throw Error("q_algebroid_sum: both fields must be homological");
  if (!bracket(d_a, xi).is_zero())
    throw Error("q_algebroid_sum: fields do not commute");
  return d_a + xi;
}

ChartMorphism anchor(const VectorField& q) {
  if (!is_homological(q)) throw Error("anchor: field is not homological");
  const Chart& base = q.chart();
  Chart at = antitangent(base);
  std::vector<GradedElem> images;
  for (std::size_t a = 0; a < base.size(); ++a)
    images.push_back(GradedElem::coordinate(base, a));
  for (std::size_t a = 0; a < base.size(); ++a) images.push_back(q.component(a));
  return ChartMorphism(base, at, std::move(images));
}

GradedElem mqk_conjugate(const VectorField& q, const GradedElem& f) {
  if (!is_homological(q)) throw Error("mqk_conjugate: field is not homological");
  VectorField iq = interior(q);
  if (f.chart() != iq.chart())
    throw ChartMismatch("mqk_conjugate: element must live on the antitangent chart");
  // e^{i_Q} terminates on every element: i_Q strictly lowers dx-degree.
  auto exp_apply = [&](const VectorField& v, GradedElem g) {
    GradedElem acc = g;
    unsigned k = 0;
    while (!g.is_zero()) {
      ++k;
      g = (Rational(1) / k) * v.apply(g);
      acc += g;
    }
    return acc;
  };
  VectorField d = de_rham(q.chart());
  return exp_apply(-iq, d.apply(exp_apply(iq, f)));
}

std::optional<BiWeight> monomial_weight(const Chart& chart, const Monomial& m) {
  BiWeight w{0, 0};
  for (std::size_t i = 0; i < chart.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!chart.coord(i).weight) return std::nullopt;
    w.first += chart.coord(i).weight->first * static_cast<int>(m.exps[i]);
    w.second += chart.coord(i).weight->second * static_cast<int>(m.exps[i]);
  }
  return w;
}

bool has_biweight(const VectorField& x, BiWeight w) {
  const Chart& chart = x.chart();
  for (std::size_t a = 0; a < chart.size(); ++a) {
    if (!chart.coord(a).weight) return false;
    BiWeight want{chart.coord(a).weight->first + w.first,
                  chart.coord(a).weight->second + w.second};
    for (const auto& [m, c] : x.component(a).terms()) {
      auto mw = monomial_weight(chart, m);
      if (!mw || *mw != want) return false;
    }
  }
  return true;
}

namespace {

Chart with_biweights(const Chart& chart, const std::vector<BiWeight>& ws) {
  std::vector<Coord> coords = chart.coords();
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i].weight = ws[i];
  return Chart::make(std::move(coords), chart.truncation());
}

// Same coordinate order and truncation, different weight metadata.
GradedElem transfer(const GradedElem& f, const Chart& to) {
  GradedElem out = GradedElem::zero(to);
  for (const auto& [m, c] : f.terms()) out.add_term(m, c);
  return out;
}

}  // namespace

DoubleStructure double_from_algebroid(const AlgebroidData& data) {
  VectorField d_a = lie_algebroid(data);
  // Weighted copy of the (x, xi) chart: x at (0,0), xi at (0,1).
  std::vector<BiWeight> ws;
  for (std::size_t i = 0; i < data.total().size(); ++i)
    ws.push_back(i < data.base().size() ? BiWeight{0, 0} : BiWeight{0, 1});
  Chart pia = with_biweights(data.total(), ws);
  VectorField d_a_w(pia);
  for (std::size_t i = 0; i < pia.size(); ++i)
    d_a_w.set_component(i, transfer(d_a.component(i), pia));

  VectorField q10 = de_rham(pia);
  VectorField q01 = lie_derivative_lift(d_a_w);
  if (q01 != lie_derivative_lift_closed_form(d_a_w))
    throw Error("double_from_algebroid: Lie-derivative closed form mismatch (internal)");
  if (!is_homological(q01) || !is_homological(q10))
    throw Error("double_from_algebroid: field fails to be homological (internal)");
  if (!bracket(q01, q10).is_zero())
    throw Error("double_from_algebroid: fields do not commute (internal)");
  if (!has_biweight(q01, {0, 1}) || !has_biweight(q10, {1, 0}))
    throw Error("double_from_algebroid: bi-weight violation (internal)");
  return DoubleStructure{q01.chart(), std::move(q01), std::move(q10)};
}

GradedElem double_modular_rep(const DoubleStructure& d) {
  return local_rep(d.q01 + d.q10);
}

}  // namespace qmod
