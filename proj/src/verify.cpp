#include "qmod/verify.hpp"

#include <functional>
#include <sstream>

#include "json.hpp"

#include "qmod/constructions.hpp"

namespace qmod::verify {

namespace {

Chart mk(std::initializer_list<std::pair<const char*, Parity>> coords, unsigned trunc = 6) {
  std::vector<Coord> cs;
  for (const auto& [n, p] : coords) cs.push_back({n, p, {}});
  return Chart::make(std::move(cs), trunc);
}

GradedElem c(const Chart& ch, const char* name) {
  return GradedElem::coordinate(ch, std::string(name));
}

GradedElem k(const Chart& ch, const Rational& r) { return GradedElem::constant(ch, r); }

struct Runner {
  Suite suite;

  void check(const std::string& name, const std::string& detail,
             const std::function<bool()>& body) {
    Check ch;
    ch.name = name;
    ch.detail = detail;
    try {
      ch.passed = body();
      if (!ch.passed) ch.detail += " [mismatch]";
    } catch (const std::exception& e) {
      ch.passed = false;
      ch.detail += std::string(" [exception: ") + e.what() + "]";
    }
    suite.checks.push_back(std::move(ch));
  }
};

// The nonabelian 2-dimensional Lie algebra [e1,e2] = e2 as a Q-structure
// on a 0|2 chart.
std::pair<Chart, VectorField> nonabelian() {
  Chart ch = mk({{"xi1", Parity::Odd}, {"xi2", Parity::Odd}});
  VectorField q(ch);
  q.set_component("xi2", c(ch, "xi1") * c(ch, "xi2"));
  return {ch, q};
}

void divergence_laws(Runner& r) {
  Chart ch = mk({{"x", Parity::Even}, {"th", Parity::Odd}});
  GradedElem x = c(ch, "x"), th = c(ch, "th");
  BerezinVolume rho(ch, 2, x * x + x * x * x);
  GradedElem g2 = (Rational(1) / 3) * x.pow(3);
  BerezinVolume rho2(ch, 2, x * x + x * x * x + g2);

  GradedElem f_even = k(ch, 1) + x * x;
  GradedElem f_odd = th * (x + k(ch, 1));
  VectorField x_even(ch), x_odd(ch), y_even(ch), y_odd(ch);
  x_even.set_component("x", x * x);
  x_even.set_component("th", th * (k(ch, 1) + x));
  x_odd.set_component("x", th * x);
  x_odd.set_component("th", k(ch, 1) + x * x);
  y_even.set_component("x", x + x * x * x);
  y_even.set_component("th", th * x * x);
  y_odd.set_component("x", th * (k(ch, 2) + x));
  y_odd.set_component("th", x);

  r.check("divergence-product-rule",
          "Div(fX) = f Div X + (-1)^{f~X~} X(f), four parity combinations", [&] {
            for (const auto& [f, fo] :
                 {std::pair{f_even, false}, std::pair{f_odd, true}}) {
              for (const auto& [xf, xo] :
                   {std::pair{x_even, false}, std::pair{x_odd, true}}) {
                GradedElem lhs = divergence(f * xf, rho);
                GradedElem corr = xf.apply(f);
                GradedElem rhs =
                    f * divergence(xf, rho) + ((fo && xo) ? -corr : corr);
                if (lhs != rhs) return false;
              }
            }
            return true;
          });

  r.check("divergence-volume-change", "Div_{exp(g) rho} X = Div_rho X + X(g)", [&] {
    for (const VectorField& xf : {x_even, x_odd, y_even, y_odd})
      if (divergence(xf, rho2) != divergence(xf, rho) + xf.apply(g2)) return false;
    return true;
  });

  r.check("divergence-bracket-rule",
          "Div[X,Y] = X(Div Y) - (-1)^{X~Y~} Y(Div X)", [&] {
            for (const auto& [xf, xo] :
                 {std::pair{x_even, false}, std::pair{x_odd, true}}) {
              for (const auto& [yf, yo] :
                   {std::pair{y_even, false}, std::pair{y_odd, true}}) {
                GradedElem lhs = divergence(bracket(xf, yf), rho);
                GradedElem corr = yf.apply(divergence(xf, rho));
                GradedElem rhs = xf.apply(divergence(yf, rho)) -
                                 ((xo && yo) ? -corr : corr);
                if (lhs != rhs) return false;
              }
            }
            return true;
          });
}

void de_rham_checks(Runner& r) {
  Chart base = mk({{"x", Parity::Even}});
  Chart at = antitangent(base);
  VectorField d = de_rham(base);
  r.check("de-rham-unimodular", "phi_d = 0 and d(x^2) = 2x dx", [&] {
    GradedElem x = c(at, "x"), dx = c(at, "dx");
    return local_rep(d) == GradedElem::zero(at) && d.apply(x * x) == k(at, 2) * x * dx;
  });
}

void nijenhuis_checks(Runner& r) {
  r.check("nijenhuis-trace-1d", "N = f(x) Id on R^1: phi = f'(x) dx", [&] {
    Chart base = mk({{"x", Parity::Even}});
    GradedElem x = c(base, "x");
    GradedElem f = k(base, 1) + x + x * x;
    VectorField q = nijenhuis_field(base, {{f}});
    Chart at = q.chart();
    GradedElem expected = (k(at, 1) + k(at, 2) * c(at, "x")) * c(at, "dx");
    return coordinate_divergence(q) == expected;
  });
  r.check("nijenhuis-trace-2d", "N = x1 Id on R^2: phi = d tr(N) = 2 dx1", [&] {
    Chart base = mk({{"x1", Parity::Even}, {"x2", Parity::Even}});
    GradedElem x1 = c(base, "x1"), zero = GradedElem::zero(base);
    VectorField q = nijenhuis_field(base, {{x1, zero}, {zero, x1}});
    return local_rep(q) == k(q.chart(), 2) * c(q.chart(), "dx1");
  });
}

void lift_checks(Runner& r) {
  auto [base, q] = nonabelian();
  r.check("lie-derivative-lift",
          "[d, i_Q] matches the closed form; phi_{L_Q} = 0; [d, L_Q] = 0", [&] {
            VectorField lq = lie_derivative_lift(q);
            return lq == lie_derivative_lift_closed_form(q) &&
                   local_rep(lq) == GradedElem::zero(lq.chart()) &&
                   bracket(de_rham(base), lq).is_zero();
          });
  r.check("cotangent-lift-unimodular", "phi of the even Hamiltonian lift vanishes", [&] {
    CotangentChart cc = cotangent(base);
    return local_rep(cotangent_lift(q, cc)) == GradedElem::zero(cc.chart);
  });
  r.check("anticotangent-factor-two", "phi of [[P, .]] = 2 phi_Q pulled back", [&] {
    AnticotangentChart ac = anticotangent(base);
    return local_rep(anticotangent_lift(q, ac)) ==
           k(ac.chart, 2) * inject(local_rep(q), ac.chart);
  });
}

void bv_checks(Runner& r) {
  r.check("bv-half-divergence",
          "Div of the odd Hamiltonian field of even P equals 2 Delta P", [&] {
            Chart base = mk({{"x", Parity::Even}, {"th", Parity::Odd}});
            AnticotangentChart ac = anticotangent(base);
            const Chart& t = ac.chart;
            GradedElem p = c(t, "x") * c(t, "x") * c(t, "x_star") * c(t, "th") +
                           c(t, "x") * c(t, "th_star") +
                           c(t, "x_star") * c(t, "th_star") * c(t, "th");
            return coordinate_divergence(hamiltonian_vf_odd(p, ac)) ==
                   k(t, 2) * bv_laplacian(p, ac);
          });

  r.check("poisson-quadratic-rep",
          "P = x2 x*_2 x*_1: Delta P = (d P^{ab}/dx^a) x*_b = -x*_1", [&] {
            Chart base = mk({{"x1", Parity::Even}, {"x2", Parity::Even}});
            AnticotangentChart ac = anticotangent(base);
            const Chart& t = ac.chart;
            GradedElem p = c(t, "x2") * c(t, "x2_star") * c(t, "x1_star");
            if (!schouten(p, p, ac).is_zero()) return false;
            return bv_laplacian(p, ac) == -c(t, "x1_star");
          });

  r.check("order-three-rep",
          "three-term higher Poisson representative; order-zero piece drops", [&] {
            Chart base =
                mk({{"x1", Parity::Even}, {"x2", Parity::Even}, {"x3", Parity::Even}});
            AnticotangentChart ac = anticotangent(base);
            const Chart& t = ac.chart;
            auto xs = [&](int a) {
              return c(t, ("x" + std::to_string(a) + "_star").c_str());
            };
            auto x = [&](int a) { return c(t, ("x" + std::to_string(a)).c_str()); };
            // Components: P^a; antisymmetric P^{ab}; totally antisymmetric P^{abc}.
            GradedElem pa[4] = {GradedElem(), x(2) * x(3), x(1), x(1) * x(2)};
            GradedElem pab[4][4];
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b) pab[a][b] = GradedElem::zero(t);
            pab[1][2] = x(3);
            pab[1][3] = x(2) * x(2);
            pab[2][3] = x(1);
            for (int a = 1; a <= 3; ++a)
              for (int b = a + 1; b <= 3; ++b) pab[b][a] = -pab[a][b];
            GradedElem p123 = x(1) * x(2) * x(3);
            int eps[3][3][3] = {};
            eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
            eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;

            GradedElem p = x(1) * x(1);  // order-zero piece
            for (int a = 1; a <= 3; ++a) p += pa[a] * xs(a);
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b)
                p += (Rational(1) / 2) * pab[a][b] * xs(b) * xs(a);
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b)
                for (int cc = 1; cc <= 3; ++cc)
                  p += (Rational(1) / 6) * Rational(eps[a - 1][b - 1][cc - 1]) * p123 *
                       xs(cc) * xs(b) * xs(a);

            GradedElem expected = GradedElem::zero(t);
            for (int a = 1; a <= 3; ++a)
              expected += pa[a].left_partial(t.require("x" + std::to_string(a)));
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b)
                expected +=
                    pab[a][b].left_partial(t.require("x" + std::to_string(a))) * xs(b);
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b)
                for (int cc = 1; cc <= 3; ++cc)
                  expected += (Rational(1) / 2) * Rational(eps[a - 1][b - 1][cc - 1]) *
                              p123.left_partial(t.require("x" + std::to_string(a))) *
                              xs(cc) * xs(b);

            // Inhomogeneous P: the representative is half the divergence of
            // the derivation [[P, .]], built componentwise.
            auto half_div = [&](const GradedElem& pp) {
              VectorField v(t);
              for (std::size_t i = 0; i < t.size(); ++i)
                v.set_component(i, schouten(pp, GradedElem::coordinate(t, i), ac));
              return (Rational(1) / 2) * coordinate_divergence(v);
            };
            return half_div(p) == expected && half_div(x(1) * x(1)).is_zero();
          });
}

void lie_algebra_checks(Runner& r) {
  r.check("nonabelian-class",
          "[e1,e2] = e2: phi = -xi1, not exact, verdict complete", [&] {
            auto [ch, q] = nonabelian();
            GradedElem phi = local_rep(q);
            if (phi != -c(ch, "xi1")) return false;
            ExactnessVerdict v = solve_exactness(phi, q, 6);
            return !v.exact && v.complete;
          });
  r.check("heisenberg-unimodular", "[e1,e2] = e3: phi = 0, witness 0", [&] {
    Chart ch = mk({{"xi1", Parity::Odd}, {"xi2", Parity::Odd}, {"xi3", Parity::Odd}});
    VectorField q(ch);
    q.set_component("xi3", c(ch, "xi1") * c(ch, "xi2"));
    GradedElem phi = local_rep(q);
    ExactnessVerdict v = solve_exactness(phi, q, 6);
    return phi.is_zero() && v.exact && v.witness->is_zero();
  });
  r.check("abelian-unimodular", "zero bracket: phi = 0", [&] {
    Chart ch = mk({{"xi1", Parity::Odd}, {"xi2", Parity::Odd}});
    return local_rep(VectorField::zero(ch)).is_zero();
  });
}

void algebroid_checks(Runner& r) {
  r.check("l-infinity-route-equality",
          "characteristic-form formula vs divergence of the assembled field", [&] {
            Chart base = mk({{"x", Parity::Even}});
            GradedElem x = c(base, "x");
            AlgebroidData data(base, {{"xi", Parity::Odd, {}}, {"eta", Parity::Even, {}}});
            data.add_x_term({0}, 0, k(base, 1) + x * x);
            data.add_x_term({0, 1, 1}, 0, x * x * x);
            data.add_f_term({0, 1}, 1, k(base, 1) + x);
            data.add_f_term({0, 1, 1}, 1, x * x);
            return l_infinity_local_rep_formula(data) ==
                   coordinate_divergence(data.assemble());
          });

  r.check("lie-algebroid-rep",
          "linear data reproduces xi^a ((-1)^{a~(al~+1)} dQ/dx + Q_{al be}^{be})", [&] {
            // Tangent algebroid of R^1 twisted by an anchor function.
            Chart base = mk({{"x", Parity::Even}});
            GradedElem x = c(base, "x");
            AlgebroidData data(base, {{"xi", Parity::Odd, {}}});
            data.add_x_term({0}, 0, x * x);  // anchor Q_xi^x = x^2
            VectorField q = lie_algebroid(data);
            const Chart& t = q.chart();
            // a even, alpha even section: sign +1; no structure part.
            return local_rep(q) == c(t, "xi") * k(t, 2) * c(t, "x");
          });

  r.check("q-algebroid-sum-rep",
          "drift + linear representative of d_A + Xi on a 1|1 base", [&] {
            Chart base = mk({{"x", Parity::Even}, {"y", Parity::Odd}});
            GradedElem x = c(base, "x"), y = c(base, "y");
            AlgebroidData data(base, {{"xi", Parity::Odd, {}}});
            data.add_x_term({0}, 0, x);  // Q_xi^x = x (even coeff)
            data.add_x_term({0}, 1, y);  // Q_xi^y = y (odd coeff)
            VectorField da = data.assemble();
            const Chart& t = da.chart();
            GradedElem xt = c(t, "x"), yt = c(t, "y"), xit = c(t, "xi");
            VectorField xi_field(t);
            xi_field.set_component("x", yt * (k(t, 1) + xt));  // Q^x odd
            xi_field.set_component("y", xt * xt);              // Q^y even
            xi_field.set_component("xi", xit * yt * xt);       // Q_xi^xi = yx
            VectorField total = da + xi_field;
            // Displayed: (d_a Q^a + Q_al^al) + xi^al ((-1)^{a~(al~+1)} d_a Q_al^a
            //            + Q^be_{al be}); fibre parity al~ = even here.
            GradedElem expected =
                (yt * (k(t, 1) + xt)).left_partial(t.require("x")) +
                (xt * xt).left_partial(t.require("y")) + yt * xt +
                xit * ((xt).left_partial(t.require("x")) -
                       (yt).left_partial(t.require("y")));
            return coordinate_divergence(total) == expected;
          });
}

void structure_checks(Runner& r) {
  r.check("product-additivity", "phi of a Q-manifold product is the sum of the parts", [&] {
    auto [m1, q1] = nonabelian();
    Chart m2base = mk({{"x", Parity::Even}});
    Chart m2 = antitangent(m2base);
    VectorField q2 = de_rham(m2base);
    ProductResult pr = product(m1, q1, m2, q2);
    if (!pr.renamed.empty()) return false;
    return local_rep(pr.q) ==
           inject(local_rep(q1), pr.chart) + inject(local_rep(q2), pr.chart);
  });

  r.check("anchor-relative-class", "Mod(a_Q) representative reproduces phi_Q", [&] {
    auto [ch, q] = nonabelian();
    ChartMorphism a = anchor(q);
    VectorField d = de_rham(ch);
    GradedElem rel = relative_rep(a, q, d, BerezinVolume::coordinate(ch),
                                  BerezinVolume::coordinate(d.chart()));
    return rel == local_rep(q);
  });

  r.check("mqk-identity", "e^{-i_Q} d e^{i_Q} = d + L_Q on monomials of degree <= 4", [&] {
    Chart base = mk({{"x", Parity::Even}, {"th", Parity::Odd}});
    VectorField q(base);
    q.set_component("x", c(base, "th"));
    if (!is_homological(q)) return false;
    Chart at = antitangent(base);
    VectorField rhs_field = de_rham(base) + lie_derivative_lift(q);
    // All monomials of total degree <= 4.
    std::vector<Monomial> ms;
    Monomial m;
    m.exps.assign(at.size(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned budget) {
      if (i == at.size()) {
        ms.push_back(m);
        return;
      }
      unsigned cap = at.coord(i).parity == Parity::Odd ? 1u : budget;
      for (unsigned e = 0; e <= cap && e <= budget; ++e) {
        m.exps[i] = e;
        rec(i + 1, budget - e);
      }
      m.exps[i] = 0;
    };
    rec(0, 4);
    for (const auto& mon : ms) {
      GradedElem f = GradedElem::zero(at);
      f.add_term(mon, 1);
      if (mqk_conjugate(q, f) != rhs_field.apply(f)) return false;
    }
    return true;
  });

  r.check("double-algebroid-theorem",
          "double of the tangent algebroid of R^1 is unimodular", [&] {
            Chart base = mk({{"x", Parity::Even}});
            AlgebroidData data(base, {{"xi", Parity::Odd, {}}});
            data.add_x_term({0}, 0, k(base, 1));
            DoubleStructure d = double_from_algebroid(data);
            return bracket(d.q01, d.q10).is_zero() && double_modular_rep(d).is_zero();
          });
}

}  // namespace

Suite run_all() {
  Runner r;
  divergence_laws(r);
  de_rham_checks(r);
  nijenhuis_checks(r);
  lift_checks(r);
  bv_checks(r);
  lie_algebra_checks(r);
  algebroid_checks(r);
  structure_checks(r);
  return std::move(r.suite);
}

std::string to_text(const Suite& s) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& ch : s.checks) {
    os << (ch.passed ? "[ok]   " : "[FAIL] ") << ch.name << " — " << ch.detail << "\n";
    if (!ch.passed) ++failed;
  }
  os << s.checks.size() << " formula checks, " << failed << " failure(s)\n";
  return os.str();
}

std::string to_json(const Suite& s) {
  nlohmann::json j;
  j["schema"] = 1;
  j["passed"] = s.all_passed();
  j["count"] = s.checks.size();
  j["checks"] = nlohmann::json::array();
  for (const auto& ch : s.checks) {
    nlohmann::json jc;
    jc["name"] = ch.name;
    jc["passed"] = ch.passed;
    jc["detail"] = ch.detail;
    j["checks"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

}  // namespace qmod::verify
