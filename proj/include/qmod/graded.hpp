#ifndef QMOD_GRADED_HPP
#define QMOD_GRADED_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/chart.hpp"
#include "qmod/rational.hpp"

namespace qmod {

/// Exponent vector aligned with the chart's coordinate order.
/// Odd coordinates carry exponent 0 or 1.
struct Monomial {
  std::vector<std::uint32_t> exps;

  bool operator<(const Monomial& o) const { return exps < o.exps; }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

/// A function germ: exact-rational coefficients on monomials in the chart's
/// coordinates, truncated in total even degree. Immutable value type; all
/// arithmetic is pure.
class GradedElem {
 public:
  GradedElem() = default;
  explicit GradedElem(Chart chart) : chart_(std::move(chart)) {}

  static GradedElem zero(const Chart& chart) { return GradedElem(chart); }
  static GradedElem constant(const Chart& chart, const Rational& c);
  static GradedElem coordinate(const Chart& chart, const std::string& name);
  static GradedElem coordinate(const Chart& chart, std::size_t index);

  const Chart& chart() const { return chart_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational constant_term() const;

  /// Parity of a homogeneous element; nullopt when the element mixes
  /// parities. Zero reports even.
  std::optional<Parity> parity() const;
  bool is_homogeneous() const { return parity().has_value(); }
  GradedElem part(Parity p) const;
  GradedElem even_part() const { return part(Parity::Even); }
  GradedElem odd_part() const { return part(Parity::Odd); }

  GradedElem operator-() const;
  friend GradedElem operator+(const GradedElem& f, const GradedElem& g);
  friend GradedElem operator-(const GradedElem& f, const GradedElem& g);
  friend GradedElem operator*(const GradedElem& f, const GradedElem& g);
  friend GradedElem operator*(const Rational& c, const GradedElem& f);
  GradedElem& operator+=(const GradedElem& g) { return *this = *this + g; }
  GradedElem& operator-=(const GradedElem& g) { return *this = *this - g; }
  GradedElem& operator*=(const GradedElem& g) { return *this = *this * g; }

  bool operator==(const GradedElem& o) const {
    return chart_ == o.chart_ && terms_ == o.terms_;
  }
  bool operator!=(const GradedElem& o) const { return !(*this == o); }

  GradedElem left_partial(std::size_t coord) const;
  GradedElem left_partial(const std::string& coord) const {
    return left_partial(chart_.require(coord));
  }

  /// Integer power (n >= 0), with truncation applied along the way.
  GradedElem pow(unsigned n) const;

  /// Multiplicative inverse up to the truncation order. Requires an even
  /// element with nonzero rational constant term.
  GradedElem inverse() const;

  /// log of an even element with constant term 1 (Mercator series, exact
  /// at truncation order).
  GradedElem log1() const;

  /// Canonical rendering: terms sorted by total degree then lexicographically
  /// by chart coordinate order; reduced-fraction coefficients.
  std::string to_string() const;

  /// Adds c * m, pruning zeros; drops the term if it exceeds truncation.
  void add_term(const Monomial& m, const Rational& c);

 private:
  Chart chart_;
  std::map<Monomial, Rational> terms_;
};

/// Even degree (sum of even-coordinate exponents) of a monomial.
unsigned even_degree(const Chart& chart, const Monomial& m);
/// Total degree: even degree plus number of odd factors.
unsigned total_degree(const Chart& chart, const Monomial& m);
Parity monomial_parity(const Chart& chart, const Monomial& m);

}  // namespace qmod

#endif
