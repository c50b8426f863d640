#ifndef QMOD_CHART_HPP
#define QMOD_CHART_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmod/error.hpp"

namespace qmod {

/// Grassmann parity, isomorphic to Z2.
enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<unsigned>(a) + static_cast<unsigned>(b)) & 1u);
}

inline Parity parity_of_int(unsigned n) { return static_cast<Parity>(n & 1u); }

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Optional bi-weight used for double-structure bookkeeping.
using BiWeight = std::pair<int, int>;

struct Coord {
  std::string name;
  Parity parity = Parity::Even;
  std::optional<BiWeight> weight;

  bool operator==(const Coord& o) const {
    return name == o.name && parity == o.parity && weight == o.weight;
  }
};

/// An ordered coordinate system with parities and a truncation order for
/// the even variables. Immutable; cheap to copy (shared payload).
class Chart {
 public:
  Chart() = default;

  static Chart make(std::vector<Coord> coords, unsigned truncation = 8) {
    if (truncation < 1) throw Error("chart truncation must be >= 1");
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = i + 1; j < coords.size(); ++j)
        if (coords[i].name == coords[j].name)
          throw Error("duplicate coordinate name '" + coords[i].name + "'");
    auto d = std::make_shared<Data>();
    d->coords = std::move(coords);
    d->truncation = truncation;
    Chart c;
    c.d_ = std::move(d);
    return c;
  }

  std::size_t size() const { return d_ ? d_->coords.size() : 0; }
  const Coord& coord(std::size_t i) const { return d_->coords[i]; }
  const std::vector<Coord>& coords() const { return d_->coords; }
  unsigned truncation() const { return d_->truncation; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    if (!d_) return std::nullopt;
    for (std::size_t i = 0; i < d_->coords.size(); ++i)
      if (d_->coords[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw Error("unknown coordinate '" + name + "'");
    return *i;
  }

  bool valid() const { return static_cast<bool>(d_); }

  /// Structural equality: same coordinates, parities, weights, truncation.
  bool operator==(const Chart& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->truncation == o.d_->truncation && d_->coords == o.d_->coords;
  }
  bool operator!=(const Chart& o) const { return !(*this == o); }

 private:
  struct Data {
    std::vector<Coord> coords;
    unsigned truncation = 8;
  };
  std::shared_ptr<const Data> d_;
};

inline void require_same_chart(const Chart& a, const Chart& b) {
  if (a != b) throw ChartMismatch("operands live on different charts");
}

}  // namespace qmod

#endif
