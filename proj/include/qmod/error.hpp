#ifndef QMOD_ERROR_HPP
#define QMOD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qmod {

/// Base error for all kernel failures (chart mismatches, bad input, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartMismatch : Error {
  explicit ChartMismatch(const std::string& what) : Error(what) {}
};

struct ParityError : Error {
  explicit ParityError(const std::string& what) : Error(what) {}
};

}  // namespace qmod

#endif
