#ifndef QMOD_DSL_HPP
#define QMOD_DSL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmod/error.hpp"

namespace qmod::dsl {

struct SourcePos {
  unsigned line = 0;
  unsigned col = 0;
};

/// Parse or static-check failure; what() carries line/column and the
/// offending token.
class ScriptError : public Error {
 public:
  ScriptError(SourcePos pos, const std::string& msg)
      : Error("line " + std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

namespace detail {
struct ScriptData;
}

/// A parsed script; immutable value, cheap to copy.
struct Script {
  std::shared_ptr<const detail::ScriptData> data;
};

/// Parses UTF-8 source. Charts without an explicit `truncation N;` clause
/// use default_truncation. Throws ScriptError.
Script parse(const std::string& source, unsigned default_truncation = 8);

/// Canonical pretty-print of the AST (no evaluation). Idempotent:
/// format(parse(format(parse(s)))) == format(parse(s)).
std::string format(const Script& s);

/// Name-resolution and kind checking without evaluating any expression.
/// Throws ScriptError on the first problem.
void static_check(const Script& s);

struct Record {
  std::string query;                  // statement kind, e.g. "modular", "assert"
  std::string inputs;                 // canonical rendering of the operands
  std::string value;                  // verdict or canonical value text
  bool is_assertion = false;
  bool passed = true;                 // always true for non-assertions
  std::optional<std::string> witness;
  double ms = 0.0;                    // wall time; excluded from determinism
};

struct Report {
  std::vector<Record> records;
  bool all_passed() const {
    for (const auto& r : records)
      if (!r.passed) return false;
    return true;
  }
};

/// Evaluates the script in order. Assertion failures are report content;
/// kernel errors propagate as exceptions annotated with the statement
/// position.
Report execute(const Script& s);

/// Human-readable report table.
std::string to_text(const Report& r);

/// Machine-readable report, {"schema": 1, ...}; deterministic modulo "ms".
std::string to_json(const Report& r);

}  // namespace qmod::dsl

#endif
