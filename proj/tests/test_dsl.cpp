#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qmod/dsl.hpp"
#include "qmod/error.hpp"

using namespace qmod;
using dsl::Report;
using dsl::Script;
using dsl::ScriptError;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

dsl::SourcePos error_pos(const std::string& src) {
  try {
    dsl::static_check(dsl::parse(src));
  } catch (const ScriptError& e) {
    return e.pos();
  }
  FAIL("expected a ScriptError");
  return {};
}

}  // namespace

TEST_CASE("format is a fixed point of parse+format on every statement kind") {
  const std::string src = R"(chart M truncation 6 {
  even x;
  odd th;
}
chart TM = antitangent of M;
chart CT = cotangent of M;
chart AC = anticotangent of M;
field d on TM = de_rham(M);
field V on M = x*@x + th*@th;
let f on M = 1/2*x^2 - th*x;
volume rho on M = 2/3 * exp(x*x);
volume flat on M = 1;
algebroid A {
  base M;
  fibre odd xi1;
  fibre odd xi2;
  x_term [xi1] x : 1;
  f_term [xi1, xi2] xi2 : x;
}
double D of A;
check homological d;
modular V;
modular V with volume rho;
divergence V rho;
bracket V V;
exact? apply(d, x) by d bound 4;
assert on M : apply(V, x) == x;
)";
  Script s = dsl::parse(src);
  std::string once = dsl::format(s);
  std::string twice = dsl::format(dsl::parse(once));
  CHECK(once == twice);
  // Formatting preserves meaning: the static checker accepts both.
  dsl::static_check(s);
  dsl::static_check(dsl::parse(once));
}

TEST_CASE("corpus scripts: golden format round-trip and clean execution") {
  for (const std::string name : {"lie_algebra", "de_rham", "algebroid"}) {
    CAPTURE(name);
    std::string dir = QMOD_CORPUS_DIR;
    std::string src = slurp(dir + "/" + name + ".q");
    std::string gold = slurp(dir + "/" + name + ".gold");

    Script s = dsl::parse(src);
    dsl::static_check(s);
    CHECK(dsl::format(s) == gold);
    CHECK(dsl::format(dsl::parse(gold)) == gold);

    Report r = dsl::execute(s);
    CHECK(r.all_passed());
    CHECK(!r.records.empty());
  }
}

TEST_CASE("corpus scripts: recorded verdicts") {
  std::string dir = QMOD_CORPUS_DIR;
  Report r = dsl::execute(dsl::parse(slurp(dir + "/lie_algebra.q")));
  REQUIRE(r.records.size() == 8);
  CHECK(r.records[0].query == "check homological");
  CHECK(r.records[0].value == "homological");
  CHECK(r.records[1].query == "modular");
  CHECK(r.records[1].value == "-xi1");
  CHECK(r.records[2].value == "0");  // bracket Q Q
  CHECK(r.records[3].query == "exact?");
  CHECK(r.records[3].value == "not exact (complete verdict)");
  CHECK(!r.records[3].witness);
  CHECK(r.records[4].is_assertion);
  CHECK(r.records[4].passed);

  Report dr = dsl::execute(dsl::parse(slurp(dir + "/de_rham.q")));
  bool saw_exact = false;
  for (const auto& rec : dr.records)
    if (rec.query == "exact?") {
      saw_exact = true;
      CHECK(rec.value == "exact");
      REQUIRE(rec.witness);
      CHECK(*rec.witness == "x");
    }
  CHECK(saw_exact);
}

TEST_CASE("parse errors carry line and column positions") {
  // Missing semicolon after a coordinate.
  try {
    dsl::parse("chart M {\n  even x\n}\n");
    FAIL("expected ScriptError");
  } catch (const ScriptError& e) {
    CHECK(e.pos().line == 3);
    CHECK(std::string(e.what()).find("line 3:") != std::string::npos);
  }

  // Unknown statement keyword, first line.
  try {
    dsl::parse("frobnicate x;\n");
    FAIL("expected ScriptError");
  } catch (const ScriptError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().col == 1);
  }

  // Bad token inside an expression, with comments not disturbing the count.
  try {
    dsl::parse("# comment\nchart M { even x; }\nlet f on M = x + ;\n");
    FAIL("expected ScriptError");
  } catch (const ScriptError& e) {
    CHECK(e.pos().line == 3);
  }

  CHECK_THROWS_AS(dsl::parse("chart M { even x; }  let f on M = (x;\n"), ScriptError);
  CHECK_THROWS_AS(dsl::parse("volume v on M = -1;\n"), ScriptError);
}

TEST_CASE("static_check rejects bad name resolution and kinds") {
  // Unknown chart.
  CHECK(error_pos("field Q on M = @x;\n").line == 1);
  // Duplicate definition.
  CHECK_THROWS_AS(
      dsl::static_check(dsl::parse("chart M { even x; }\nchart M { odd t; }\n")),
      ScriptError);
  // Function where a field is expected.
  CHECK_THROWS_AS(dsl::static_check(dsl::parse(
                      "chart M { even x; }\nlet f on M = x;\nbracket f f;\n")),
                  ScriptError);
  // Field where a function is expected.
  CHECK_THROWS_AS(dsl::static_check(dsl::parse(
                      "chart M { even x; }\nfield V on M = x*@x;\nlet g on M = V + x;\n")),
                  ScriptError);
  // Values from different charts cannot mix.
  CHECK_THROWS_AS(dsl::static_check(dsl::parse("chart M { even x; }\n"
                                               "chart N { even y; }\n"
                                               "let f on M = x;\n"
                                               "let g on N = f + y;\n")),
                  ScriptError);
  // de_rham must be evaluated on the antitangent chart of its argument.
  CHECK_THROWS_AS(dsl::static_check(dsl::parse(
                      "chart M { even x; }\nfield d on M = de_rham(M);\n")),
                  ScriptError);
  // Two vector fields cannot be multiplied.
  CHECK_THROWS_AS(dsl::static_check(dsl::parse(
                      "chart M { even x; }\nfield V on M = @x*@x;\n")),
                  ScriptError);
  // A well-formed script passes without touching the kernel.
  dsl::static_check(dsl::parse("chart M { even x; }\nfield V on M = x*@x;\n"
                               "modular V;\nassert on M : apply(V, x) == x;\n"));
}

TEST_CASE("assertion failures are report content, not exceptions") {
  Report r = dsl::execute(dsl::parse(
      "chart M { even x; }\nassert on M : x == x;\nassert on M : x == x + 1;\n"));
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].passed);
  CHECK(!r.records[1].passed);
  CHECK(!r.all_passed());
  CHECK(r.records[1].value.rfind("fail:", 0) == 0);
  std::string text = dsl::to_text(r);
  CHECK(text.find("[ok]") != std::string::npos);
  CHECK(text.find("[FAIL]") != std::string::npos);
  CHECK(text.find("1 failure(s)") != std::string::npos);
}

TEST_CASE("kernel errors during execution propagate as exceptions") {
  // Odd log-density passes the static kind check but the kernel rejects it.
  Script s = dsl::parse("chart L { odd t; }\nvolume v on L = 1 * exp(t);\n");
  dsl::static_check(s);
  CHECK_THROWS_AS(dsl::execute(s), Error);
  // Zero scalar stands in for the zero field; a nonzero one does not.
  CHECK_NOTHROW(dsl::execute(dsl::parse("chart M { even x; }\nfield Z on M = 0;\n")));
  CHECK_THROWS_AS(dsl::execute(dsl::parse("chart M { even x; }\nfield Z on M = x;\n")),
                  ScriptError);
}

TEST_CASE("default truncation applies to charts without a truncation clause") {
  const std::string src = "chart M { even x; }\nassert on M : x^5 == 0;\n";
  // With truncation 4 the degree-5 monomial is dropped, so the assert holds.
  CHECK(dsl::execute(dsl::parse(src, 4)).all_passed());
  CHECK(!dsl::execute(dsl::parse(src, 8)).all_passed());
  // An explicit clause wins over the default.
  const std::string ex =
      "chart M truncation 4 { even x; }\nassert on M : x^5 == 0;\n";
  CHECK(dsl::execute(dsl::parse(ex, 8)).all_passed());
}

TEST_CASE("to_json: schema 1, faithful records, deterministic modulo ms") {
  std::string dir = QMOD_CORPUS_DIR;
  Script s = dsl::parse(slurp(dir + "/lie_algebra.q"));

  auto canonical = [](const Report& r) {
    nlohmann::json j = nlohmann::json::parse(dsl::to_json(r));
    for (auto& rec : j.at("records")) rec.erase("ms");
    return j;
  };

  nlohmann::json j = canonical(dsl::execute(s));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("passed") == true);
  REQUIRE(j.at("records").size() == 8);
  const auto& first = j.at("records")[0];
  CHECK(first.at("query") == "check homological");
  CHECK(first.at("value") == "homological");
  CHECK(first.at("assertion") == false);
  CHECK(first.at("passed") == true);
  CHECK(j.at("records")[3].at("value") == "not exact (complete verdict)");

  // Each record carries a wall-time field (stripped above).
  nlohmann::json raw = nlohmann::json::parse(dsl::to_json(dsl::execute(s)));
  for (const auto& rec : raw.at("records")) CHECK(rec.contains("ms"));

  // Two runs agree exactly once "ms" is removed.
  CHECK(canonical(dsl::execute(s)) == j);

  // Failures are reflected in the top-level flag and the record.
  Report bad = dsl::execute(
      dsl::parse("chart M { even x; }\nassert on M : x == x + 1;\n"));
  nlohmann::json jb = canonical(bad);
  CHECK(jb.at("passed") == false);
  CHECK(jb.at("records")[0].at("passed") == false);
}
