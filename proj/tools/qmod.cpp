#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qmod/dsl.hpp"
#include "qmod/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitRuntimeError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_check(const std::string& path, unsigned truncation) {
  try {
    qmod::dsl::Script s = qmod::dsl::parse(read_file(path), truncation);
    qmod::dsl::static_check(s);
  } catch (const qmod::dsl::ScriptError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntimeError;
  }
  std::cout << path << ": ok\n";
  return kExitOk;
}

int cmd_run(const std::string& path, unsigned truncation, bool json) {
  qmod::dsl::Script s;
  try {
    s = qmod::dsl::parse(read_file(path), truncation);
    qmod::dsl::static_check(s);
  } catch (const qmod::dsl::ScriptError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntimeError;
  }
  try {
    qmod::dsl::Report r = qmod::dsl::execute(s);
    std::cout << (json ? qmod::dsl::to_json(r) : qmod::dsl::to_text(r));
    return r.all_passed() ? kExitOk : kExitAssertFailed;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int cmd_verify(bool json) {
  qmod::verify::Suite s = qmod::verify::run_all();
  std::cout << (json ? qmod::verify::to_json(s) : qmod::verify::to_text(s));
  return s.all_passed() ? kExitOk : kExitAssertFailed;
}

int cmd_fmt(const std::string& path, unsigned truncation) {
  try {
    qmod::dsl::Script s = qmod::dsl::parse(read_file(path), truncation);
    std::cout << qmod::dsl::format(s);
    return kExitOk;
  } catch (const qmod::dsl::ScriptError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic toolkit for Q-manifold modular classes"};
  app.require_subcommand(1);

  unsigned truncation = 8;
  app.add_option("--truncation", truncation, "Default truncation order for charts")
      ->check(CLI::PositiveNumber);

  std::string check_file, run_file, fmt_file;
  bool run_json = false, verify_json = false;

  CLI::App* check = app.add_subcommand("check", "Parse and type-check a script");
  check->add_option("file", check_file, "Script file")->required();

  CLI::App* run = app.add_subcommand("run", "Execute a script and report queries");
  run->add_option("file", run_file, "Script file")->required();
  run->add_flag("--json", run_json, "Machine-readable report");

  CLI::App* verify =
      app.add_subcommand("verify-examples", "Run the built-in formula suite");
  verify->add_flag("--json", verify_json, "Machine-readable report");

  CLI::App* fmt = app.add_subcommand("fmt", "Canonicalise a script to stdout");
  fmt->add_option("file", fmt_file, "Script file")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(check_file, truncation);
  if (run->parsed()) return cmd_run(run_file, truncation, run_json);
  if (verify->parsed()) return cmd_verify(verify_json);
  if (fmt->parsed()) return cmd_fmt(fmt_file, truncation);
  return kExitOk;
}
