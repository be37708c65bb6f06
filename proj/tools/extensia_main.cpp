// Command-line front end. Talks to the solver exclusively through the C API.
//
// Exit codes: 0 success, 1 usage, 2 syntax/type error, 3 semantic
// restriction, 4 budget/overflow, 5 internal invariant failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "extensia.h"

namespace {

struct Freed {
  char* s = nullptr;
  ~Freed() { ex_string_free(s); }
};

int fail(ex_status status, const char* message) {
  if (message && *message) std::cerr << "error: " << message << "\n";
  return static_cast<int>(status);
}

bool readFile(const std::string& path, std::string& out, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot read '" + path + "'";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct ProgramHandle {
  ex_program* p = nullptr;
  ~ProgramHandle() { ex_program_free(p); }
};

struct ResultHandle {
  ex_result* r = nullptr;
  ~ResultHandle() { ex_result_free(r); }
};

int loadProgram(const std::string& path, const ex_options& opts,
                ProgramHandle& handle) {
  std::string text, error;
  if (!readFile(path, text, error)) return fail(EX_USAGE, error.c_str());
  Freed err;
  ex_status status = ex_program_load(text.c_str(), &opts, &handle.p, &err.s);
  if (status != EX_OK) return fail(status, err.s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extensia - higher-order logic programs with negation under "
               "the infinite-valued minimum-model semantics"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  std::string input;
  std::string kappaText = "auto";
  bool wadge = false;
  bool collapsed = false;
  bool asJson = false;
  bool trace = false;
  long long budget = 0;
  std::string queryExpr;
  bool allowTable = false;

  auto addCommon = [&](CLI::App* cmd, bool withKappa) {
    cmd->add_option("input", input, "program file (surface syntax)")
        ->required();
    cmd->add_flag("--wadge", wadge,
                  "rewrite predicate constants in clause heads through "
                  "injected equality predicates");
    if (withKappa) {
      cmd->add_option("--kappa", kappaText,
                      "truth-domain depth (a number, or 'auto')");
      cmd->add_option("--budget", budget, "enumeration budget");
      cmd->add_flag("--json", asJson, "machine-readable output");
    }
  };

  CLI::App* check = app.add_subcommand("check", "parse and typecheck");
  addCommon(check, false);

  CLI::App* solve =
      app.add_subcommand("solve", "compute the minimum infinite-valued model");
  addCommon(solve, true);
  solve->add_flag("--collapse", collapsed,
                  "print the three-valued collapse (True/False/Undef)");
  solve->add_flag("--trace", trace, "print per-iterate engine trace");

  CLI::App* query = app.add_subcommand(
      "query", "evaluate a closed expression against the minimum model");
  addCommon(query, true);
  query->add_option("expr", queryExpr, "core-syntax expression")->required();
  query->add_flag("--table", allowTable,
                  "allow predicate-typed results, printed as tables");

  CLI::App* wfs = app.add_subcommand(
      "wfs", "well-founded model of a normal program (oracle)");
  addCommon(wfs, true);

  CLI::App* oracleMin = app.add_subcommand(
      "oracle-min", "brute-force minimum model by enumeration (oracle)");
  addCommon(oracleMin, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ex_options opts{};
  opts.wadge = wadge ? 1 : 0;
  opts.trace = trace ? 1 : 0;
  opts.budget = budget;
  if (kappaText != "auto") {
    try {
      size_t used = 0;
      long k = std::stol(kappaText, &used);
      if (used != kappaText.size() || k < 1) throw std::invalid_argument("");
      opts.kappa = k;
    } catch (const std::exception&) {
      return fail(EX_USAGE, "--kappa expects a positive number or 'auto'");
    }
  }

  ProgramHandle program;
  if (int code = loadProgram(input, opts, program)) return code;

  if (check->parsed()) {
    Freed report;
    ex_status status = ex_program_report(program.p, &report.s);
    if (status != EX_OK) return fail(status, "cannot build type report");
    std::cout << report.s;
    return 0;
  }

  if (solve->parsed()) {
    ResultHandle result;
    Freed err;
    ex_status status = ex_solve(program.p, &result.r, &err.s);
    if (status != EX_OK) return fail(status, err.s);
    if (trace) {
      Freed tr;
      ex_result_trace(result.r, &tr.s);
      std::cerr << tr.s;
    }
    Freed text;
    status = asJson ? ex_result_json(result.r, &text.s)
                    : ex_result_text(result.r, collapsed ? 1 : 0, &text.s);
    if (status != EX_OK) return fail(status, "cannot render model");
    std::cout << text.s;
    return 0;
  }

  if (query->parsed()) {
    Freed out, err;
    ex_status status = ex_query(program.p, queryExpr.c_str(),
                                allowTable ? 1 : 0, &out.s, &err.s);
    if (status != EX_OK) return fail(status, err.s);
    std::cout << out.s << "\n";
    return 0;
  }

  if (wfs->parsed()) {
    Freed out, err;
    ex_status status = ex_wfs(program.p, asJson ? 1 : 0, &out.s, &err.s);
    if (status != EX_OK) return fail(status, err.s);
    std::cout << out.s;
    return 0;
  }

  if (oracleMin->parsed()) {
    Freed out, err;
    ex_status status = ex_oracle_min(program.p, asJson ? 1 : 0, &out.s, &err.s);
    if (status != EX_OK) return fail(status, err.s);
    std::cout << out.s;
    return 0;
  }

  return fail(EX_USAGE, "no command");
}
