#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"

namespace {

struct CliOutcome {
  int code;
  std::string out;
  std::string err;
};

CliOutcome run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::vector<const char*> argv;
  argv.push_back("bsml");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code =
      bsml::cli::cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string("cli_test_input_") + std::to_string(counter()++) + ".txt";
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

}  // namespace

TEST_CASE("mps command reproduces the running example") {
  TempFile input("1,2,-1,2,-1,3,-4\n");
  for (const std::string backend : {"seq", "threads"}) {
    auto r = run_cli({"mps", input.path, "-p", "4", "--backend", backend});
    CAPTURE(backend);
    CHECK(r.code == 0);
    CHECK(r.out.find("mps = 6") != std::string::npos);
    CHECK(r.out.find("supersteps=1") != std::string::npos);
  }
}

TEST_CASE("mps command reads stdin, JSON lines and several lists") {
  auto r = run_cli({"mps", "-", "-p", "2"}, "[]\n-1 -2\n[3, -2, 5]\n");
  CHECK(r.code == 0);
  // [] -> 0, all-negative -> 0, [3,-2,5] -> 6
  std::istringstream lines(r.out);
  std::vector<std::string> outputs;
  std::string line;
  while (std::getline(lines, line)) outputs.push_back(line);
  REQUIRE(outputs.size() == 3);
  CHECK(outputs[0].find("mps = 0") == 0);
  CHECK(outputs[1].find("mps = 0") == 0);
  CHECK(outputs[2].find("mps = 6") == 0);
}

TEST_CASE("mps command emits a machine-readable report") {
  TempFile input("1,2,-1,2,-1,3,-4\n");
  auto r = run_cli({"mps", input.path, "-p", "4", "--json", "--trace"});
  REQUIRE(r.code == 0);
  const auto parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["result"] == 6);
  CHECK(parsed[0]["p"] == 4);
  CHECK(parsed[0]["supersteps"] == 1);
  CHECK(parsed[0]["input_length"] == 7);
  REQUIRE(parsed[0].contains("trace"));
  CHECK(parsed[0]["trace"].size() == 1);
}

TEST_CASE("mps command rejects bad input, bad width and oversized sums") {
  auto bad = run_cli({"mps", "-"}, "1,2,x\n");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") != std::string::npos);

  auto bad_p = run_cli({"mps", "-", "-p", "0"}, "1\n");
  CHECK(bad_p.code == 2);

  auto missing = run_cli({"mps", "no_such_file.txt"});
  CHECK(missing.code == 2);

  // two values of 2^60 exceed the documented bound on the absolute sum
  auto huge = run_cli({"mps", "-"}, "1152921504606846976 1152921504606846976\n");
  CHECK(huge.code == 2);
  CHECK(huge.err.find("overflow") != std::string::npos);
}

TEST_CASE("check command runs suites and reports failures by exit code") {
  auto ok = run_cli({"check", "core-laws", "--cases", "10", "--procs", "1,2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("suite passed") != std::string::npos);

  auto unknown = run_cli({"check", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown suite") != std::string::npos);

  auto mutated = run_cli({"check", "mps", "--mutate", "--cases", "30", "--procs", "1,2"});
  CHECK(mutated.code == 1);
  CHECK(mutated.out.find("counterexample") != std::string::npos);

  auto json_run = run_cli({"check", "stdlib", "--cases", "10", "--procs", "1,2", "--json"});
  CHECK(json_run.code == 0);
  const auto parsed = nlohmann::json::parse(json_run.out);
  CHECK(parsed["ok"] == true);
  CHECK(parsed["suite"] == "stdlib");
}

TEST_CASE("check command is reproducible per seed") {
  auto first = run_cli({"check", "skeletons", "--cases", "15", "--procs", "1,3", "--seed", "7", "--json"});
  auto second = run_cli({"check", "skeletons", "--cases", "15", "--procs", "1,3", "--seed", "7", "--json"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("bench command sweeps widths and sizes") {
  auto r = run_cli({"bench", "mps", "--procs", "1,2,4", "--sizes", "1000000", "--backend", "seq",
                    "--json"});
  REQUIRE(r.code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row["supersteps"] == 1);
    CHECK(row["result"] == rows[0]["result"]);  // result independent of p
  }

  auto empty = run_cli({"bench", "mps", "--procs", "", "--sizes", "2000"});
  CHECK(empty.code == 0);
  // header only, no rows
  CHECK(empty.out.find("program") != std::string::npos);
  CHECK(empty.out.find("mps\t") == std::string::npos);

  auto unknown = run_cli({"bench", "sort"});
  CHECK(unknown.code == 2);
}

TEST_CASE("usage problems exit with code 2") {
  auto nothing = run_cli({});
  CHECK(nothing.code == 2);
  auto unknown_flag = run_cli({"mps", "--frobnicate"});
  CHECK(unknown_flag.code == 2);
}
