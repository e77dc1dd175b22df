#pragma once

// The command-line harness: `mps` runs the maximum-prefix-sum demo on a
// chosen machine, `check` executes a property suite, `bench` sweeps widths
// and input sizes. Everything is also callable in-process (cli_main), which
// is how the test suite drives it.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsml/checks/random.hpp"
#include "bsml/checks/suites.hpp"
#include "bsml/mps.hpp"
#include "bsml/skeletons.hpp"
#include "bsml/trace.hpp"

namespace bsml::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;  // contract violation or counterexample
inline constexpr int kExitUsage = 2;     // usage, configuration or input parse problem

/// Inputs whose absolute element sum exceeds this bound are rejected: every
/// intermediate value of the reduction is within 2x the bound, so 64-bit
/// arithmetic cannot overflow below it.
inline constexpr long long kMaxAbsSum = 1LL << 60;

struct ParsedArgs {
  std::string backend = "threads";  // seq | threads
  std::string policy = "block";     // block | roundrobin
  bool json = false;
  bool trace = false;
};

inline Backend backend_of(const std::string& name) {
  if (name == "seq") return Backend::sequential;
  if (name == "threads") return Backend::concurrent;
  throw usage_error("unknown backend '" + name + "', expected seq or threads");
}

inline Policy policy_of(const std::string& name) {
  if (name == "block") return Policy::block;
  if (name == "roundrobin") return Policy::round_robin;
  throw usage_error("unknown policy '" + name + "', expected block or roundrobin");
}

/// One integer list per line, comma- or whitespace-separated; a line starting
/// with '[' is read as a JSON array instead. Blank lines are skipped.
inline seq::List<long long> parse_int_list(const std::string& line) {
  std::size_t first = line.find_first_not_of(" \t\r");
  if (first != std::string::npos && line[first] == '[') {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw usage_error(std::string("bad JSON list: ") + e.what());
    }
    if (!parsed.is_array()) throw usage_error("JSON input must be an array of integers");
    seq::List<long long> l;
    for (const auto& item : parsed) {
      if (!item.is_number_integer()) throw usage_error("JSON input must be an array of integers");
      l.push_back(item.get<long long>());
    }
    return l;
  }
  seq::List<long long> l;
  std::string token;
  std::istringstream is(line);
  while (std::getline(is, token, ',')) {
    std::istringstream words(token);
    std::string word;
    while (words >> word) {
      try {
        std::size_t used = 0;
        const long long value = std::stoll(word, &used);
        if (used != word.size()) throw std::invalid_argument(word);
        l.push_back(value);
      } catch (const std::exception&) {
        throw usage_error("cannot parse integer '" + word + "'");
      }
    }
  }
  return l;
}

inline void check_overflow_bound(const seq::List<long long>& l) {
  unsigned long long abs_sum = 0;
  for (long long x : l) {
    abs_sum += static_cast<unsigned long long>(x < 0 ? -(x + 1) + 1ULL : x);
    if (abs_sum > static_cast<unsigned long long>(kMaxAbsSum)) {
      throw usage_error("input rejected: sum of absolute values exceeds 2^60, "
                        "the documented overflow bound");
    }
  }
}

/// Lines of the input file ("-" is stdin), one list per nonblank line.
inline std::vector<seq::List<long long>> read_lists(const std::string& path, std::istream& fallback) {
  std::ifstream file;
  std::istream* in = &fallback;
  if (path != "-") {
    file.open(path);
    if (!file) throw usage_error("cannot open input file '" + path + "'");
    in = &file;
  }
  std::vector<seq::List<long long>> lists;
  std::string line;
  while (std::getline(*in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto l = parse_int_list(line);
    check_overflow_bound(l);
    lists.push_back(std::move(l));
  }
  return lists;
}

/// What one program execution looked like: the value it produced plus the
/// superstep/communication profile and the wall time.
struct RunReport {
  std::string program;
  int procs = 0;
  std::string backend;
  std::string policy;
  long long result = 0;
  std::size_t input_length = 0;
  std::size_t supersteps = 0;
  std::vector<SuperstepRecord> steps;
  double wall_ms = 0.0;
};

inline nlohmann::json to_json(const SuperstepRecord& rec) {
  nlohmann::json rows = nlohmann::json::array();
  for (int src = 0; src < rec.nprocs; ++src) {
    nlohmann::json row = nlohmann::json::array();
    for (int dst = 0; dst < rec.nprocs; ++dst) row.push_back(rec.sent(src, dst));
    rows.push_back(std::move(row));
  }
  return {{"step", rec.index}, {"op", rec.op}, {"messages", std::move(rows)}};
}

inline nlohmann::json to_json(const RunReport& report, bool with_trace) {
  nlohmann::json j{{"program", report.program},
                   {"p", report.procs},
                   {"backend", report.backend},
                   {"policy", report.policy},
                   {"input_length", report.input_length},
                   {"result", report.result},
                   {"supersteps", report.supersteps},
                   {"wall_ms", report.wall_ms}};
  if (with_trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& rec : report.steps) steps.push_back(to_json(rec));
    j["trace"] = std::move(steps);
  }
  return j;
}

inline RunReport run_mps_once(Machine& machine, Policy policy, const std::string& backend_name,
                              const std::string& policy_name, const seq::List<long long>& input) {
  Trace trace;
  const auto start = std::chrono::steady_clock::now();
  const long long result =
      machine.run([&input, policy](Ctx& ctx) { return mps_par(ctx, distribute(ctx, input, policy)); },
                  trace);
  const auto stop = std::chrono::steady_clock::now();
  RunReport report;
  report.program = "mps";
  report.procs = machine.nprocs();
  report.backend = backend_name;
  report.policy = policy_name;
  report.result = result;
  report.input_length = input.size();
  report.supersteps = trace.supersteps();
  report.steps = trace.records();
  report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

inline void print_trace(std::ostream& out, const std::vector<SuperstepRecord>& steps) {
  for (const auto& rec : steps) {
    out << "  superstep " << rec.index << ": " << rec.op << ", " << rec.total_messages()
        << " message(s)\n";
    for (int src = 0; src < rec.nprocs; ++src) {
      out << "    ";
      for (int dst = 0; dst < rec.nprocs; ++dst) out << rec.sent(src, dst) << " ";
      out << "\n";
    }
  }
}

// ---------------------------------------------------------------------------

struct MpsOptions {
  std::string input_path = "-";
  int procs = 4;
  ParsedArgs common;
};

inline int run_mps_command(const MpsOptions& opts, std::istream& in, std::ostream& out,
                           std::ostream& err) {
  std::vector<seq::List<long long>> lists;
  Machine* machine = nullptr;
  std::optional<Machine> storage;
  try {
    if (opts.procs < 1) throw usage_error("p must be at least 1");
    lists = read_lists(opts.input_path, in);
    storage.emplace(opts.procs, backend_of(opts.common.backend));
    machine = &*storage;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const Policy policy = policy_of(opts.common.policy);
  nlohmann::json output = nlohmann::json::array();
  try {
    for (const auto& input : lists) {
      RunReport report = run_mps_once(*machine, policy, opts.common.backend, opts.common.policy, input);
      if (opts.common.json) {
        output.push_back(to_json(report, opts.common.trace));
      } else {
        out << "mps = " << report.result << "  (n=" << report.input_length << ", p=" << report.procs
            << ", backend=" << report.backend << ", policy=" << report.policy
            << ", supersteps=" << report.supersteps << ", wall_ms=" << report.wall_ms << ")\n";
        if (opts.common.trace) print_trace(out, report.steps);
      }
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitContract;
  }
  if (opts.common.json) out << output.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string suite;
  std::uint64_t seed = 42;
  int cases = 200;
  std::string procs_csv = "1,2,3,4,8";
  bool mutate = false;
  bool json = false;
};

inline std::vector<int> parse_int_csv(const std::string& csv) {
  std::vector<int> values;
  std::string token;
  std::istringstream is(csv);
  while (std::getline(is, token, ',')) {
    if (token.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      values.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw usage_error("cannot parse integer '" + token + "' in list '" + csv + "'");
    }
  }
  return values;
}

inline int run_check_command(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  checks::SuiteResult result;
  try {
    checks::Options suite_opts;
    suite_opts.seed = opts.seed;
    suite_opts.cases = opts.cases;
    suite_opts.mutate_mps = opts.mutate;
    auto procs = parse_int_csv(opts.procs_csv);
    if (!procs.empty()) suite_opts.procs = std::move(procs);
    for (int p : suite_opts.procs) {
      if (p < 1) throw usage_error("p must be at least 1");
    }
    result = checks::run_suite(opts.suite, suite_opts);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (opts.json) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& prop : result.properties) {
      nlohmann::json j{{"property", prop.property}, {"cases", prop.cases}, {"ok", prop.ok()}};
      if (!prop.ok()) j["counterexample"] = *prop.counterexample;
      props.push_back(std::move(j));
    }
    out << nlohmann::json{{"suite", result.suite},
                          {"seed", opts.seed},
                          {"cases", result.total_cases()},
                          {"ok", result.ok()},
                          {"properties", std::move(props)}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& prop : result.properties) {
      if (prop.ok()) {
        out << "ok   " << result.suite << "/" << prop.property << " (" << prop.cases << " cases)\n";
      } else {
        out << "FAIL " << result.suite << "/" << prop.property << "\n     counterexample: "
            << *prop.counterexample << "\n";
      }
    }
    out << (result.ok() ? "suite passed" : "suite FAILED") << " (" << result.total_cases()
        << " cases, seed " << opts.seed << ")\n";
  }
  return result.ok() ? kExitOk : kExitContract;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string program = "mps";
  std::string procs_csv = "1,2,4";
  std::string sizes_csv = "1000000";
  std::uint64_t seed = 42;
  ParsedArgs common;
};

inline seq::List<long long> bench_input(std::uint64_t seed, long long size) {
  checks::Rng rng(seed ^ static_cast<std::uint64_t>(size));
  seq::List<long long> l;
  l.reserve(static_cast<std::size_t>(size));
  for (long long i = 0; i < size; ++i) l.push_back(rng.range(-50, 50));
  return l;
}

inline int run_bench_command(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<int> procs;
  std::vector<int> sizes;
  try {
    if (opts.program != "mps") throw usage_error("unknown bench program '" + opts.program + "'");
    procs = parse_int_csv(opts.procs_csv);
    sizes = parse_int_csv(opts.sizes_csv);
    for (int p : procs) {
      if (p < 1) throw usage_error("p must be at least 1");
    }
    (void)backend_of(opts.common.backend);
    (void)policy_of(opts.common.policy);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  nlohmann::json rows = nlohmann::json::array();
  if (!opts.common.json) out << "program\tp\tsize\twall_ms\tsupersteps\tresult\n";
  for (int size : sizes) {
    const auto input = bench_input(opts.seed, size);
    for (int p : procs) {
      Machine machine(p, backend_of(opts.common.backend));
      RunReport report = run_mps_once(machine, policy_of(opts.common.policy), opts.common.backend,
                                      opts.common.policy, input);
      if (opts.common.json) {
        rows.push_back(to_json(report, false));
      } else {
        out << report.program << "\t" << p << "\t" << size << "\t" << report.wall_ms << "\t"
            << report.supersteps << "\t" << report.result << "\n";
      }
    }
  }
  if (opts.common.json) out << rows.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Bulk synchronous parallel vectors, skeletons and the maximum prefix sum demo"};
  app.require_subcommand(1);

  MpsOptions mps_opts;
  auto* mps_cmd = app.add_subcommand("mps", "maximum prefix sum of each input list");
  mps_cmd->add_option("input", mps_opts.input_path, "input file, '-' for stdin")
      ->default_val("-");
  mps_cmd->add_option("-p,--procs", mps_opts.procs, "number of processors")->default_val(4);
  mps_cmd->add_option("--backend", mps_opts.common.backend, "seq or threads")->default_val("threads");
  mps_cmd->add_option("--policy", mps_opts.common.policy, "block or roundrobin")->default_val("block");
  mps_cmd->add_flag("--json", mps_opts.common.json, "machine-readable output");
  mps_cmd->add_flag("--trace", mps_opts.common.trace, "include per-superstep message matrices");

  CheckOptions check_opts;
  auto* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd->add_option("suite", check_opts.suite, "core-laws, stdlib, skeletons or mps")
      ->required();
  check_cmd->add_option("--seed", check_opts.seed, "generator seed")->default_val(42);
  check_cmd->add_option("--cases", check_opts.cases, "randomized cases per property per width")
      ->default_val(200);
  check_cmd->add_option("--procs", check_opts.procs_csv, "comma-separated machine widths")
      ->default_val("1,2,3,4,8");
  check_cmd->add_flag("--mutate", check_opts.mutate,
                      "deliberately break the combine operator under test (the suite must fail)");
  check_cmd->add_flag("--json", check_opts.json, "machine-readable output");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "time a program over width and size sweeps");
  bench_cmd->add_option("program", bench_opts.program, "program to time (mps)")->default_val("mps");
  bench_cmd->add_option("--procs", bench_opts.procs_csv, "comma-separated widths")
      ->default_val("1,2,4");
  bench_cmd->add_option("--sizes", bench_opts.sizes_csv, "comma-separated input sizes")
      ->default_val("1000000");
  bench_cmd->add_option("--seed", bench_opts.seed, "input generator seed")->default_val(42);
  bench_cmd->add_option("--backend", bench_opts.common.backend, "seq or threads")
      ->default_val("threads");
  bench_cmd->add_option("--policy", bench_opts.common.policy, "block or roundrobin")
      ->default_val("block");
  bench_cmd->add_flag("--json", bench_opts.common.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);  // --help and friends
    }
    (void)app.exit(e, out, err);
    return kExitUsage;
  }

  if (mps_cmd->parsed()) return run_mps_command(mps_opts, in, out, err);
  if (check_cmd->parsed()) return run_check_command(check_opts, out, err);
  return run_bench_command(bench_opts, out, err);
}

}  // namespace bsml::cli
