#include <doctest.h>

#include <set>

#include "bsml/checks/suites.hpp"

using namespace bsml;

namespace {

checks::Options small_options() {
  checks::Options opts;
  opts.cases = 30;
  opts.procs = {1, 2, 4};
  opts.concurrent_stride = 10;
  return opts;
}

}  // namespace

TEST_CASE("every suite passes on a correct build") {
  for (const auto& name : checks::suite_names()) {
    CAPTURE(name);
    auto result = checks::run_suite(name, small_options());
    for (const auto& prop : result.properties) {
      CAPTURE(prop.property);
      CHECK_MESSAGE(prop.ok(), prop.counterexample.value_or(""));
    }
    CHECK(result.ok());
    CHECK(result.total_cases() > 0);
  }
}

TEST_CASE("unknown suites are a usage error") {
  CHECK_THROWS_AS((void)checks::run_suite("nope", small_options()), usage_error);
}

TEST_CASE("the mutation flag makes the mps suite fail with a counterexample") {
  auto opts = small_options();
  opts.mutate_mps = true;
  auto result = checks::check_mps(opts);
  CHECK_FALSE(result.ok());
  bool found_witness = false;
  for (const auto& prop : result.properties) {
    if (!prop.ok()) {
      found_witness = true;
      CHECK_FALSE(prop.counterexample->empty());
    }
  }
  CHECK(found_witness);
}

TEST_CASE("suite results are reproducible for a fixed seed") {
  auto opts = small_options();
  opts.seed = 12345;
  auto first = checks::check_core_laws(opts);
  auto second = checks::check_core_laws(opts);
  REQUIRE(first.properties.size() == second.properties.size());
  for (std::size_t i = 0; i < first.properties.size(); ++i) {
    CHECK(first.properties[i].cases == second.properties[i].cases);
    CHECK(first.properties[i].ok() == second.properties[i].ok());
  }
}

TEST_CASE("the corpus is broad and uniquely named") {
  const auto& programs = checks::corpus();
  CHECK(programs.size() >= 20);
  std::set<std::string> names;
  for (const auto& program : programs) names.insert(program.name);
  CHECK(names.size() == programs.size());
}

TEST_CASE("generator streams are deterministic") {
  checks::Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
  checks::Rng c(100);
  bool all_same = true;
  for (int i = 0; i < 100; ++i) all_same = all_same && (checks::Rng(99).next() == c.next());
  CHECK_FALSE(all_same);
}

TEST_CASE("the shrinker minimizes a failing list") {
  // property: "no element is >= 3"; fails whenever some element is >= 3
  auto fails = [](const seq::List<long long>& l) {
    for (long long x : l) {
      if (x >= 3) return true;
    }
    return false;
  };
  auto shrunk = checks::shrink_list({5, 1, 7, -2}, fails);
  REQUIRE(shrunk.size() == 1);
  CHECK(shrunk[0] == 3);
}
