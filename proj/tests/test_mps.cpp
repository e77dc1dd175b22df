#include <doctest.h>

#include <vector>

#include "bsml/bsml.hpp"
#include "bsml/checks/oracles.hpp"
#include "bsml/checks/random.hpp"
#include "bsml/observe.hpp"

using namespace bsml;
using seq::List;

namespace {

const List<long long> kRunningExample{1, 2, -1, 2, -1, 3, -4};

DistList<long long> running_example_chunks(Ctx& ctx) {
  return mkpar(ctx, [](ProcId i) -> List<long long> {
    switch (static_cast<int>(i)) {
      case 0: return {1, 2};
      case 1: return {-1, 2};
      case 2: return {-1, 3};
      default: return {-4};
    }
  });
}

}  // namespace

TEST_CASE("max_prefix_sum on pinned inputs") {
  CHECK(max_prefix_sum({}) == 0);
  CHECK(max_prefix_sum(kRunningExample) == 6);
  CHECK(max_prefix_sum({-5, -1}) == 0);
}

TEST_CASE("max_prefix_sum agrees with the prefix-enumeration oracle") {
  checks::Rng rng(4242);
  for (int round = 0; round < 500; ++round) {
    const auto l = checks::random_list(rng, 40, -50, 50);
    REQUIRE(max_prefix_sum(l) == checks::mps_by_prefix_enumeration(l));
  }
}

TEST_CASE("mps_pair tuples best prefix with the total") {
  CHECK(mps_pair({}) == MpsPair{0, 0});
  CHECK(mps_pair(kRunningExample) == MpsPair{6, 2});
  checks::Rng rng(7);
  for (int round = 0; round < 100; ++round) {
    const long long x = rng.range(-100, 100);
    CHECK(mps_pair({x}) == MpsPair{x > 0 ? x : 0, x});
    CHECK(mps_pair({x}) == mps_singleton(x));
  }
}

TEST_CASE("mps_singleton on pinned values") {
  CHECK(mps_singleton(5) == MpsPair{5, 5});
  CHECK(mps_singleton(-3) == MpsPair{0, -3});
  CHECK(mps_singleton(0) == MpsPair{0, 0});
}

TEST_CASE("mps_combine has the empty summary as its unit on summaries") {
  checks::Rng rng(11);
  for (int round = 0; round < 200; ++round) {
    const MpsPair a = mps_pair(checks::random_list(rng, 12, -9, 9));
    CHECK(mps_combine(mps_neutral(), a) == a);
    CHECK(mps_combine(a, mps_neutral()) == a);
  }
}

TEST_CASE("mps_combine matches the summary of the concatenation") {
  // the two-segment example, both sides computed from summaries of real lists
  const MpsPair left = mps_pair({1, 2});
  const MpsPair right = mps_pair({-1, 2});
  CHECK(left == MpsPair{3, 3});
  CHECK(right == MpsPair{1, 1});
  CHECK(mps_combine(left, right) == MpsPair{4, 4});
  CHECK(mps_pair({1, 2, -1, 2}) == MpsPair{4, 4});

  checks::Rng rng(23);
  for (int round = 0; round < 500; ++round) {
    const auto l1 = checks::random_list(rng, 15, -9, 9);
    const auto l2 = checks::random_list(rng, 15, -9, 9);
    REQUIRE(mps_pair(seq::concat(l1, l2)) == mps_combine(mps_pair(l1), mps_pair(l2)));
  }
}

TEST_CASE("mps_combine fails associativity only outside the invariant") {
  // hand-picked triple: x violates total<=max_prefix, y violates max_prefix>=0
  const MpsPair x{0, 3}, y{-1, -1}, z{0, 0};
  CHECK_FALSE(mps_invariant(x));
  CHECK_FALSE(mps_invariant(y));
  CHECK(mps_combine(mps_combine(x, y), z) != mps_combine(x, mps_combine(y, z)));

  // inside the invariant the law holds on sampled summaries
  checks::Rng rng(37);
  for (int round = 0; round < 300; ++round) {
    const MpsPair a = mps_pair(checks::random_list(rng, 10, -9, 9));
    const MpsPair b = mps_pair(checks::random_list(rng, 10, -9, 9));
    const MpsPair c = mps_pair(checks::random_list(rng, 10, -9, 9));
    REQUIRE(mps_combine(mps_combine(a, b), c) == mps_combine(a, mps_combine(b, c)));
  }
}

TEST_CASE("combine preserves the invariant and singletons satisfy it") {
  checks::Rng rng(53);
  for (int round = 0; round < 300; ++round) {
    const MpsPair a = mps_pair(checks::random_list(rng, 10, -9, 9));
    const MpsPair b = mps_pair(checks::random_list(rng, 10, -9, 9));
    REQUIRE(mps_invariant(a));
    REQUIRE(mps_invariant(mps_combine(a, b)));
    REQUIRE(mps_invariant(mps_singleton(rng.range(-50, 50))));
  }
  CHECK(mps_invariant(mps_neutral()));
}

TEST_CASE("mps_seq is the map/fold composition and matches the oracle") {
  CHECK(mps_seq(kRunningExample) == 6);
  CHECK(mps_seq({}) == 0);
  checks::Rng rng(61);
  for (int round = 0; round < 500; ++round) {
    const auto l = checks::random_list(rng, 20, -10, 10);
    REQUIRE(mps_seq(l) == checks::mps_by_prefix_enumeration(l));
  }
}

TEST_CASE("mps_par reproduces the running example on both backends") {
  for (Backend be : {Backend::sequential, Backend::concurrent}) {
    CAPTURE(to_string(be));
    Machine m(4, be);
    CHECK(m.run([](Ctx& ctx) { return mps_par(ctx, running_example_chunks(ctx)); }) == 6);
  }
}

TEST_CASE("mps_par of an all-empty distribution is zero") {
  Machine m(5, Backend::sequential);
  CHECK(m.run([](Ctx& ctx) {
          auto dl = mkpar(ctx, [](ProcId) { return List<long long>{}; });
          return mps_par(ctx, dl);
        }) == 0);
}

TEST_CASE("mps_par agrees with the oracle across widths and policies") {
  checks::Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    const auto l = checks::random_list(rng, 50, -40, 40);
    const long long expected = checks::mps_by_prefix_enumeration(l);
    for (int p : {1, 2, 3, 4, 8}) {
      Machine m(p, Backend::sequential);
      for (Policy policy : {Policy::block, Policy::round_robin}) {
        REQUIRE(m.run([&](Ctx& ctx) { return mps_par(ctx, distribute(ctx, l, policy)); }) ==
                expected);
      }
    }
    Machine conc(4, Backend::concurrent);
    REQUIRE(conc.run([&](Ctx& ctx) { return mps_par(ctx, distribute(ctx, l, Policy::block)); }) ==
            expected);
  }
}

TEST_CASE("mps_par accepts checked reduction") {
  Machine m(4, Backend::concurrent);
  CHECK(m.run([](Ctx& ctx) {
          return mps_par(ctx, running_example_chunks(ctx), ContractChecks::on);
        }) == 6);
}

TEST_CASE("mps_par costs exactly one superstep") {
  for (Backend be : {Backend::sequential, Backend::concurrent}) {
    Machine m(4, be);
    Trace trace;
    (void)m.run([](Ctx& ctx) { return mps_par(ctx, running_example_chunks(ctx)); }, trace);
    CHECK(trace.supersteps() == 1);
  }
}

TEST_CASE("maximum prefix sums are nonnegative and bound the total") {
  checks::Rng rng(83);
  for (int round = 0; round < 300; ++round) {
    const auto l = checks::random_list(rng, 30, -50, 50);
    const long long v = max_prefix_sum(l);
    REQUIRE(v >= 0);
    REQUIRE(v >= checks::sum_by_loop(l));
  }
}
