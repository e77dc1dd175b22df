#include <doctest.h>

#include <optional>
#include <vector>

#include "bsml/bsml.hpp"
#include "bsml/observe.hpp"

using namespace bsml;

namespace {

const Backend kBackends[] = {Backend::sequential, Backend::concurrent};

}  // namespace

TEST_CASE("replicate holds the value everywhere") {
  Machine m(3, Backend::sequential);
  auto v = m.run([](Ctx& ctx) { return replicate(ctx, 5); });
  CHECK(observe::all(v) == std::vector<int>{5, 5, 5});

  auto both = m.run([](Ctx& ctx) {
    return std::make_pair(replicate(ctx, 42), mkpar(ctx, [](ProcId) { return 42; }));
  });
  CHECK(observe::equal(both.first, both.second));
  for (int i = 0; i < 3; ++i) CHECK(observe::get(v, i) == 5);
}

TEST_CASE("parfun family applies pointwise") {
  Machine m(3, Backend::sequential);
  auto succ = m.run([](Ctx& ctx) {
    auto v = mkpar(ctx, [](ProcId i) -> int { return i; });
    return parfun(ctx, [](const int& x) { return x + 1; }, v);
  });
  CHECK(observe::all(succ) == std::vector<int>{1, 2, 3});

  auto same = m.run([](Ctx& ctx) {
    auto v = mkpar(ctx, [](ProcId i) -> int { return 4 - i; });
    auto f = [](const int& x) { return 3 * x; };
    return std::make_pair(parfun(ctx, f, v), apply(ctx, replicate(ctx, f), v));
  });
  CHECK(observe::equal(same.first, same.second));

  Machine m2(2, Backend::sequential);
  auto added = m2.run([](Ctx& ctx) {
    auto a = mkpar(ctx, [](ProcId i) -> int { return i + 1; });        // <1,2>
    auto b = mkpar(ctx, [](ProcId i) -> int { return 10 * (i + 1); }); // <10,20>
    return parfun2(ctx, [](const int& x, const int& y) { return x + y; }, a, b);
  });
  CHECK(observe::all(added) == std::vector<int>{11, 22});
}

TEST_CASE("procs lists every identifier") {
  Machine m(4, Backend::sequential);
  CHECK(m.run([](Ctx& ctx) { return procs(ctx); }) == seq::List<int>{0, 1, 2, 3});
  Machine one(1, Backend::sequential);
  CHECK(one.run([](Ctx& ctx) { return procs(ctx); }) == seq::List<int>{0});
  Machine m8(8, Backend::concurrent);
  CHECK(m8.run([](Ctx& ctx) { return procs(ctx); }).size() == 8);
}

TEST_CASE("list_of_par lists the components in processor order") {
  for (Backend be : kBackends) {
    CAPTURE(to_string(be));
    Machine m(4, be);
    auto l = m.run([](Ctx& ctx) {
      return list_of_par(ctx, mkpar(ctx, [](ProcId i) -> int { return i; }));
    });
    CHECK(l == seq::List<int>{0, 1, 2, 3});

    auto copies = m.run([](Ctx& ctx) { return list_of_par(ctx, replicate(ctx, 6)); });
    CHECK(copies == seq::List<int>{6, 6, 6, 6});

    auto f = [](int i) { return 9 - 2 * i; };
    auto converted = m.run([f](Ctx& ctx) {
      auto via_vector = list_of_par(ctx, mkpar(ctx, [f](ProcId i) { return f(i); }));
      auto via_list = seq::map(f, procs(ctx));
      return std::make_pair(via_vector, via_list);
    });
    CHECK(converted.first == converted.second);
  }
}

TEST_CASE("bcast_direct copies the root component everywhere") {
  Machine m3(3, Backend::sequential);
  auto v = m3.run([](Ctx& ctx) {
    auto src = mkpar(ctx, [](ProcId i) -> int { return 10 * (i + 1); });  // <10,20,30>
    return bcast_direct(ctx, 0, src);
  });
  CHECK(observe::all(v) == std::vector<int>{10, 10, 10});

  for (Backend be : kBackends) {
    CAPTURE(to_string(be));
    Machine m(4, be);
    auto w = m.run([](Ctx& ctx) {
      return bcast_direct(ctx, 2, mkpar(ctx, [](ProcId i) -> int { return i; }));
    });
    CHECK(observe::all(w) == std::vector<int>{2, 2, 2, 2});

    CHECK_THROWS_AS((void)m.run([](Ctx& ctx) {
                      auto src = mkpar(ctx, [](ProcId i) -> int { return i; });
                      return bcast_direct(ctx, ctx.nprocs(), src);
                    }),
                    bcast_error);
    CHECK_THROWS_AS((void)m.run([](Ctx& ctx) {
                      auto src = mkpar(ctx, [](ProcId i) -> int { return i; });
                      return bcast_direct(ctx, -1, src);
                    }),
                    bcast_error);
  }
}

TEST_CASE("broadcast payload comes from the root only") {
  Machine m(4, Backend::concurrent);
  Trace trace;
  (void)m.run(
      [](Ctx& ctx) {
        return bcast_direct(ctx, 1, mkpar(ctx, [](ProcId i) -> int { return i * i; }));
      },
      trace);
  auto records = trace.records();
  REQUIRE(records.size() == 1);
  CHECK(records[0].op == "put");
  for (int src = 0; src < 4; ++src) {
    for (int dst = 0; dst < 4; ++dst) {
      const std::size_t expected = (src == 1 && dst != 1) ? 1 : 0;
      CHECK(records[0].sent(src, dst) == expected);
    }
  }
}

TEST_CASE("shift rotates components") {
  Machine m(3, Backend::sequential);
  // <a,b,c> with offset 1 becomes <c,a,b>; the modular pick is enumerated below
  const std::vector<int> plain{100, 200, 300};
  auto rotated = m.run([](Ctx& ctx) {
    auto v = mkpar(ctx, [](ProcId i) -> int { return 100 * (i + 1); });
    return shift(ctx, 1, v);
  });
  std::vector<int> expected(3);
  for (int i = 0; i < 3; ++i) expected[static_cast<std::size_t>(i)] = plain[static_cast<std::size_t>(((i - 1) % 3 + 3) % 3)];
  CHECK(expected == std::vector<int>{300, 100, 200});
  CHECK(observe::all(rotated) == expected);

  for (Backend be : kBackends) {
    Machine m4(4, be);
    auto same = m4.run([](Ctx& ctx) {
      auto v = mkpar(ctx, [](ProcId i) -> int { return 7 * i; });
      return std::make_pair(shift(ctx, 0, v), v);
    });
    CHECK(observe::equal(same.first, same.second));

    auto full = m4.run([](Ctx& ctx) {
      auto v = mkpar(ctx, [](ProcId i) -> int { return 7 * i; });
      return std::make_pair(shift(ctx, ctx.nprocs(), v), v);
    });
    CHECK(observe::equal(full.first, full.second));
  }
}

TEST_CASE("shift_right and shift_left are unit rotations") {
  Machine m(4, Backend::sequential);
  auto both = m.run([](Ctx& ctx) {
    auto v = mkpar(ctx, [](ProcId i) -> int { return i; });
    return std::make_pair(shift_right(ctx, v), shift_left(ctx, v));
  });
  CHECK(observe::all(both.first) == std::vector<int>{3, 0, 1, 2});
  CHECK(observe::all(both.second) == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("bounded shift fills uncovered processors with the default") {
  Machine m(4, Backend::sequential);
  auto v = m.run([](Ctx& ctx) {
    auto src = mkpar(ctx, [](ProcId i) -> int { return i + 1; });
    return shift(ctx, 2, [](ProcId dst) -> int { return -static_cast<int>(dst); }, src);
  });
  CHECK(observe::all(v) == std::vector<int>{0, -1, 1, 2});
}

TEST_CASE("unwrap rejects the empty message") {
  CHECK(unwrap(std::optional<int>(3)) == 3);
  CHECK_THROWS_AS((void)unwrap(std::optional<int>()), precondition_error);
}

TEST_CASE("library conversions each cost one superstep") {
  for (Backend be : kBackends) {
    CAPTURE(to_string(be));
    Machine m(4, be);
    Trace trace;
    (void)m.run(
        [](Ctx& ctx) { return list_of_par(ctx, mkpar(ctx, [](ProcId i) -> int { return i; })); },
        trace);
    CHECK(trace.supersteps() == 1);
    (void)m.run(
        [](Ctx& ctx) {
          return bcast_direct(ctx, 0, mkpar(ctx, [](ProcId i) -> int { return i; }));
        },
        trace);
    CHECK(trace.supersteps() == 1);
    (void)m.run(
        [](Ctx& ctx) { return shift(ctx, -3, mkpar(ctx, [](ProcId i) -> int { return i; })); },
        trace);
    CHECK(trace.supersteps() == 1);
  }
}
