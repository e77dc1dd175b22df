#include <doctest.h>

#include <limits>

#include "bsml/checks/random.hpp"
#include "bsml/seq.hpp"

using namespace bsml;
using seq::List;

TEST_CASE("max2 picks the larger argument") {
  CHECK(seq::max2(3, 5) == 5);
  CHECK(seq::max2(7, 7) == 7);
  CHECK(seq::max2(-2, -7) == -2);
}

TEST_CASE("maximum of a nonempty list") {
  CHECK(seq::maximum(List<int>{7}) == 7);

  // independent linear-scan oracle for the multi-element case
  const List<int> l{1, 5, 3};
  int expected = l[0];
  for (int x : l) expected = x > expected ? x : expected;
  CHECK(expected == 5);
  CHECK(seq::maximum(l) == 5);
}

TEST_CASE("maximum of the empty list is a precondition error") {
  CHECK_THROWS_AS((void)seq::maximum(List<int>{}), precondition_error);
}

TEST_CASE("map") {
  auto succ = [](const int& x) { return x + 1; };
  CHECK(seq::map(succ, List<int>{0, 1}) == List<int>{1, 2});
  CHECK(seq::map(succ, List<int>{}).empty());
  const List<int> l{4, -2, 9};
  CHECK(seq::map([](const int& x) { return x; }, l) == l);
}

TEST_CASE("fold_left") {
  auto add = [](long long a, const long long& b) { return a + b; };
  CHECK(seq::fold_left(add, 0LL, List<long long>{1, 2, 3}) == 6);
  CHECK(seq::fold_left(add, 42LL, List<long long>{}) == 42);
  const auto sentinel = std::numeric_limits<long long>::min();
  CHECK(seq::fold_left([](long long a, const long long& b) { return seq::max2(a, b); }, sentinel,
                       List<long long>{1, 5, 3}) == 5);
}

TEST_CASE("flatten") {
  CHECK(seq::flatten(List<List<int>>{{1, 2}, {3}}) == List<int>{1, 2, 3});
  CHECK(seq::flatten(List<List<int>>{{}, {}, {}}).empty());
  const List<int> l{5, 6, 7};
  CHECK(seq::flatten(seq::map([](const int& x) { return List<int>{x}; }, l)) == l);
}

TEST_CASE("from_to and init") {
  CHECK(seq::from_to(0, 3) == List<int>{0, 1, 2, 3});
  CHECK(seq::from_to(2, 1).empty());
  CHECK(seq::init(3, [](int i) { return i * i; }) == List<int>{0, 1, 4});
  CHECK(seq::init(0, [](int i) { return i; }).empty());
  CHECK_THROWS_AS((void)seq::init(-1, [](int i) { return i; }), precondition_error);
}

TEST_CASE("nth is domain checked") {
  const List<int> l{10, 20};
  CHECK(seq::nth(l, 0) == 10);
  CHECK(seq::nth(l, 1) == 20);
  CHECK_THROWS_AS((void)seq::nth(l, 2), domain_error);
  CHECK_THROWS_AS((void)seq::nth(List<int>{}, 0), domain_error);
}

TEST_CASE("list law: map commutes with flatten") {
  checks::Rng rng(2024);
  auto f = [](const long long& x) { return 3 * x - 1; };
  for (int round = 0; round < 200; ++round) {
    List<List<long long>> ll;
    const int outer = rng.irange(0, 5);
    for (int i = 0; i < outer; ++i) ll.push_back(checks::random_list(rng, 6, -20, 20));
    auto lhs = seq::map(f, seq::flatten(ll));
    auto rhs = seq::flatten(
        seq::map([&f](const List<long long>& inner) { return seq::map(f, inner); }, ll));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("list law: maximum agrees with folding max2 over the tail") {
  checks::Rng rng(77);
  for (int round = 0; round < 200; ++round) {
    auto l = checks::random_list(rng, 12, -50, 50);
    l.push_back(rng.range(-50, 50));  // nonempty
    const List<long long> tail(l.begin() + 1, l.end());
    REQUIRE(seq::maximum(l) ==
            seq::fold_left([](long long a, const long long& b) { return seq::max2(a, b); },
                           l.front(), tail));
  }
}

TEST_CASE("list law: nth of map is f of nth") {
  checks::Rng rng(99);
  auto f = [](const long long& x) { return x * x - 4; };
  for (int round = 0; round < 200; ++round) {
    auto l = checks::random_list(rng, 10, -30, 30);
    const auto mapped = seq::map(f, l);
    for (std::size_t i = 0; i < l.size(); ++i) REQUIRE(seq::nth(mapped, i) == f(seq::nth(l, i)));
  }
}

TEST_CASE("list law: fold over a concatenation stages through the prefix") {
  checks::Rng rng(13);
  auto op = [](long long a, const long long& b) { return 2 * a - b; };  // deliberately lopsided
  for (int round = 0; round < 200; ++round) {
    const auto l1 = checks::random_list(rng, 8, -9, 9);
    const auto l2 = checks::random_list(rng, 8, -9, 9);
    const long long whole = seq::fold_left(op, 1LL, seq::concat(l1, l2));
    const long long staged = seq::fold_left(op, seq::fold_left(op, 1LL, l1), l2);
    REQUIRE(whole == staged);
  }
}
