#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bsml/errors.hpp"

namespace bsml::seq {

/// Lists are immutable values; structural (componentwise) equality is the
/// library equality, which std::vector already provides.
template <typename T>
using List = std::vector<T>;

/// Larger of two values.
template <typename T>
T max2(const T& x, const T& y) {
  return x < y ? y : x;
}

/// Element at position i; defined iff 0 <= i < length.
template <typename T>
const T& nth(const List<T>& l, std::size_t i) {
  if (i >= l.size()) {
    throw domain_error("nth at " + std::to_string(i) + " on a list of length " +
                       std::to_string(l.size()));
  }
  return l[i];
}

/// Largest value of a nonempty list. The empty list is outside the domain and
/// reported as a precondition error.
template <typename T>
T maximum(const List<T>& l) {
  if (l.empty()) throw precondition_error("maximum of an empty list");
  T best = l.front();
  for (std::size_t i = 1; i < l.size(); ++i) best = max2(best, l[i]);
  return best;
}

template <typename F, typename A>
auto map(F&& f, const List<A>& l) {
  using B = std::decay_t<std::invoke_result_t<F&, const A&>>;
  List<B> out;
  out.reserve(l.size());
  for (const A& x : l) out.push_back(f(x));
  return out;
}

template <typename Op, typename B, typename A>
B fold_left(Op&& op, B acc, const List<A>& l) {
  for (const A& x : l) acc = op(std::move(acc), x);
  return acc;
}

/// Concatenation of all inner lists, preserving order.
template <typename T>
List<T> flatten(const List<List<T>>& ll) {
  List<T> out;
  std::size_t total = 0;
  for (const auto& l : ll) total += l.size();
  out.reserve(total);
  for (const auto& l : ll) out.insert(out.end(), l.begin(), l.end());
  return out;
}

template <typename T>
List<T> concat(List<T> a, const List<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// [f(0), ..., f(n-1)]; n must be non-negative.
template <typename F>
auto init(int n, F&& f) {
  using T = std::decay_t<std::invoke_result_t<F&, int>>;
  if (n < 0) throw precondition_error("init with negative length " + std::to_string(n));
  List<T> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

/// [lo, lo+1, ..., hi], empty when lo > hi.
inline List<int> from_to(int lo, int hi) {
  if (lo > hi) return {};
  return init(hi - lo + 1, [lo](int i) { return lo + i; });
}

template <typename T>
T sum(const List<T>& l) {
  return fold_left([](T a, const T& b) { return a + b; }, T{}, l);
}

}  // namespace bsml::seq
