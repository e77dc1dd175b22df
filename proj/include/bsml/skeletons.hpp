#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bsml/stdlib.hpp"

namespace bsml {

/// A list spread over the machine: each processor holds one contiguous chunk,
/// any of which may be empty. The denoted list is the concatenation of the
/// chunks in processor order.
template <typename T>
using DistList = ParVector<seq::List<T>>;

/// A binary operation with a candidate neutral element, restricted to the
/// values satisfying an invariant. The reduction skeleton assumes op is
/// associative and e neutral on that domain only; checked mode samples the
/// laws at run time instead of trusting the caller.
template <typename T>
struct AlgebraSpec {
  std::function<T(const T&, const T&)> op;
  T neutral;
  std::function<bool(const T&)> inv = [](const T&) { return true; };
};

/// Whether reduction validates its algebra by sampling before folding.
enum class ContractChecks { off, on };

inline ContractChecks default_contract_checks() {
#ifdef BSML_CHECKED
  return ContractChecks::on;
#else
  return ContractChecks::off;
#endif
}

namespace detail {

template <typename T>
concept Streamable = requires(std::ostream& os, const T& t) { os << t; };

template <typename T>
std::string format_value(const T& value) {
  if constexpr (Streamable<T>) {
    std::ostringstream os;
    os << value;
    return os.str();
  } else {
    return "<value>";
  }
}

// Bounded deterministic sampling of the algebra laws over a candidate pool.
inline constexpr std::size_t kExhaustivePool = 12;
inline constexpr int kSampledTriples = 256;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
void check_triple(const AlgebraSpec<T>& spec, const T& x, const T& y, const T& z,
                  const char* where) {
  T left = spec.op(spec.op(x, y), z);
  T right = spec.op(x, spec.op(y, z));
  if (!(left == right)) {
    throw contract_error(std::string("algebra violation (") + where +
                         "): op is not associative at x=" + format_value(x) +
                         " y=" + format_value(y) + " z=" + format_value(z) +
                         ": (x op y) op z = " + format_value(left) +
                         " but x op (y op z) = " + format_value(right));
  }
}

template <typename T>
void check_pair(const AlgebraSpec<T>& spec, const T& x, const T& y, const char* where) {
  if (!spec.inv(spec.op(x, y))) {
    throw contract_error(std::string("algebra violation (") + where +
                         "): op does not preserve the invariant at x=" + format_value(x) +
                         " y=" + format_value(y) + ", op(x,y)=" + format_value(spec.op(x, y)));
  }
}

}  // namespace detail

/// Samples the algebra laws over the neutral element and the given values:
/// every value must satisfy the invariant, the neutral element must satisfy
/// it and be neutral, op must preserve the invariant and be associative on
/// the pool. Small pools are checked exhaustively, larger ones by a
/// deterministic sample. Throws contract_error with a witness on violation.
template <typename T>
void validate_algebra(const AlgebraSpec<T>& spec, const seq::List<T>& values,
                      const char* where = "reduce") {
  static_assert(std::equality_comparable<T>, "checked algebras need value equality");

  if (!spec.inv(spec.neutral)) {
    throw contract_error(std::string("algebra violation (") + where +
                         "): neutral element " + detail::format_value(spec.neutral) +
                         " fails the invariant");
  }
  for (const T& x : values) {
    if (!spec.inv(x)) {
      throw contract_error(std::string("algebra violation (") + where + "): element " +
                           detail::format_value(x) + " fails the invariant");
    }
  }

  seq::List<T> pool;
  pool.reserve(values.size() + 1);
  pool.push_back(spec.neutral);
  for (const T& x : values) pool.push_back(x);

  for (const T& x : pool) {
    if (!(spec.op(spec.neutral, x) == x) || !(spec.op(x, spec.neutral) == x)) {
      throw contract_error(std::string("algebra violation (") + where + "): " +
                           detail::format_value(spec.neutral) + " is not neutral at x=" +
                           detail::format_value(x));
    }
  }

  const std::size_t n = pool.size();
  const std::size_t head = n < detail::kExhaustivePool ? n : detail::kExhaustivePool;
  for (std::size_t i = 0; i < head; ++i) {
    for (std::size_t j = 0; j < head; ++j) {
      detail::check_pair(spec, pool[i], pool[j], where);
      for (std::size_t k = 0; k < head; ++k) {
        detail::check_triple(spec, pool[i], pool[j], pool[k], where);
      }
    }
  }
  if (n > head) {
    std::uint64_t state = 0x2545f4914f6cdd1dULL;
    for (int s = 0; s < detail::kSampledTriples; ++s) {
      const std::size_t i = detail::mix64(state++) % n;
      const std::size_t j = detail::mix64(state++) % n;
      const std::size_t k = detail::mix64(state++) % n;
      detail::check_pair(spec, pool[i], pool[j], where);
      detail::check_triple(spec, pool[i], pool[j], pool[k], where);
    }
  }
}

/// How distribute carves a list into per-processor chunks. Both built-in
/// policies produce contiguous slices (anything else would break the
/// concatenation order that reduction relies on); block hands out the
/// ceil-sized prefixes first, round_robin derives the same balanced sizes by
/// dealing indices cyclically.
enum class Policy { block, round_robin };

namespace detail {

inline std::size_t chunk_size(std::size_t n, int p, int i, Policy policy) {
  const std::size_t base = n / static_cast<std::size_t>(p);
  const std::size_t rem = n % static_cast<std::size_t>(p);
  switch (policy) {
    case Policy::block:
      return base + (static_cast<std::size_t>(i) < rem ? 1 : 0);
    case Policy::round_robin: {
      // number of j < n with j mod p == i
      const std::size_t ui = static_cast<std::size_t>(i);
      return ui < n ? (n - ui - 1) / static_cast<std::size_t>(p) + 1 : 0;
    }
  }
  return 0;
}

}  // namespace detail

/// Spreads a list over the machine. The result always concatenates back to
/// the input in processor order.
template <typename T>
DistList<T> distribute(Ctx& ctx, const seq::List<T>& l, Policy policy = Policy::block) {
  const int p = ctx.nprocs();
  return mkpar(ctx, [&l, p, policy](ProcId i) {
    std::size_t begin = 0;
    for (int j = 0; j < i; ++j) begin += detail::chunk_size(l.size(), p, j, policy);
    const std::size_t size = detail::chunk_size(l.size(), p, i, policy);
    return seq::List<T>(l.begin() + static_cast<std::ptrdiff_t>(begin),
                        l.begin() + static_cast<std::ptrdiff_t>(begin + size));
  });
}

/// Explicit placement: chunks[i] goes to processor i. There must be exactly
/// one chunk per processor and they must concatenate to l.
template <typename T>
DistList<T> distribute(Ctx& ctx, const seq::List<T>& l, const seq::List<seq::List<T>>& chunks) {
  if (static_cast<int>(chunks.size()) != ctx.nprocs()) {
    throw precondition_error("explicit distribution needs exactly " +
                             std::to_string(ctx.nprocs()) + " chunks, got " +
                             std::to_string(chunks.size()));
  }
  if (seq::flatten(chunks) != l) {
    throw precondition_error("explicit distribution chunks do not concatenate to the input list");
  }
  return mkpar(ctx, [&chunks](ProcId i) { return chunks[static_cast<std::size_t>(i)]; });
}

/// The list a distributed list denotes. One superstep.
template <typename T>
seq::List<T> to_list(Ctx& ctx, const DistList<T>& dl) {
  return seq::flatten(list_of_par(ctx, dl));
}

/// Parallel map over a distributed list; purely local, no communication.
/// Denotes the sequential map: to_list(map_par(f, dl)) = map(f, to_list(dl)).
template <typename F, typename A>
auto map_par(Ctx& ctx, F f, const DistList<A>& dl) {
  return parfun(
      ctx, [f](const seq::List<A>& chunk) { return seq::map(f, chunk); }, dl);
}

/// Parallel reduction: each processor folds its chunk, the partial results
/// are gathered and folded again, in processor order. Denotes the sequential
/// fold of the concatenation, provided op is associative and e neutral on the
/// invariant domain; exactly one communication superstep. In checked mode the
/// algebra is sampled before each fold and violations raise contract_error.
template <typename T>
T reduce_par(Ctx& ctx, const AlgebraSpec<T>& spec, const DistList<T>& dl,
             ContractChecks checks = default_contract_checks()) {
  auto local = parfun(
      ctx,
      [&spec, checks](const seq::List<T>& chunk) {
        if (checks == ContractChecks::on) validate_algebra(spec, chunk, "reduce, local phase");
        return seq::fold_left(spec.op, spec.neutral, chunk);
      },
      dl);
  seq::List<T> partials = list_of_par(ctx, local);
  if (checks == ContractChecks::on) validate_algebra(spec, partials, "reduce, gather phase");
  return seq::fold_left(spec.op, spec.neutral, partials);
}

}  // namespace bsml
