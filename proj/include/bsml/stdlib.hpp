#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>

#include "bsml/primitives.hpp"
#include "bsml/seq.hpp"

namespace bsml {

/// Extracts the value of a present optional. Absence is outside the domain;
/// reaching it means a payload that was never sent is being consumed.
template <typename T>
T unwrap(const std::optional<T>& opt) {
  if (!opt.has_value()) throw precondition_error("unwrap of an absent optional value");
  return *opt;
}

/// Vector holding the same value at every processor.
template <typename T>
ParVector<std::decay_t<T>> replicate(Ctx& ctx, T&& x) {
  return mkpar(ctx, [&x](ProcId) { return x; });
}

/// Applies one ordinary function pointwise: parfun(f, v) at i is f(v at i).
template <typename F, typename A>
auto parfun(Ctx& ctx, F f, const ParVector<A>& v) {
  return apply(ctx, replicate(ctx, std::move(f)), v);
}

template <typename F, typename A, typename B>
auto parfun2(Ctx& ctx, F f, const ParVector<A>& va, const ParVector<B>& vb) {
  auto partial = parfun(
      ctx, [f](const A& a) { return [f, a](const B& b) { return f(a, b); }; }, va);
  return apply(ctx, partial, vb);
}

template <typename F, typename A, typename B, typename C>
auto parfun3(Ctx& ctx, F f, const ParVector<A>& va, const ParVector<B>& vb,
             const ParVector<C>& vc) {
  auto partial = parfun(
      ctx,
      [f](const A& a) {
        return [f, a](const B& b) { return [f, a, b](const C& c) { return f(a, b, c); }; };
      },
      va);
  return apply(ctx, apply(ctx, partial, vb), vc);
}

/// The list of all processor identifiers, [0, ..., p-1].
inline seq::List<int> procs(Ctx& ctx) {
  return seq::from_to(0, ctx.nprocs() - 1);
}

/// Global conversion of a vector into the list of its components, in
/// processor order. Built on proj, so it costs one full superstep.
template <typename T>
seq::List<T> list_of_par(Ctx& ctx, const ParVector<T>& v) {
  ProcFn<T> at = proj(ctx, v);
  return seq::map([&at](int i) { return at(i); }, procs(ctx));
}

/// Broadcast of the root processor's component to everyone, as a single
/// direct exchange: only root sends payload, every other processor
/// contributes the empty message. One superstep. An invalid root makes the
/// broadcast meaningless and is reported before any communication.
template <typename T>
ParVector<T> bcast_direct(Ctx& ctx, int root, const ParVector<T>& v) {
  const int p = ctx.nprocs();
  if (root < 0 || root >= p) {
    throw bcast_error("broadcast from invalid root " + std::to_string(root) +
                      " on a machine of " + std::to_string(p) + " processors");
  }
  auto make_msg = mkpar(ctx, [root](ProcId src) {
    const int src_id = src;
    return [src_id, root](const T& x) {
      return [src_id, root, x](ProcId) {
        return src_id == root ? std::optional<T>(x) : std::optional<T>();
      };
    };
  });
  auto to_send = apply(ctx, make_msg, v);
  auto received = put(ctx, to_send);
  auto optional_result = apply(ctx, received, replicate(ctx, root));
  return parfun(ctx, [](const std::optional<T>& m) { return unwrap(m); }, optional_result);
}

namespace detail {

inline int wrap_index(int i, int p) {
  int r = i % p;
  return r < 0 ? r + p : r;
}

/// Common exchange of both shift flavors: every processor sends its component
/// to the one `offset` places up, nothing else.
template <typename T>
auto shift_exchange(Ctx& ctx, int offset, const ParVector<T>& v, bool wrap) {
  const int p = ctx.nprocs();
  auto make_msg = mkpar(ctx, [offset, p, wrap](ProcId src) {
    const int src_id = src;
    return [src_id, offset, p, wrap](const T& x) {
      return [src_id, offset, p, wrap, x](ProcId dst) {
        const int target = wrap ? wrap_index(src_id + offset, p) : src_id + offset;
        return dst == target ? std::optional<T>(x) : std::optional<T>();
      };
    };
  });
  return put(ctx, apply(ctx, make_msg, v));
}

}  // namespace detail

/// Rotation by offset processors (any integer): the component at i moves to
/// (i + offset) mod p. One superstep.
template <typename T>
ParVector<T> shift(Ctx& ctx, int offset, const ParVector<T>& v) {
  const int p = ctx.nprocs();
  auto received = detail::shift_exchange(ctx, offset, v, /*wrap=*/true);
  auto pick = mkpar(ctx, [offset, p](ProcId dst) {
    const int src = detail::wrap_index(dst - offset, p);
    return [src](const ProcFn<std::optional<T>>& from) { return unwrap(from(src)); };
  });
  return apply(ctx, pick, received);
}

/// Non-rotating shift: components falling off the edge are replaced by
/// boundary(i) at the uncovered processors. One superstep.
template <typename T, typename Boundary>
ParVector<T> shift(Ctx& ctx, int offset, Boundary boundary, const ParVector<T>& v) {
  const int p = ctx.nprocs();
  auto received = detail::shift_exchange(ctx, offset, v, /*wrap=*/false);
  auto pick = mkpar(ctx, [offset, p, boundary](ProcId dst) {
    const int src = dst - offset;
    const int dst_id = dst;
    return [src, dst_id, p, boundary](const ProcFn<std::optional<T>>& from) {
      if (src < 0 || src >= p) return boundary(ProcId(dst_id, p));
      return unwrap(from(src));
    };
  });
  return apply(ctx, pick, received);
}

template <typename T>
ParVector<T> shift_right(Ctx& ctx, const ParVector<T>& v) {
  return shift(ctx, 1, v);
}

template <typename T>
ParVector<T> shift_left(Ctx& ctx, const ParVector<T>& v) {
  return shift(ctx, -1, v);
}

}  // namespace bsml
