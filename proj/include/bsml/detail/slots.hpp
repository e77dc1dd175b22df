#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bsml::detail {

/// Backing store of a parallel vector: one slot per processor. Slot i is
/// written exactly once, by the worker owning processor i (or by the
/// sequential driver); reads of foreign slots happen only after a barrier has
/// ordered them behind the writes.
template <typename T>
class Slots {
 public:
  Slots(std::uint64_t machine_id, int extent)
      : machine_id_(machine_id), cells_(static_cast<std::size_t>(extent)) {}

  std::uint64_t machine_id() const { return machine_id_; }
  int extent() const { return static_cast<int>(cells_.size()); }

  template <typename U>
  void put(int i, U&& value) {
    assert(!cells_[static_cast<std::size_t>(i)].has_value());
    cells_[static_cast<std::size_t>(i)].emplace(std::forward<U>(value));
  }

  const T& at(int i) const {
    const auto& cell = cells_[static_cast<std::size_t>(i)];
    assert(cell.has_value());
    return *cell;
  }

 private:
  std::uint64_t machine_id_;
  std::vector<std::optional<T>> cells_;
};

}  // namespace bsml::detail
