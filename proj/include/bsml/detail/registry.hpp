#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <typeindex>
#include <unordered_map>

#include "bsml/errors.hpp"

namespace bsml::detail {

/// Rendezvous for the concurrent backend. All workers execute the same
/// program, so their k-th allocating primitive call must refer to the same
/// shared object. Each worker keys its calls with a private counter; the
/// first worker to arrive at key k constructs the object, the rest pick it
/// up. An entry is dropped once all parties have fetched it.
///
/// A type mismatch at the same key means the program's control flow diverged
/// between workers (it depended on a local, non-replicated value), which the
/// programming model forbids; this is reported as a usage error.
class AlignedRegistry {
 public:
  explicit AlignedRegistry(int parties) : parties_(parties) {}

  template <typename T, typename Make>
  std::shared_ptr<T> fetch(std::uint64_t key, Make&& make) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      Entry entry{std::static_pointer_cast<void>(make()), std::type_index(typeid(T)), 1};
      auto obj = std::static_pointer_cast<T>(entry.obj);
      if (parties_ > 1) entries_.emplace(key, std::move(entry));
      return obj;
    }
    if (it->second.type != std::type_index(typeid(T))) {
      throw usage_error(
          "parallel program is not replicated: workers disagree on the "
          "sequence of vector-creating operations");
    }
    auto obj = std::static_pointer_cast<T>(it->second.obj);
    if (++it->second.fetched == parties_) entries_.erase(it);
    return obj;
  }

 private:
  struct Entry {
    std::shared_ptr<void> obj;
    std::type_index type;
    int fetched;
  };

  std::mutex mu_;
  std::unordered_map<std::uint64_t, Entry> entries_;
  int parties_;
};

}  // namespace bsml::detail
