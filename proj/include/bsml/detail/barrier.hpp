#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>

namespace bsml::detail {

/// Thrown inside a worker when another worker failed and the run is being
/// torn down. Never escapes Machine::run.
struct run_aborted {};

/// Reusable generation-counting barrier that can be aborted. A plain
/// std::barrier would deadlock the surviving workers when one of them throws
/// before arriving; abort() releases every current and future waiter with
/// run_aborted instead.
class AbortableBarrier {
 public:
  explicit AbortableBarrier(int parties) : parties_(parties) {}

  void arrive_and_wait() {
    std::unique_lock<std::mutex> lock(mu_);
    if (aborted_) throw run_aborted{};
    const std::uint64_t my_generation = generation_;
    if (++arrived_ == parties_) {
      arrived_ = 0;
      ++generation_;
      cv_.notify_all();
      return;
    }
    cv_.wait(lock, [&] { return aborted_ || generation_ != my_generation; });
    if (aborted_ && generation_ == my_generation) throw run_aborted{};
  }

  void abort() {
    std::lock_guard<std::mutex> lock(mu_);
    aborted_ = true;
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int parties_;
  int arrived_ = 0;
  std::uint64_t generation_ = 0;
  bool aborted_ = false;
};

}  // namespace bsml::detail
