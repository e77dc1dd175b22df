#pragma once

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

namespace bsml {

/// One communication superstep as seen by the tracer: which primitive ran and
/// how many payload-carrying messages went from each source to each
/// destination. Self-deliveries and empty messages are not counted.
struct SuperstepRecord {
  int index = 0;               ///< 0-based position among the run's supersteps
  std::string op;              ///< primitive that paid for the superstep
  int nprocs = 0;
  std::vector<std::size_t> messages;  ///< p*p row-major, [src*p + dst]

  std::size_t sent(int src, int dst) const {
    return messages[static_cast<std::size_t>(src) * nprocs + dst];
  }

  std::size_t total_messages() const {
    std::size_t n = 0;
    for (std::size_t c : messages) n += c;
    return n;
  }
};

/// Collects superstep records for one run. Safe to share with the concurrent
/// backend's workers; records appear in superstep order.
class Trace {
 public:
  void add(SuperstepRecord rec) {
    std::lock_guard<std::mutex> lock(mu_);
    records_.push_back(std::move(rec));
  }

  /// Number of communication supersteps observed so far.
  std::size_t supersteps() const {
    std::lock_guard<std::mutex> lock(mu_);
    return records_.size();
  }

  std::vector<SuperstepRecord> records() const {
    std::lock_guard<std::mutex> lock(mu_);
    return records_;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    records_.clear();
  }

 private:
  mutable std::mutex mu_;
  std::vector<SuperstepRecord> records_;
};

}  // namespace bsml
