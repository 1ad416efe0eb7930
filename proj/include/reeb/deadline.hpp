#pragma once

#include <chrono>
#include <optional>

#include "reeb/error.hpp"

namespace reeb {

// Wall-clock budget for long computations. Checked at loop granularity.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}

  bool expired() const { return end_ && Clock::now() > *end_; }
  void check() const {
    if (expired()) throw Cancelled("deadline exceeded");
  }

 private:
  std::optional<Clock::time_point> end_;
};

inline void check_deadline(const Deadline* d) {
  if (d) d->check();
}

}  // namespace reeb
