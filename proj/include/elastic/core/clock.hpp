#pragma once

#include <chrono>
#include <mutex>

#include "elastic/core/error.hpp"

namespace elastic {

/// Millisecond time source shared by executors and metrics. Timestamps are
/// relative to the clock's origin (run start).
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now_ms() const = 0;
};

class SteadyClock final : public Clock {
 public:
  SteadyClock() : origin_(std::chrono::steady_clock::now()) {}

  double now_ms() const override {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - origin_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point origin_;
};

/// Simulation time. Only moves forward.
class VirtualClock final : public Clock {
 public:
  double now_ms() const override { return now_; }

  void advance_to(double t) {
    if (t < now_) throw Error(Errc::InvalidArgument, "virtual clock cannot move backward");
    now_ = t;
  }

 private:
  double now_ = 0.0;
};

}  // namespace elastic
