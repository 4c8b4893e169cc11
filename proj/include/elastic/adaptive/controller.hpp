#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "elastic/core/error.hpp"

namespace elastic::adaptive {

struct Parameters {
  int split_factor = 200;
  std::uint64_t iters = 50'000;

  bool operator==(const Parameters&) const = default;
};

enum class Direction { Rise, Fall };

/// Fires once the active-task count goes above (rise) or below (fall) the threshold.
struct Stage {
  Direction direction = Direction::Rise;
  std::int64_t threshold = 0;
  Parameters params;

  bool operator==(const Stage&) const = default;
};

struct AdaptiveSchedule {
  Parameters initial;
  std::vector<Stage> stages;

  bool operator==(const AdaptiveSchedule&) const = default;
};

/// Four-stage schedule for a concurrency cap of 2,000: wide splits with short
/// tasks while ramping up, long tasks with narrow splits at high concurrency,
/// and shorter tasks again while draining. Thresholds scale linearly with the cap.
inline AdaptiveSchedule default_schedule_for(std::size_t max_concurrency) {
  require(max_concurrency >= 1, "max_concurrency must be >= 1");
  const double scale = static_cast<double>(max_concurrency) / 2000.0;
  auto at = [&](double t) { return static_cast<std::int64_t>(std::llround(t * scale)); };
  AdaptiveSchedule s;
  s.initial = {200, 50'000};
  s.stages = {
      {Direction::Rise, at(800), {50, 2'500'000}},
      {Direction::Rise, at(1300), {5, 5'000'000}},
      {Direction::Fall, at(1100), {5, 2'500'000}},
      {Direction::Fall, at(100), {5, 1'000'000}},
  };
  return s;
}

/// Stage walker driven by the master loop after each collected bag. Stages
/// fire strictly in order and at most once; every stage whose condition holds
/// fires in the same call, so a count that jumps past several thresholds
/// between two checks still triggers each of them.
class Controller {
 public:
  explicit Controller(AdaptiveSchedule schedule)
      : schedule_(std::move(schedule)), current_(schedule_.initial) {}

  Parameters on_completion(std::int64_t active) {
    while (next_ < schedule_.stages.size()) {
      const Stage& st = schedule_.stages[next_];
      const bool fire = st.direction == Direction::Rise ? active > st.threshold : active < st.threshold;
      if (!fire) break;
      current_ = st.params;
      ++next_;
    }
    return current_;
  }

  const Parameters& current() const { return current_; }
  std::size_t fired() const { return next_; }
  const AdaptiveSchedule& schedule() const { return schedule_; }

 private:
  AdaptiveSchedule schedule_;
  Parameters current_;
  std::size_t next_ = 0;
};

}  // namespace elastic::adaptive
