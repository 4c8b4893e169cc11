#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

namespace elastic::faas {

/// Warm-container bookkeeping. Not synchronized; owners lock around it.
class ContainerPool {
 public:
  explicit ContainerPool(double keepalive_ms) : keepalive_ms_(keepalive_ms) {}

  struct Lease {
    std::uint64_t container_id;
    bool cold_start;
  };

  /// Reuses the least-recently-used warm container, or creates a new one.
  Lease acquire(double now_ms) {
    evict_expired(now_ms);
    ++busy_;
    if (!idle_.empty()) {
      const auto id = idle_.begin()->second;
      idle_.erase(idle_.begin());
      return {id, false};
    }
    ++created_;
    peak_live_ = std::max(peak_live_, live());
    return {next_id_++, true};
  }

  void release(std::uint64_t container_id, double now_ms) {
    --busy_;
    idle_.emplace(now_ms, container_id);
  }

  std::size_t created() const { return created_; }
  std::size_t peak_live() const { return peak_live_; }
  std::size_t live() const { return busy_ + idle_.size(); }

 private:
  void evict_expired(double now_ms) {
    while (!idle_.empty() && idle_.begin()->first + keepalive_ms_ < now_ms) idle_.erase(idle_.begin());
  }

  double keepalive_ms_;
  std::set<std::pair<double, std::uint64_t>> idle_;  // (last use, id)
  std::size_t busy_ = 0;
  std::uint64_t next_id_ = 1;
  std::size_t created_ = 0;
  std::size_t peak_live_ = 0;
};

}  // namespace elastic::faas
