#pragma once

#include <cmath>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <vector>

#include "elastic/core/error.hpp"

namespace elastic::faas {

/// Provider model. Defaults: 1,000 concurrent executions and 10,000
/// invocations/s (provider limits), 13 ms invocation overhead, 1,792 MB (one
/// full vCPU). The 200 ms cold start is an arbitrary default; report the value
/// used with every experiment.
struct FaasConfig {
  std::size_t provider_concurrency_limit = 1'000;
  double rate_limit = 10'000.0;
  double invocation_overhead_ms = 13.0;
  double cold_start_ms = 200.0;
  std::int64_t memory_mb = 1'792;
  std::int64_t billing_quantum_ms = 1;
  double container_keepalive_ms = 600'000.0;

  void validate() const {
    require(provider_concurrency_limit >= 1, "provider_concurrency_limit must be >= 1");
    require(rate_limit > 0.0, "rate_limit must be > 0");
    require(invocation_overhead_ms >= 0.0, "invocation_overhead_ms must be >= 0");
    require(cold_start_ms >= 0.0, "cold_start_ms must be >= 0");
    require(memory_mb > 0, "memory_mb must be > 0");
    require(billing_quantum_ms >= 1, "billing_quantum_ms must be >= 1");
    require(container_keepalive_ms >= 0.0, "container_keepalive_ms must be >= 0");
  }
};

/// Billed duration: elapsed time rounded up to the quantum, never less than
/// one quantum.
inline std::int64_t bill(double start_ms, double end_ms, std::int64_t quantum_ms) {
  require(end_ms >= start_ms, "bill: end before start");
  require(quantum_ms >= 1, "bill: quantum must be >= 1 ms");
  const double q = static_cast<double>(quantum_ms);
  auto quanta = static_cast<std::int64_t>(std::ceil((end_ms - start_ms) / q));
  if (quanta < 1) quanta = 1;
  return quanta * quantum_ms;
}

struct BillingRecord {
  std::uint64_t invocation_id = 0;
  double start_ms = 0.0;
  double end_ms = 0.0;
  std::int64_t billed_ms = 0;
  std::int64_t memory_mb = 0;
  bool cold_start = false;
};

class BillingLedger {
 public:
  void record(const BillingRecord& r) {
    std::lock_guard lock(mu_);
    records_.push_back(r);
  }

  std::vector<BillingRecord> snapshot() const {
    std::lock_guard lock(mu_);
    return records_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<BillingRecord> records_;
};

inline void write_billing_csv(std::ostream& os, const std::vector<BillingRecord>& records) {
  os << "invocation_id,start_ms,end_ms,billed_ms,memory_mb,cold_start\n";
  for (const auto& r : records) {
    os << r.invocation_id << ',' << static_cast<std::int64_t>(std::floor(r.start_ms)) << ','
       << static_cast<std::int64_t>(std::floor(r.end_ms)) << ',' << r.billed_ms << ','
       << r.memory_mb << ',' << (r.cold_start ? 1 : 0) << '\n';
  }
}

}  // namespace elastic::faas
