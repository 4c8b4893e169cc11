#pragma once

#include <span>

#include "elastic/core/error.hpp"
#include "elastic/faas/config.hpp"

namespace elastic::metrics {

inline constexpr double kM5XlargeHourly = 0.192;
inline constexpr double kC52xlargeHourly = 0.34;

struct CostParams {
  double lambda_i = 0.0000002;      // $ per invocation
  double lambda_e = 0.0000166667;   // $ per GB-second
  double client_vm_price = kM5XlargeHourly;
  double emr_worker_price = 4.35;
  double emr_master_price = 0.48;
  int emr_workers = 10;

  void validate() const {
    require(lambda_i >= 0 && lambda_e >= 0 && client_vm_price >= 0 && emr_worker_price >= 0 &&
                emr_master_price >= 0,
            "prices must be non-negative");
    require(emr_workers >= 1, "emr_workers must be at least 1");
  }
};

struct CostBreakdown {
  double invocations = 0.0;
  double execution = 0.0;
  double client = 0.0;
  double total = 0.0;
};

inline double gb_seconds(std::span<const faas::BillingRecord> billing) {
  double total = 0.0;
  for (const auto& r : billing) total += (r.memory_mb / 1024.0) * (static_cast<double>(r.billed_ms) / 1000.0);
  return total;
}

inline CostBreakdown cost_serverless(std::span<const faas::BillingRecord> billing, double wall_time_s,
                                     const CostParams& p = {}) {
  require(wall_time_s >= 0.0, "wall time must be non-negative");
  CostBreakdown c;
  c.invocations = p.lambda_i * static_cast<double>(billing.size());
  c.execution = p.lambda_e * gb_seconds(billing);
  c.client = p.client_vm_price / 3600.0 * wall_time_s;
  c.total = c.invocations + c.execution + c.client;
  return c;
}

inline double cost_emr(double wall_time_s, int workers, const CostParams& p = {}) {
  require(workers >= 1, "workers must be at least 1");
  return wall_time_s / 3600.0 * (workers * p.emr_worker_price + p.emr_master_price);
}

enum class CostDenominator { Execution, Total };

inline double price_performance(double throughput, const CostBreakdown& cost,
                                CostDenominator denom = CostDenominator::Execution) {
  const double dollars = denom == CostDenominator::Execution ? cost.execution : cost.total;
  if (dollars <= 0.0) throw Error(Errc::ZeroCost, "cost denominator is zero");
  return throughput / dollars;
}

inline double price_performance(double throughput, double dollars) {
  if (dollars <= 0.0) throw Error(Errc::ZeroCost, "cost denominator is zero");
  return throughput / dollars;
}

}  // namespace elastic::metrics
