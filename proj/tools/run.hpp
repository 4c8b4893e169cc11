#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "elastic/cli/config.hpp"
#include "elastic/elastic.hpp"

namespace elastic::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kConfigError = 1, kWorkloadError = 2, kVerificationFailed = 3 };

struct RunOutcome {
  int exit_code = kOk;
  Json report;
  std::string message;
};

/// Node counts of the seed-19, b0=4 reference trees.
inline std::optional<std::uint64_t> reference_uts_count(const uts::TreeParams& p) {
  if (p.seed != 19 || p.b0 != 4.0) return std::nullopt;
  switch (p.depth_cutoff) {
    case 14: return 1'057'675'516ULL;
    case 15: return 4'230'646'601ULL;
    case 16: return 16'922'208'327ULL;
    case 17: return 67'688'164'184ULL;
    case 18: return 270'751'679'750ULL;
    default: return std::nullopt;
  }
}

inline Json config_json(const RunConfig& config) {
  Json out = Json::object();
  for (const auto& k : key_table()) {
    Json& section = out[k.section];
    std::visit([&](const auto& v) { section[k.key] = v; }, k.get(config));
  }
  return out;
}

namespace detail {

inline std::shared_ptr<TaskRegistry> make_registry(const RunConfig& c) {
  auto reg = std::make_shared<TaskRegistry>();
  if (c.workload == "uts") uts::register_tasks(*reg);
  if (c.workload == "mariani") mandel::register_tasks(*reg);
  if (c.workload == "bc") {
    auto params = c.bc;
    params.seed = c.seed;
    bc::register_tasks(*reg, c.bc_share_graph ? std::make_shared<const bc::CsrGraph>(bc::build_graph(params))
                                              : nullptr);
  }
  return reg;
}

inline faas::DurationModel synthetic_model(const RunConfig& c) {
  const auto& s = c.synthetic;
  if (c.workload == "uts") return uts::traversal_duration({s.uts_base_ms, s.uts_per_node_ms});
  if (c.workload == "mariani") return mandel::rect_duration(s.mariani_base_ms, s.mariani_ns_per_iteration);
  if (c.workload == "bc")
    return [s](const Task& t, const BodyOutcome&) {
      const auto req = decode<bc::RangeRequest>(t.payload);
      return s.bc_base_ms + s.bc_per_source_ms * static_cast<double>(req.end - req.start + 1);
    };
  return faas::sleep_duration;
}

/// Executor plus the billing source of its serverless lane, if any.
struct Backend {
  std::unique_ptr<Executor> executor;
  std::shared_ptr<faas::FaasPlatform> platform;
  faas::SyntheticExecutor* synthetic = nullptr;

  std::optional<std::vector<faas::BillingRecord>> billing() const {
    if (synthetic) return synthetic->billing();
    if (platform) return platform->billing();
    return std::nullopt;
  }
  std::size_t cold_starts() const {
    if (synthetic) return synthetic->cold_starts();
    return platform ? platform->cold_starts() : 0;
  }
};

inline Backend make_backend(const RunConfig& c) {
  auto registry = make_registry(c);
  Backend b;
  if (c.executor == "local") {
    b.executor = std::make_unique<LocalExecutor>(c.workers, registry);
  } else if (c.mode == "synthetic") {
    auto sim = std::make_unique<faas::SyntheticExecutor>(c.gate, c.faas, registry, synthetic_model(c));
    b.synthetic = sim.get();
    b.executor = std::move(sim);
  } else {
    b.platform = std::make_shared<faas::FaasPlatform>(c.faas, registry);
    if (c.executor == "hybrid") {
      b.executor = sched::HybridExecutor::create({c.workers, c.gate}, b.platform);
    } else {
      b.executor = std::make_unique<ServerlessExecutor>(c.gate, b.platform);
    }
  }
  return b;
}

inline void write_series(const std::filesystem::path& dir, const metrics::CharacterizationReport& r) {
  std::ofstream rate(dir / "rate.csv");
  rate << "bin_start_ms,tasks,tasks_per_s\n";
  for (const auto& b : r.rate_series) rate << b.bin_start_ms << ',' << b.count << ',' << b.tasks_per_s << '\n';
  std::ofstream cdf(dir / "cdf.csv");
  cdf << "duration_ms,fraction\n";
  for (const auto& p : r.cdf_points) cdf << p.duration_ms << ',' << p.fraction << '\n';
  std::ofstream conc(dir / "concurrency.csv");
  conc << "time_ms,in_flight\n";
  for (const auto& p : r.concurrency_series) conc << p.time_ms << ',' << p.in_flight << '\n';
}

}  // namespace detail

/// Runs one workload end to end and writes its artifacts into config.output.
inline RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  try {
    config.validate();
  } catch (const Error& e) {
    return {kConfigError, {}, e.what()};
  }
  const std::filesystem::path dir(config.output);
  std::filesystem::create_directories(dir);

  Json report;
  report["config"] = config_json(config);
  try {
    auto backend = detail::make_backend(config);
    Executor& ex = *backend.executor;
    Json result;
    double work_units = 0.0;
    double wall_ms = 0.0;
    bool verified = true;

    if (config.workload == "uts") {
      std::optional<adaptive::Controller> controller;
      if (config.adaptive) controller.emplace(adaptive::default_schedule_for(config.gate.max_concurrency));
      const auto r = uts::run_uts(config.uts, ex, controller ? &*controller : nullptr);
      work_units = static_cast<double>(r.node_count);
      wall_ms = r.wall_ms();
      result["node_count"] = r.node_count;
      result["tasks"] = r.tasks;
      result["peak_active"] = r.peak_active;
      if (controller) result["adaptive_stages_fired"] = controller->fired();
      if (config.check_oracle) {
        const auto expected = reference_uts_count(config.uts).value_or(uts::count_sequential(config.uts));
        result["expected_node_count"] = expected;
        verified = expected == r.node_count;
      }
    } else if (config.workload == "mariani") {
      const auto r = mandel::mariani_silver(config.mariani, ex);
      work_units = static_cast<double>(r.image.dwell.size());
      wall_ms = r.wall_ms();
      result["pixels"] = r.image.dwell.size();
      result["tasks"] = r.tasks;
      result["fills"] = r.fills;
      result["dwell_arrays"] = r.arrays;
      result["splits"] = r.splits;
      result["dwell_evaluations"] = r.evaluations;
      std::ofstream pgm(dir / "image.pgm", std::ios::binary);
      mandel::write_pgm(pgm, r.image);
      if (config.check_oracle) {
        const auto naive = mandel::naive_escape_time(config.mariani);
        std::uint64_t mismatched = 0;
        for (std::size_t i = 0; i < naive.dwell.size(); ++i) mismatched += naive.dwell[i] != r.image.dwell[i];
        result["oracle_mismatched_pixels"] = mismatched;
        verified = mismatched == 0;
      }
    } else if (config.workload == "bc") {
      auto params = config.bc;
      params.seed = config.seed;
      const auto r = bc::run_bc(params, ex);
      work_units = static_cast<double>(r.sources);
      wall_ms = r.wall_ms();
      result["vertices"] = r.scores.size();
      result["tasks"] = r.tasks;
      result["sources"] = r.sources;
      std::ofstream scores(dir / "scores.csv");
      scores << "vertex,score\n";
      scores.precision(17);
      for (std::size_t v = 0; v < r.scores.size(); ++v) scores << v << ',' << r.scores[v] << '\n';
      if (config.check_oracle) {
        const auto oracle = bc::bc_oracle(bc::build_graph(params));
        double worst = 0.0;
        for (std::size_t v = 0; v < oracle.size(); ++v) worst = std::max(worst, std::abs(oracle[v] - r.scores[v]));
        result["oracle_max_deviation"] = worst;
        verified = worst <= 1e-9;
      }
    } else {
      const double t0 = ex.clock().now_ms();
      const auto s = measure_overhead(ex, config.overhead_warmup, config.overhead_samples);
      wall_ms = ex.clock().now_ms() - t0;
      work_units = static_cast<double>(s.samples);
      result["samples"] = s.samples;
      result["mean_ms"] = s.mean_ms;
      result["p50_ms"] = s.p50_ms;
      result["p95_ms"] = s.p95_ms;
      result["p99_ms"] = s.p99_ms;
      result["max_ms"] = s.max_ms;
    }
    ex.shutdown();

    const auto trace = ex.trace().snapshot();
    {
      std::ofstream csv(dir / "trace.csv");
      write_trace_csv(csv, trace);
    }
    const auto ch = metrics::characterize(trace, work_units, wall_ms, config.bin_ms);
    detail::write_series(dir, ch);
    result["wall_ms"] = wall_ms;
    report["result"] = result;

    Json characterization;
    characterization["tasks"] = trace.size();
    characterization["mu_ms"] = ch.dispersion.mu;
    characterization["sigma_ms"] = ch.dispersion.sigma;
    characterization["c_l"] = ch.dispersion.c_l;
    characterization["throughput_per_s"] = ch.throughput;
    characterization["peak_concurrency"] = metrics::peak_concurrency(trace);
    characterization["rate_bins"] = ch.rate_series.size();
    report["characterization"] = characterization;

    const double wall_s = wall_ms / 1000.0;
    Json cost;
    if (const auto billing = backend.billing()) {
      {
        std::ofstream csv(dir / "billing.csv");
        faas::write_billing_csv(csv, *billing);
      }
      const auto c = metrics::cost_serverless(*billing, wall_s, config.cost);
      cost["invocations"] = c.invocations;
      cost["execution"] = c.execution;
      cost["client"] = c.client;
      cost["total"] = c.total;
      cost["invocation_count"] = billing->size();
      cost["gb_seconds"] = metrics::gb_seconds(*billing);
      cost["cold_starts"] = backend.cold_starts();
      const auto denom = config.cost_denominator == "total" ? metrics::CostDenominator::Total
                                                            : metrics::CostDenominator::Execution;
      const double dollars = denom == metrics::CostDenominator::Total ? c.total : c.execution;
      cost["price_performance"] = dollars > 0.0 ? Json(metrics::price_performance(ch.throughput, c, denom)) : Json();
    } else {
      cost["client"] = config.cost.client_vm_price / 3600.0 * wall_s;
    }
    cost["emr_equivalent"] = metrics::cost_emr(wall_s, config.cost.emr_workers, config.cost);
    report["cost"] = cost;

    if (!verified) {
      out.exit_code = kVerificationFailed;
      out.message = "oracle check failed";
    }
  } catch (const Error& e) {
    out.exit_code = e.code() == Errc::CoverageError ? kVerificationFailed : kWorkloadError;
    out.message = e.what();
    report["error"] = e.what();
  }
  report["exit_code"] = out.exit_code;
  out.report = report;
  std::ofstream(dir / "report.json") << report.dump(2) << '\n';
  return out;
}

}  // namespace elastic::cli
