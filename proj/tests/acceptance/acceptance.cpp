// Acceptance suite: one PASS/FAIL line per criterion, with the measured values.
//
//   acceptance            run every criterion
//   acceptance 2 3 5      run a subset
//   acceptance --expect-fail 7
//                         still print FAIL for 7 but exit 0 if it is the only failure
//
// Tolerances are fixed in this file. Runs are sized for a single core.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "elastic/elastic.hpp"

using namespace elastic;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void note(const std::string& s) { std::cout << "    " << s << std::endl; }

std::string fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::shared_ptr<TaskRegistry> uts_registry(std::shared_ptr<const uts::SubtreeSizeCache> cache = nullptr) {
  auto reg = std::make_shared<TaskRegistry>();
  uts::register_tasks(*reg, std::move(cache));
  return reg;
}

uts::TreeParams uts_tree(int depth, int split, std::uint64_t iters) {
  uts::TreeParams p;
  p.seed = 19;
  p.b0 = 4.0;
  p.depth_cutoff = depth;
  p.split_factor = split;
  p.iters = iters;
  return p;
}

// ---------------------------------------------------------------------------
// 1. UTS exactness

// Local d=14 run kept for the duration-model fit of criterion 7.
struct RecordedRun {
  uts::UtsRun run;
  std::vector<TraceEvent> trace;
};
std::optional<RecordedRun> recorded_d14;

uts::UtsRun run_local(const uts::TreeParams& p, std::size_t workers, std::vector<TraceEvent>* trace) {
  LocalExecutor ex(workers, uts_registry());
  auto r = uts::run_uts(p, ex);
  ex.shutdown();
  if (trace) *trace = ex.trace().snapshot();
  return r;
}

uts::UtsRun run_serverless(const uts::TreeParams& p, std::size_t gate_size) {
  faas::FaasConfig cfg;  // 13 ms invocation overhead, 200 ms cold start
  auto platform = std::make_shared<faas::FaasPlatform>(cfg, uts_registry());
  ExecutorConfig gate;
  gate.max_concurrency = gate_size;
  ServerlessExecutor ex(gate, platform);
  return uts::run_uts(p, ex);
}

uts::UtsRun run_hybrid(const uts::TreeParams& p, std::size_t pool, std::size_t gate_size) {
  faas::FaasConfig cfg;
  auto platform = std::make_shared<faas::FaasPlatform>(cfg, uts_registry());
  sched::HybridConfig hc;
  hc.local_pool_size = pool;
  hc.serverless.max_concurrency = gate_size;
  auto ex = sched::HybridExecutor::create(hc, platform);
  return uts::run_uts(p, *ex);
}

Verdict criterion_1() {
  Verdict v;
  const std::map<int, std::uint64_t> expected{{14, 1'057'675'516ULL}, {15, 4'230'646'601ULL}};
  for (const auto& [depth, count] : expected) {
    struct Config {
      const char* name;
      int split;
      std::uint64_t iters;
    };
    for (const Config c : {Config{"local(2 workers)", 4, 100'000}, Config{"serverless(gate 32)", 16, 1'000'000},
                           Config{"hybrid(pool 2, gate 16)", 8, 2'000'000}}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto p = uts_tree(depth, c.split, c.iters);
      uts::UtsRun r;
      const std::string name = c.name;
      if (name.starts_with("local")) {
        std::vector<TraceEvent> trace;
        r = run_local(p, 2, depth == 14 ? &trace : nullptr);
        if (depth == 14) recorded_d14 = RecordedRun{r, std::move(trace)};
      } else if (name.starts_with("serverless")) {
        r = run_serverless(p, 32);
      } else {
        r = run_hybrid(p, 2, 16);
      }
      note("d=" + std::to_string(depth) + " " + name + " s=" + std::to_string(c.split) + " n=" +
           std::to_string(c.iters) + ": " + std::to_string(r.node_count) + " nodes, " + std::to_string(r.tasks) +
           " tasks, " + fmt(seconds_since(t0), 1) + " s");
      v.check(r.node_count == count, "d=" + std::to_string(depth) + " " + name);
    }
  }
  v.detail << "d=14 -> 1057675516 and d=15 -> 4230646601 expected; 3 configurations each";
  return v;
}

// ---------------------------------------------------------------------------
// 2. UTS schedule independence

Verdict criterion_2() {
  Verdict v;
  const auto reference = uts::count_sequential(uts_tree(10, 1, 1));
  SplitMix64 rng(derive_seed(2, "acceptance-schedules"));
  std::set<std::uint64_t> counts;
  for (int i = 0; i < 50; ++i) {
    const int split = 1 + static_cast<int>(rng.below(256));
    const std::uint64_t iters = 1000 + rng.below(199'001);
    const std::size_t workers = 1 + rng.below(8);
    const auto r = run_local(uts_tree(10, split, iters), workers, nullptr);
    counts.insert(r.node_count);
    v.check(r.node_count == reference, "s=" + std::to_string(split) + " n=" + std::to_string(iters) +
                                           " w=" + std::to_string(workers));
  }
  v.detail << "50 configurations, distinct counts " << counts.size() << ", sequential count " << reference;
  return v;
}

// ---------------------------------------------------------------------------
// 3. Mariani-Silver vs naive escape time

Verdict criterion_3() {
  Verdict v;
  mandel::MandelParams base;
  base.width = 512;
  base.height = 512;
  base.max_dwell = 10'000;
  const auto naive = mandel::naive_escape_time(base);
  auto reg = std::make_shared<TaskRegistry>();
  mandel::register_tasks(*reg);
  int combos = 0;
  for (int sd : {1, 8, 64}) {
    for (int depth : {0, 3, 5}) {
      auto p = base;
      p.initial_subdivision = sd;
      p.max_depth = depth;
      LocalExecutor ex(2, reg);
      const auto r = mandel::mariani_silver(p, ex);
      std::size_t diff = 0;
      for (std::size_t i = 0; i < naive.dwell.size(); ++i) diff += naive.dwell[i] != r.image.dwell[i];
      v.check(diff == 0, "sd=" + std::to_string(sd) + " depth=" + std::to_string(depth) + " differs in " +
                             std::to_string(diff) + " pixels");
      ++combos;
    }
  }
  v.detail << combos << " (sd, max_depth) combinations pixel-exact at 512x512, max_dwell 10000";
  return v;
}

// ---------------------------------------------------------------------------
// 4. Betweenness centrality vs enumeration oracle

double max_deviation(const bc::BetweennessMap& a, const bc::BetweennessMap& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? worst : INFINITY;
}

Verdict criterion_4() {
  Verdict v;
  SplitMix64 rng(derive_seed(2, "acceptance-graphs"));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    bc::CsrGraph g;
    if (i % 2 == 0) {
      bc::RmatParams p;
      p.scale = 2 + static_cast<int>(rng.below(7));  // 4..256 vertices
      p.edge_factor = 1 + static_cast<int>(rng.below(16));
      p.seed = rng.next();
      g = bc::build_graph(p);
    } else {
      const auto n = static_cast<std::uint32_t>(2 + rng.below(255));
      const double prob = rng.uniform() * 8.0 / n;
      std::vector<bc::Edge> edges;
      for (bc::Vertex a = 0; a < n; ++a)
        for (bc::Vertex b = a + 1; b < n; ++b)
          if (rng.uniform() < prob) edges.emplace_back(a, b);
      g = bc::compress(edges, n);
    }
    const double d = max_deviation(bc::brandes(g), bc::bc_oracle(g));
    worst = std::max(worst, d);
    v.check(d <= 1e-9, "graph " + std::to_string(i) + " deviation " + std::to_string(d));
  }
  {
    std::ostringstream os;
    os << "100 graphs, worst Brandes/oracle deviation " << worst;
    note(os.str());
  }

  bc::RmatParams p;
  p.scale = 10;
  auto reg = std::make_shared<TaskRegistry>();
  bc::register_tasks(*reg);
  std::map<int, bc::BetweennessMap> by_t;
  for (int t : {1, 4, 16}) {
    p.tasks = t;
    LocalExecutor ex(2, reg);
    by_t[t] = bc::run_bc(p, ex).scores;
  }
  const double d4 = max_deviation(by_t[1], by_t[4]);
  const double d16 = max_deviation(by_t[1], by_t[16]);
  v.check(d4 <= 1e-9 && d16 <= 1e-9, "partition invariance");
  v.detail << "oracle deviation max " << worst << " (tol 1e-9); scale-10 T=1 vs T=4 " << d4 << ", vs T=16 " << d16;
  return v;
}

// ---------------------------------------------------------------------------
// 5. Cost arithmetic

Verdict criterion_5() {
  Verdict v;
  const metrics::CostParams prices;
  auto near = [&](double got, double want, const std::string& what) {
    v.check(std::abs(got - want) <= 1e-12, what + " = " + std::to_string(got));
  };
  near(metrics::cost_emr(3600.0, 10, prices), 43.98, "EMR 10 workers");
  near(metrics::cost_emr(3600.0, 5, prices), 22.23, "EMR 5 workers");
  near(metrics::cost_emr(0.0, 10, prices), 0.0, "EMR zero time");

  std::vector<faas::BillingRecord> one_second;
  for (int i = 0; i < 1000; ++i) one_second.push_back({static_cast<std::uint64_t>(i), 0.0, 1000.0, 1000, 1024, false});
  const auto c = metrics::cost_serverless(one_second, 0.0, prices);
  near(c.invocations, 0.0002, "invocation cost");
  near(c.execution, 0.0166667, "execution cost");
  const auto client = metrics::cost_serverless({}, 100.0, prices);
  near(client.client, 0.192 * 100.0 / 3600.0, "client cost");
  near(client.total, client.client, "client-only total");

  // The published 67.84% equals this ratio cut to four significant digits;
  // rounding would give 67.85%.
  const double eff = metrics::parallel_efficiency(907.94, 13.94, 96);
  v.check(std::floor(eff * 1e4) == 6784.0, "parallel efficiency " + std::to_string(eff));
  v.detail << "EMR $43.98/$22.23, lambda costs $0.0002/$0.0166667, efficiency " << fmt(eff * 100, 4)
           << "% (published 67.84%, truncated) - tolerance 1e-12";
  return v;
}

// ---------------------------------------------------------------------------
// 6. Characterization ordering

double c_l(Executor& ex) {
  const auto trace = ex.trace().snapshot();
  return metrics::coefficient_of_variation(metrics::durations(trace)).c_l;
}

Verdict criterion_6() {
  Verdict v;
  std::string series;
  for (int rep = 0; rep < 5; ++rep) {
    LocalExecutor u(1, uts_registry());
    uts::run_uts(uts_tree(13, 4, 100'000), u);
    u.shutdown();

    auto mreg = std::make_shared<TaskRegistry>();
    mandel::register_tasks(*mreg);
    LocalExecutor m(1, mreg);
    mandel::MandelParams mp;
    mp.width = 1024;
    mp.height = 1024;
    mandel::mariani_silver(mp, m);
    m.shutdown();

    auto breg = std::make_shared<TaskRegistry>();
    bc::register_tasks(*breg);
    LocalExecutor b(1, breg);
    bc::RmatParams bp;
    bp.scale = 12;
    bp.tasks = 128;
    bc::run_bc(bp, b);
    b.shutdown();

    const double cu = c_l(u), cm = c_l(m), cb = c_l(b);
    note("run " + std::to_string(rep + 1) + ": c_L mariani " + fmt(cm, 3) + ", uts " + fmt(cu, 3) + ", bc " +
         fmt(cb, 3));
    series += (rep ? "; " : "") + fmt(cm, 2) + ">" + fmt(cu, 2) + ">" + fmt(cb, 2);
    v.check(cm > cu && cu > cb, "ordering in run " + std::to_string(rep + 1));
  }
  v.detail << "Mariani > UTS > BC in 5 runs: " << series;
  return v;
}

// ---------------------------------------------------------------------------
// 7. Adaptive controller vs static grid, synthetic clock

struct SimResult {
  double makespan_ms;
  double gb_seconds;
  std::uint64_t nodes;
  std::uint64_t tasks;
};

SimResult simulate(const uts::TreeParams& p, std::shared_ptr<const uts::SubtreeSizeCache> cache,
                   const uts::DurationFit& fit, adaptive::Controller* controller) {
  ExecutorConfig gate;
  gate.max_concurrency = 2000;
  faas::FaasConfig cfg;
  cfg.invocation_overhead_ms = 13.0;
  cfg.provider_concurrency_limit = 2000;
  faas::SyntheticExecutor ex(gate, cfg, uts_registry(std::move(cache)), uts::traversal_duration(fit));
  const auto r = uts::run_uts(p, ex, controller);
  ex.shutdown();
  const auto billing = ex.billing();
  return {r.wall_ms(), metrics::gb_seconds(billing), r.node_count, r.tasks};
}

Verdict criterion_7() {
  Verdict v;
  if (!recorded_d14) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TraceEvent> trace;
    auto r = run_local(uts_tree(14, 4, 100'000), 2, &trace);
    recorded_d14 = RecordedRun{r, std::move(trace)};
    note("recorded d=14 local trace in " + fmt(seconds_since(t0), 1) + " s");
  }
  const auto fit = uts::fit_duration_model(recorded_d14->run, recorded_d14->trace);
  note("fitted duration: " + fmt(fit.base_ms, 4) + " ms + " + fmt(fit.per_node_ms * 1e6, 2) + " ns/node");

  auto t0 = std::chrono::steady_clock::now();
  auto cache = std::make_shared<const uts::SubtreeSizeCache>(
      uts::SubtreeSizeCache::build(uts_tree(14, 1, 1), 10));
  note("subtree cache: " + std::to_string(cache->entries()) + " entries, total " + std::to_string(cache->total()) +
       ", built in " + fmt(seconds_since(t0), 1) + " s");

  t0 = std::chrono::steady_clock::now();
  std::optional<SimResult> best;
  std::string best_name;
  for (int split : {5, 50, 200}) {
    for (std::uint64_t iters : {50'000ULL, 1'000'000ULL, 5'000'000ULL}) {
      const auto r = simulate(uts_tree(14, split, iters), cache, fit, nullptr);
      const std::string name = "static s=" + std::to_string(split) + " n=" + std::to_string(iters);
      note(name + ": makespan " + fmt(r.makespan_ms, 1) + " ms, " + fmt(r.gb_seconds, 3) + " GB-s, " +
           std::to_string(r.tasks) + " tasks");
      v.check(r.nodes == cache->total(), name + " node count");
      if (!best || r.makespan_ms < best->makespan_ms) {
        best = r;
        best_name = name;
      }
    }
  }
  adaptive::Controller controller(adaptive::default_schedule_for(2000));
  const auto a = simulate(uts_tree(14, 200, 50'000), cache, fit, &controller);
  note("adaptive: makespan " + fmt(a.makespan_ms, 1) + " ms, " + fmt(a.gb_seconds, 3) + " GB-s, " +
       std::to_string(a.tasks) + " tasks, stages fired " + std::to_string(controller.fired()));
  note("simulations took " + fmt(seconds_since(t0), 1) + " s");
  v.check(a.nodes == cache->total(), "adaptive node count");

  const double gain = 1.0 - a.makespan_ms / best->makespan_ms;
  const double cost_ratio = a.gb_seconds / best->gb_seconds;
  v.check(gain >= 0.15, "makespan reduction " + fmt(gain * 100, 1) + "% < 15%");
  v.check(cost_ratio <= 1.05, "GB-s ratio " + fmt(cost_ratio, 3) + " > 1.05");
  v.detail << "adaptive " << fmt(a.makespan_ms, 1) << " ms vs best " << best_name << " " << fmt(best->makespan_ms, 1)
           << " ms (reduction " << fmt(gain * 100, 1) << "%, need >= 15%); GB-s ratio " << fmt(cost_ratio, 3)
           << " (need <= 1.05)";
  return v;
}

// ---------------------------------------------------------------------------
// 8. Simulator contracts

std::string synthetic_replay() {
  ExecutorConfig gate;
  gate.max_concurrency = 64;
  faas::SyntheticExecutor ex(gate, {}, uts_registry(), uts::traversal_duration({0.05, 0.00012}));
  uts::run_uts(uts_tree(10, 8, 20'000), ex);
  ex.shutdown();
  std::ostringstream os;
  write_trace_csv(os, ex.trace().snapshot());
  faas::write_billing_csv(os, ex.billing());
  return os.str();
}

Verdict criterion_8() {
  Verdict v;
  auto registry = std::make_shared<TaskRegistry>();

  // Throttling in the synthetic platform: limit 1000, gate 1000 vs 1001.
  std::size_t throttled_at_cap = 0, throttled_above = 0, colds = 0, peak = 0;
  for (std::size_t gate_size : {1000, 1001}) {
    ExecutorConfig gate;
    gate.max_concurrency = gate_size;
    faas::FaasConfig cfg;
    cfg.provider_concurrency_limit = 1000;
    faas::SyntheticExecutor ex(gate, cfg, registry);
    for (std::size_t i = 0; i < gate_size; ++i) ex.submit(Task::sleep(1000.0));
    ex.shutdown();
    (gate_size == 1000 ? throttled_at_cap : throttled_above) = ex.throttled();
  }
  v.check(throttled_at_cap == 0 && throttled_above == 1, "synthetic throttle boundary");

  // Execute-mode platform: 8 invocations in flight, the 9th is throttled.
  {
    faas::FaasConfig cfg;
    cfg.provider_concurrency_limit = 8;
    cfg.invocation_overhead_ms = 0.0;
    cfg.cold_start_ms = 0.0;
    auto platform = std::make_shared<faas::FaasPlatform>(cfg, registry);
    ExecutorConfig gate;
    gate.max_concurrency = 8;
    ServerlessExecutor ex(gate, platform);
    std::vector<TaskHandle> hs;
    for (int i = 0; i < 8; ++i) hs.push_back(ex.submit(Task::sleep(300.0)));
    while (platform->peak_active() < 8) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    bool ninth_throttled = false;
    try {
      platform->invoke(Task::noop());
    } catch (const Error& e) {
      ninth_throttled = e.code() == Errc::Throttled;
    }
    for (auto& h : hs) h.get();
    v.check(ninth_throttled && platform->throttled() == 1, "execute-mode throttle at cap+1");
  }

  // Cold starts equal peak containers over waves of varying width.
  {
    ExecutorConfig gate;
    gate.max_concurrency = 500;
    faas::SyntheticExecutor ex(gate, {}, registry);
    SplitMix64 rng(11);
    for (int wave = 0; wave < 20; ++wave) {
      const auto width = 1 + rng.below(400);
      std::vector<TaskHandle> hs;
      for (std::uint64_t i = 0; i < width; ++i) hs.push_back(ex.submit(Task::sleep(10.0 + rng.uniform() * 90.0)));
      for (auto& h : hs) h.get();
    }
    ex.shutdown();
    colds = ex.cold_starts();
    peak = ex.peak_containers();
    v.check(colds == peak, "cold starts " + std::to_string(colds) + " != peak containers " + std::to_string(peak));
  }

  const bool identical = synthetic_replay() == synthetic_replay();
  v.check(identical, "synthetic replay differs");

  // Execute-mode overhead of the serverless lane, 13 ms configured.
  faas::FaasConfig cfg;
  auto platform = std::make_shared<faas::FaasPlatform>(cfg, registry);
  ServerlessExecutor ex(ExecutorConfig{}, platform);
  const auto stats = measure_overhead(ex, 5, 200);
  const double rel = stats.mean_ms / 13.0 - 1.0;
  v.check(std::abs(rel) <= 0.10, "overhead mean " + fmt(stats.mean_ms, 3) + " ms");

  v.detail << "throttled at cap " << throttled_at_cap << ", at cap+1 " << throttled_above << "; cold starts " << colds
           << " = peak containers " << peak << "; replay " << (identical ? "identical" : "differs")
           << "; overhead mean " << fmt(stats.mean_ms, 3) << " ms (p50 " << fmt(stats.p50_ms, 3) << ", p95 "
           << fmt(stats.p95_ms, 3) << "), tolerance 13 ms +/- 10%";
  return v;
}

// ---------------------------------------------------------------------------
// 9. Hybrid routing

Verdict criterion_9() {
  Verdict v;
  auto registry = std::make_shared<TaskRegistry>();
  faas::FaasConfig cfg;
  cfg.cold_start_ms = 20.0;

  auto burst = [&](std::size_t pool) {
    auto platform = std::make_shared<faas::FaasPlatform>(cfg, registry);
    sched::HybridConfig hc;
    hc.local_pool_size = pool;
    hc.serverless.max_concurrency = 96;
    auto ex = sched::HybridExecutor::create(hc, platform);
    std::vector<TaskHandle> hs;
    for (int i = 0; i < 64; ++i) hs.push_back(ex->submit(Task::sleep(50.0)));
    for (auto& h : hs) h.get();
    ex->shutdown();
    return ex;
  };

  const auto four = burst(4);
  std::size_t local = 0;
  for (const auto& d : four->decisions()) local += d.lane == Lane::Local;
  v.check(local <= 4, std::to_string(local) + " local tasks with pool 4");
  v.check(four->local().peak_running() <= 4, "local peak above pool size");

  const auto zero = burst(0);
  std::size_t serverless = 0;
  for (const auto& e : zero->trace().snapshot()) serverless += e.lane == Lane::Serverless;
  v.check(serverless == 64, "pool 0 sent " + std::to_string(64 - serverless) + " tasks local");

  std::size_t mismatches = 0;
  for (auto* ex : {four.get(), zero.get()}) {
    std::map<std::uint64_t, Lane> lane;
    for (const auto& e : ex->trace().snapshot()) lane[e.task_id] = e.lane;
    for (const auto& d : ex->decisions()) {
      const auto it = lane.find(d.task_id);
      mismatches += it == lane.end() || it->second != d.lane ||
                    (d.lane == Lane::Local) != sched::queue_empty_and_idle_worker(d.snapshot);
    }
  }
  v.check(mismatches == 0, std::to_string(mismatches) + " trace/decision mismatches");
  v.detail << "pool 4: " << local << "/64 local; pool 0: " << serverless << "/64 serverless; " << mismatches
           << " trace lane mismatches";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, Verdict (*)()>> criteria{
      {1, {"UTS exactness", criterion_1}},
      {2, {"UTS schedule independence", criterion_2}},
      {3, {"Mariani-Silver oracle equality", criterion_3}},
      {4, {"BC oracle equality and partition invariance", criterion_4}},
      {5, {"Cost arithmetic", criterion_5}},
      {6, {"Characterization ordering", criterion_6}},
      {7, {"Adaptive controller benefit", criterion_7}},
      {8, {"Simulator contracts", criterion_8}},
      {9, {"Hybrid routing", criterion_9}},
  };
  std::set<int> selected, expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc)
      expected_failures.insert(std::stoi(argv[++i]));
    else
      selected.insert(std::stoi(arg));
  }
  if (selected.empty())
    for (const auto& [id, _] : criteria) selected.insert(id);

  int failed = 0, unexpected = 0;
  for (const int id : selected) {
    const auto& [name, fn] = criteria.at(id);
    std::cout << "criterion " << id << " (" << name << ") running..." << std::endl;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    bool threw = false;
    try {
      v = fn();
    } catch (const std::exception& e) {
      threw = true;
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failed += !v.pass;
    unexpected += !v.pass && (threw || !expected_failures.contains(id));
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << v.detail.str() << " ("
              << fmt(seconds_since(t0), 1) << " s)" << std::endl;
  }
  std::cout << (selected.size() - failed) << "/" << selected.size() << " criteria passed";
  if (failed > unexpected) std::cout << "; " << failed - unexpected << " known failure(s) tolerated by --expect-fail";
  std::cout << std::endl;
  // A known failure still prints FAIL; only failures nobody has analysed fail the run.
  return unexpected == 0 ? 0 : 1;
}
