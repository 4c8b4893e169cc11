#include <gtest/gtest.h>

#include <map>

#include "elastic/sched/hybrid_executor.hpp"

using namespace elastic;
using namespace elastic::sched;

namespace {

std::shared_ptr<faas::FaasPlatform> platform() {
  faas::FaasConfig cfg;
  cfg.invocation_overhead_ms = 1.0;
  cfg.cold_start_ms = 0.0;
  return std::make_shared<faas::FaasPlatform>(cfg, std::make_shared<TaskRegistry>());
}

HybridConfig config(std::size_t pool) {
  HybridConfig c;
  c.local_pool_size = pool;
  c.serverless.max_concurrency = 64;
  return c;
}

}  // namespace

TEST(Predicate, DefaultNeedsEmptyQueueAndIdleWorker) {
  EXPECT_TRUE(queue_empty_and_idle_worker({0, 1}));
  EXPECT_FALSE(queue_empty_and_idle_worker({0, 0}));
  EXPECT_FALSE(queue_empty_and_idle_worker({1, 1}));
  EXPECT_TRUE(queue_empty_only({0, 0}));
}

TEST(Hybrid, BurstOverflowsToServerless) {
  auto ex = HybridExecutor::create(config(4), platform());
  std::vector<TaskHandle> hs;
  for (int i = 0; i < 40; ++i) hs.push_back(ex->submit(Task::sleep(30.0)));
  for (auto& h : hs) h.get();
  ex->shutdown();
  std::size_t local = 0;
  for (const auto& d : ex->decisions()) local += d.lane == Lane::Local;
  EXPECT_LE(local, 4u);
  EXPECT_GE(local, 1u);
  EXPECT_LE(ex->local().peak_running(), 4u);
}

TEST(Hybrid, ZeroPoolRoutesEverythingServerless) {
  auto ex = HybridExecutor::create(config(0), platform());
  for (int i = 0; i < 20; ++i) ex->submit(Task::noop()).get();
  ex->shutdown();
  for (const auto& e : ex->trace().snapshot()) EXPECT_EQ(e.lane, Lane::Serverless);
  EXPECT_EQ(ex->trace().size(), 20u);
}

TEST(Hybrid, IdleLocalLaneTakesSequentialWork) {
  auto ex = HybridExecutor::create(config(2), platform());
  for (int i = 0; i < 10; ++i) ex->submit(Task::noop()).get();
  ex->shutdown();
  for (const auto& d : ex->decisions()) EXPECT_EQ(d.lane, Lane::Local);
}

TEST(Hybrid, TraceLanesMatchRoutingDecisions) {
  auto ex = HybridExecutor::create(config(3), platform());
  std::vector<TaskHandle> hs;
  for (int i = 0; i < 30; ++i) hs.push_back(ex->submit(Task::sleep(i % 3 == 0 ? 20.0 : 1.0)));
  for (auto& h : hs) h.get();
  ex->shutdown();
  std::map<std::uint64_t, Lane> lane;
  for (const auto& e : ex->trace().snapshot()) lane[e.task_id] = e.lane;
  const auto decisions = ex->decisions();
  ASSERT_EQ(decisions.size(), 30u);
  for (const auto& d : decisions) {
    EXPECT_EQ(lane.at(d.task_id), d.lane);
    EXPECT_EQ(d.lane == Lane::Local, queue_empty_and_idle_worker(d.snapshot));
  }
}

TEST(Hybrid, NoServerlessLaneKeepsEverythingLocal) {
  auto trace = std::make_shared<TraceLog>();
  auto local = std::make_unique<LocalExecutor>(2, std::make_shared<TaskRegistry>(),
                                               std::make_shared<SteadyClock>(), trace);
  HybridExecutor ex(std::move(local), nullptr, trace);
  std::vector<TaskHandle> hs;
  for (int i = 0; i < 10; ++i) hs.push_back(ex.submit(Task::sleep(2.0)));
  for (auto& h : hs) h.get();
  for (const auto& d : ex.decisions()) EXPECT_EQ(d.lane, Lane::Local);
}
