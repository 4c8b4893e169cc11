#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <queue>
#include <unordered_map>
#include <vector>

#include "elastic/exec/executor.hpp"
#include "elastic/exec/token_bucket.hpp"
#include "elastic/faas/config.hpp"
#include "elastic/faas/container_pool.hpp"

namespace elastic::faas {

/// Virtual duration, in milliseconds, of a task whose body produced `outcome`.
using DurationModel = std::function<double(const Task&, const BodyOutcome&)>;

/// Sleep tasks last their payload; everything else is instantaneous.
inline double sleep_duration(const Task& task, const BodyOutcome&) {
  return task.kind == TaskKind::Sleep ? decode<double>(task.payload) : 0.0;
}

/// Discrete-event serverless simulator over a virtual clock.
///
/// Task bodies do run (so drivers receive real results) but their cost is
/// given by the DurationModel. The client gate, client pacing, provider
/// limits, cold/warm containers and billing follow the same rules as the
/// execute-mode platform. Single-threaded: the driver advances time by
/// polling its CompletionQueue or awaiting a handle. Events are processed in
/// (time, task id) order, so a run is a pure function of its inputs.
class SyntheticExecutor final : public Executor {
 public:
  SyntheticExecutor(ExecutorConfig gate, FaasConfig faas, std::shared_ptr<const TaskRegistry> registry,
                    DurationModel model = sleep_duration,
                    std::shared_ptr<TraceLog> trace = std::make_shared<TraceLog>())
      : gate_(gate),
        faas_(faas),
        registry_(std::move(registry)),
        model_(std::move(model)),
        trace_(std::move(trace)),
        clock_(std::make_shared<VirtualClock>()),
        pool_(faas.container_keepalive_ms),
        client_bucket_(gate.invocation_rate_limit),
        provider_bucket_(faas.rate_limit) {
    gate_.validate();
    faas_.validate();
  }

  TaskHandle submit(Task task, std::shared_ptr<CompletionQueue> notify = nullptr) override {
    if (stopped_) throw Error(Errc::SubmitAfterShutdown, "synthetic executor is shut down");
    registry_->validate(task);
    auto state = std::make_shared<detail::TaskState>(trace_->next_id());
    state->pump = [this] { return step(); };
    if (notify) notify->set_pump([this] { return step(); });
    pending_.push_back({std::move(task), state, std::move(notify), clock_->now_ms()});
    dispatch();
    return TaskHandle(state);
  }

  /// Runs the simulation to completion.
  void shutdown() override {
    while (step()) {
    }
    stopped_ = true;
  }

  /// Processes the next event. Returns false when no work remains.
  bool step() {
    if (events_.empty()) return false;
    const Event ev = events_.top();
    events_.pop();
    clock_->advance_to(ev.time_ms);
    if (ev.type == EventType::Complete) finish(ev.task_id);
    if (ev.type == EventType::Wake) wake_scheduled_ = false;
    dispatch();
    return true;
  }

  std::vector<BillingRecord> billing() const { return ledger_.snapshot(); }
  std::size_t cold_starts() const { return pool_.created(); }
  std::size_t peak_containers() const { return pool_.peak_live(); }
  std::size_t peak_in_flight() const { return peak_in_flight_; }
  std::size_t throttled() const { return throttled_; }
  /// Task ids in the order their completions were processed.
  const std::vector<std::uint64_t>& completion_order() const { return completion_order_; }

  TraceLog& trace() override { return *trace_; }
  const Clock& clock() const override { return *clock_; }
  double now_ms() const { return clock_->now_ms(); }

 private:
  enum class EventType { Complete = 0, Wake = 1 };

  struct Event {
    double time_ms;
    std::uint64_t task_id;
    EventType type;

    bool operator>(const Event& o) const {
      if (time_ms != o.time_ms) return time_ms > o.time_ms;
      if (task_id != o.task_id) return task_id > o.task_id;
      return type > o.type;
    }
  };

  struct Item {
    Task task;
    std::shared_ptr<detail::TaskState> state;
    std::shared_ptr<CompletionQueue> notify;
    double submit_ms;
  };

  struct Running {
    Item item;
    ContainerPool::Lease lease;
    std::uint64_t invocation_id;
    double start_ms;
    double end_ms;
    BodyOutcome outcome;
  };

  void fail(Item& item, Error error) {
    item.state->complete(std::nullopt, std::move(error), std::nullopt);
    if (item.notify) item.notify->push(TaskHandle(item.state));
  }

  void dispatch() {
    const double now = clock_->now_ms();
    while (!pending_.empty() && in_flight_ < gate_.max_concurrency) {
      if (!client_bucket_.try_take(now)) {
        if (!wake_scheduled_) {
          events_.push({now + client_bucket_.wait_ms(now), 0, EventType::Wake});
          wake_scheduled_ = true;
        }
        return;
      }
      Item item = std::move(pending_.front());
      pending_.pop_front();

      if (provider_active_ >= faas_.provider_concurrency_limit) {
        ++throttled_;
        fail(item, Error(Errc::TaskFailed, "provider concurrency limit reached", Errc::Throttled));
        continue;
      }
      if (!provider_bucket_.try_take(now)) {
        fail(item, Error(Errc::TaskFailed, "provider invocation rate exceeded", Errc::RateLimited));
        continue;
      }

      // A sleep body only stands for elapsed time, which the model supplies.
      BodyOutcome outcome =
          item.task.kind == TaskKind::Sleep ? BodyOutcome{Bytes{}, std::nullopt} : run_body(*registry_, item.task);
      const double duration = model_(item.task, outcome);
      if (!(duration >= 0.0)) {
        fail(item, Error(Errc::TaskFailed, "duration model returned a negative duration",
                         Errc::NegativeDuration));
        continue;
      }

      ++in_flight_;
      ++provider_active_;
      peak_in_flight_ = std::max(peak_in_flight_, in_flight_);
      const auto lease = pool_.acquire(now);
      const double start = now + faas_.invocation_overhead_ms + (lease.cold_start ? faas_.cold_start_ms : 0.0);
      const double end = start + duration;
      const std::uint64_t id = item.state->id;
      events_.push({end, id, EventType::Complete});
      running_.emplace(id, Running{std::move(item), lease, next_invocation_++, start, end, std::move(outcome)});
    }
  }

  void finish(std::uint64_t task_id) {
    auto node = running_.extract(task_id);
    Running& r = node.mapped();
    --in_flight_;
    --provider_active_;
    pool_.release(r.lease.container_id, r.end_ms);

    BillingRecord rec;
    rec.invocation_id = r.invocation_id;
    rec.start_ms = r.start_ms;
    rec.end_ms = r.end_ms;
    rec.billed_ms = bill(r.start_ms, r.end_ms, faas_.billing_quantum_ms);
    rec.memory_mb = faas_.memory_mb;
    rec.cold_start = r.lease.cold_start;
    ledger_.record(rec);

    TraceEvent ev;
    ev.task_id = task_id;
    ev.submit_ms = r.item.submit_ms;
    ev.start_ms = r.start_ms;
    ev.end_ms = r.end_ms;
    ev.lane = Lane::Serverless;
    ev.cold_start = rec.cold_start;
    ev.billed_ms = rec.billed_ms;
    ev.result_bytes = r.outcome.result ? r.outcome.result->size() : 0;
    trace_->record(ev);
    completion_order_.push_back(task_id);

    r.item.state->complete(std::move(r.outcome.result), std::move(r.outcome.error), ev);
    if (r.item.notify) r.item.notify->push(TaskHandle(r.item.state));
  }

  ExecutorConfig gate_;
  FaasConfig faas_;
  std::shared_ptr<const TaskRegistry> registry_;
  DurationModel model_;
  std::shared_ptr<TraceLog> trace_;
  std::shared_ptr<VirtualClock> clock_;

  ContainerPool pool_;
  TokenBucket client_bucket_;
  TokenBucket provider_bucket_;
  std::deque<Item> pending_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::unordered_map<std::uint64_t, Running> running_;
  BillingLedger ledger_;
  std::vector<std::uint64_t> completion_order_;

  std::size_t in_flight_ = 0;
  std::size_t provider_active_ = 0;
  std::size_t peak_in_flight_ = 0;
  std::size_t throttled_ = 0;
  std::uint64_t next_invocation_ = 1;
  bool wake_scheduled_ = false;
  bool stopped_ = false;
};

}  // namespace elastic::faas
