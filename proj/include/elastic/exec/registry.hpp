#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <utility>

#include "elastic/core/error.hpp"
#include "elastic/exec/task.hpp"

namespace elastic {

using PayloadView = std::span<const std::uint8_t>;

struct TaskHandler {
  /// Throws UNDECODABLE_PAYLOAD when the payload cannot be decoded.
  std::function<void(PayloadView)> validate;
  std::function<Bytes(PayloadView)> run;
};

/// Maps each TaskKind to its handler. Executors look handlers up here; the
/// registry itself is immutable once an executor starts using it.
class TaskRegistry {
 public:
  /// Registry with the built-in echo/noop/fail/sleep kinds.
  TaskRegistry() {
    set(TaskKind::Echo, {[](PayloadView) {}, [](PayloadView p) { return Bytes(p.begin(), p.end()); }});
    set(TaskKind::Noop, {[](PayloadView) {}, [](PayloadView) { return Bytes{}; }});
    set(TaskKind::Fail, {[](PayloadView) {},
                         [](PayloadView p) -> Bytes {
                           throw std::runtime_error(to_string(p));
                         }});
    set(TaskKind::Sleep, {[](PayloadView p) { (void)decode<double>(p); },
                          [](PayloadView p) {
                            std::this_thread::sleep_for(
                                std::chrono::duration<double, std::milli>(decode<double>(p)));
                            return Bytes{};
                          }});
  }

  void set(TaskKind kind, TaskHandler handler) {
    handlers_[static_cast<std::size_t>(kind)] = std::move(handler);
  }

  bool has(TaskKind kind) const {
    return static_cast<bool>(handlers_[static_cast<std::size_t>(kind)].run);
  }

  void validate(const Task& task) const {
    if (!has(task.kind))
      throw Error(Errc::UndecodablePayload,
                  "no handler registered for kind " + std::string(to_string(task.kind)));
    handlers_[static_cast<std::size_t>(task.kind)].validate(task.payload);
  }

  Bytes run(const Task& task) const {
    if (!has(task.kind))
      throw Error(Errc::UndecodablePayload,
                  "no handler registered for kind " + std::string(to_string(task.kind)));
    return handlers_[static_cast<std::size_t>(task.kind)].run(task.payload);
  }

 private:
  std::array<TaskHandler, kTaskKindCount> handlers_;
};

struct BodyOutcome {
  std::optional<Bytes> result;
  std::optional<Error> error;
};

/// Runs a task body, converting anything it throws into TASK_FAILED with the
/// original code (when it has one) as the cause.
inline BodyOutcome run_body(const TaskRegistry& registry, const Task& task) {
  try {
    return {registry.run(task), std::nullopt};
  } catch (const Error& e) {
    return {std::nullopt, Error(Errc::TaskFailed, e.what(), e.code())};
  } catch (const std::exception& e) {
    return {std::nullopt, Error(Errc::TaskFailed, e.what(), std::nullopt)};
  }
}

}  // namespace elastic
