#pragma once

#include <cstdint>
#include <string_view>

#include "elastic/core/bytes.hpp"

namespace elastic {

/// Workload tag. Each kind has exactly one handler in a TaskRegistry.
enum class TaskKind : std::uint8_t {
  Echo,         // returns its payload
  Noop,         // returns an empty result
  Fail,         // raises with the payload as message
  Sleep,        // payload: double milliseconds
  UtsTraverse,  // payload: uts::TraverseRequest
  MandelRect,   // payload: mandel::RectRequest
  BcRange,      // payload: bc::RangeRequest
};

inline constexpr std::size_t kTaskKindCount = 7;

constexpr std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::Echo: return "echo";
    case TaskKind::Noop: return "noop";
    case TaskKind::Fail: return "fail";
    case TaskKind::Sleep: return "sleep";
    case TaskKind::UtsTraverse: return "uts.traverse";
    case TaskKind::MandelRect: return "mandel.rect";
    case TaskKind::BcRange: return "bc.range";
  }
  return "unknown";
}

/// A self-contained unit of work: every input travels by value in the payload.
struct Task {
  TaskKind kind = TaskKind::Noop;
  Bytes payload;

  static Task echo(std::string_view s) { return {TaskKind::Echo, to_bytes(s)}; }
  static Task noop() { return {TaskKind::Noop, {}}; }
  static Task fail(std::string_view message) { return {TaskKind::Fail, to_bytes(message)}; }
  static Task sleep(double ms) { return {TaskKind::Sleep, encode(ms)}; }
};

enum class Lane : std::uint8_t { Local, Serverless };

constexpr std::string_view to_string(Lane lane) {
  return lane == Lane::Local ? "local" : "serverless";
}

}  // namespace elastic
