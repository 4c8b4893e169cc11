#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elastic {

enum class Errc {
  SubmitAfterShutdown,
  UndecodablePayload,
  TaskFailed,
  ExecutorAborted,
  Throttled,
  RateLimited,
  NegativeDuration,
  VertexOutOfRange,
  GraphTooLarge,
  EmptySample,
  ZeroMean,
  ZeroCost,
  ParseError,
  UnknownKey,
  InvalidArgument,
  CoverageError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::SubmitAfterShutdown: return "SUBMIT_AFTER_SHUTDOWN";
    case Errc::UndecodablePayload: return "UNDECODABLE_PAYLOAD";
    case Errc::TaskFailed: return "TASK_FAILED";
    case Errc::ExecutorAborted: return "EXECUTOR_ABORTED";
    case Errc::Throttled: return "THROTTLED";
    case Errc::RateLimited: return "RATE_LIMITED";
    case Errc::NegativeDuration: return "NEGATIVE_DURATION";
    case Errc::VertexOutOfRange: return "VERTEX_OUT_OF_RANGE";
    case Errc::GraphTooLarge: return "GRAPH_TOO_LARGE";
    case Errc::EmptySample: return "EMPTY_SAMPLE";
    case Errc::ZeroMean: return "ZERO_MEAN";
    case Errc::ZeroCost: return "ZERO_COST";
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::UnknownKey: return "UNKNOWN_KEY";
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::CoverageError: return "COVERAGE_ERROR";
  }
  return "UNKNOWN";
}

/// Exception type used throughout the library. TASK_FAILED errors carry the
/// code and message of the error raised inside the task body as their cause.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Error(Errc code, const std::string& message, std::optional<Errc> cause)
      : Error(code, message) {
    cause_ = cause;
  }

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<Errc> cause() const noexcept { return cause_; }

 private:
  Errc code_;
  std::string detail_;
  std::optional<Errc> cause_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(Errc::InvalidArgument, message);
}

}  // namespace elastic
