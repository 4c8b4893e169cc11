#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "elastic/bc/graph.hpp"
#include "elastic/core/error.hpp"
#include "elastic/exec/executor.hpp"
#include "elastic/faas/config.hpp"
#include "elastic/mandel/escape.hpp"
#include "elastic/metrics/cost.hpp"
#include "elastic/uts/tree.hpp"

namespace elastic::cli {

/// Cost per unit of work used by the synthetic clock, one line per workload.
struct SyntheticCosts {
  double uts_base_ms = 0.05;
  double uts_per_node_ms = 0.00012;
  double mariani_base_ms = 0.05;
  double mariani_ns_per_iteration = 4.0;
  double bc_base_ms = 5.0;         // graph regeneration inside each task
  double bc_per_source_ms = 0.5;
};

struct RunConfig {
  std::string workload = "uts";     // uts | mariani | bc | overhead
  std::string executor = "local";   // local | serverless-sim | hybrid
  std::string mode = "execute";     // execute | synthetic
  std::string output = "out";
  std::uint64_t seed = 2;           // R-MAT seed; sub-seeds are derived from it by name
  std::size_t workers = 4;          // local executor threads, hybrid local pool
  bool check_oracle = false;
  double bin_ms = 1000.0;

  ExecutorConfig gate{};
  faas::FaasConfig faas{};
  metrics::CostParams cost{};
  std::string cost_denominator = "execution";  // execution | total

  uts::TreeParams uts{};
  bool adaptive = false;
  mandel::MandelParams mariani{};
  bc::RmatParams bc{};
  bool bc_share_graph = false;
  std::size_t overhead_samples = 100;
  std::size_t overhead_warmup = 5;
  SyntheticCosts synthetic{};

  void validate() const;
};

using Value = std::variant<bool, std::int64_t, double, std::string>;

/// One configurable field, addressed as section.key in files and flags.
struct KeySpec {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<Value(const RunConfig&)> get;

  std::string dotted() const { return section + "." + key; }
};

namespace detail {

[[noreturn]] inline void bad_value(const std::string& what, const std::string& text) {
  throw Error(Errc::ParseError, "invalid " + what + " value '" + text + "'");
}

template <typename T>
T parse_number(const std::string& text) {
  T out{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end) bad_value("numeric", text);
  return out;
}

inline bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_value("boolean", text);
}

template <typename T, typename Access>
KeySpec field(std::string section, std::string key, Access access) {
  KeySpec spec{std::move(section), std::move(key), nullptr, nullptr};
  spec.set = [access](RunConfig& c, const std::string& text) {
    T& ref = access(c);
    if constexpr (std::is_same_v<T, bool>) {
      ref = parse_bool(text);
    } else if constexpr (std::is_same_v<T, std::string>) {
      ref = text;
    } else {
      ref = parse_number<T>(text);
    }
  };
  spec.get = [access](const RunConfig& c) -> Value {
    const T& ref = access(const_cast<RunConfig&>(c));
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string>) {
      return ref;
    } else if constexpr (std::is_floating_point_v<T>) {
      return static_cast<double>(ref);
    } else {
      return static_cast<std::int64_t>(ref);
    }
  };
  return spec;
}

}  // namespace detail

inline const std::vector<KeySpec>& key_table() {
  using detail::field;
  using std::int64_t, std::uint64_t, std::uint32_t, std::size_t, std::string;
  static const std::vector<KeySpec> table = {
      field<string>("run", "workload", [](RunConfig& c) -> auto& { return c.workload; }),
      field<string>("run", "executor", [](RunConfig& c) -> auto& { return c.executor; }),
      field<string>("run", "mode", [](RunConfig& c) -> auto& { return c.mode; }),
      field<string>("run", "output", [](RunConfig& c) -> auto& { return c.output; }),
      field<uint64_t>("run", "seed", [](RunConfig& c) -> auto& { return c.seed; }),
      field<size_t>("run", "workers", [](RunConfig& c) -> auto& { return c.workers; }),
      field<bool>("run", "check_oracle", [](RunConfig& c) -> auto& { return c.check_oracle; }),
      field<double>("run", "bin_ms", [](RunConfig& c) -> auto& { return c.bin_ms; }),

      field<size_t>("faas", "max_concurrency", [](RunConfig& c) -> auto& { return c.gate.max_concurrency; }),
      field<double>("faas", "client_rate_limit", [](RunConfig& c) -> auto& { return c.gate.invocation_rate_limit; }),
      field<size_t>("faas", "provider_concurrency_limit",
                    [](RunConfig& c) -> auto& { return c.faas.provider_concurrency_limit; }),
      field<double>("faas", "rate_limit", [](RunConfig& c) -> auto& { return c.faas.rate_limit; }),
      field<double>("faas", "invocation_overhead_ms",
                    [](RunConfig& c) -> auto& { return c.faas.invocation_overhead_ms; }),
      field<double>("faas", "cold_start_ms", [](RunConfig& c) -> auto& { return c.faas.cold_start_ms; }),
      field<int64_t>("faas", "memory_mb", [](RunConfig& c) -> auto& { return c.faas.memory_mb; }),
      field<int64_t>("faas", "billing_quantum_ms", [](RunConfig& c) -> auto& { return c.faas.billing_quantum_ms; }),
      field<double>("faas", "container_keepalive_ms",
                    [](RunConfig& c) -> auto& { return c.faas.container_keepalive_ms; }),

      field<double>("cost", "lambda_i", [](RunConfig& c) -> auto& { return c.cost.lambda_i; }),
      field<double>("cost", "lambda_e", [](RunConfig& c) -> auto& { return c.cost.lambda_e; }),
      field<double>("cost", "client_vm_price", [](RunConfig& c) -> auto& { return c.cost.client_vm_price; }),
      field<double>("cost", "emr_worker_price", [](RunConfig& c) -> auto& { return c.cost.emr_worker_price; }),
      field<double>("cost", "emr_master_price", [](RunConfig& c) -> auto& { return c.cost.emr_master_price; }),
      field<int>("cost", "emr_workers", [](RunConfig& c) -> auto& { return c.cost.emr_workers; }),
      field<string>("cost", "denominator", [](RunConfig& c) -> auto& { return c.cost_denominator; }),

      field<uint32_t>("uts", "seed", [](RunConfig& c) -> auto& { return c.uts.seed; }),
      field<double>("uts", "b0", [](RunConfig& c) -> auto& { return c.uts.b0; }),
      field<int>("uts", "depth", [](RunConfig& c) -> auto& { return c.uts.depth_cutoff; }),
      field<int>("uts", "split_factor", [](RunConfig& c) -> auto& { return c.uts.split_factor; }),
      field<uint64_t>("uts", "iters", [](RunConfig& c) -> auto& { return c.uts.iters; }),

      field<int>("mariani", "width", [](RunConfig& c) -> auto& { return c.mariani.width; }),
      field<int>("mariani", "height", [](RunConfig& c) -> auto& { return c.mariani.height; }),
      field<int>("mariani", "max_dwell", [](RunConfig& c) -> auto& { return c.mariani.max_dwell; }),
      field<int>("mariani", "initial_subdivision",
                 [](RunConfig& c) -> auto& { return c.mariani.initial_subdivision; }),
      field<int>("mariani", "split_factor", [](RunConfig& c) -> auto& { return c.mariani.split_factor; }),
      field<int>("mariani", "max_depth", [](RunConfig& c) -> auto& { return c.mariani.max_depth; }),
      field<double>("mariani", "x_min", [](RunConfig& c) -> auto& { return c.mariani.viewport.x_min; }),
      field<double>("mariani", "x_max", [](RunConfig& c) -> auto& { return c.mariani.viewport.x_max; }),
      field<double>("mariani", "y_min", [](RunConfig& c) -> auto& { return c.mariani.viewport.y_min; }),
      field<double>("mariani", "y_max", [](RunConfig& c) -> auto& { return c.mariani.viewport.y_max; }),

      field<int>("bc", "scale", [](RunConfig& c) -> auto& { return c.bc.scale; }),
      field<int>("bc", "edge_factor", [](RunConfig& c) -> auto& { return c.bc.edge_factor; }),
      field<double>("bc", "a", [](RunConfig& c) -> auto& { return c.bc.a; }),
      field<double>("bc", "b", [](RunConfig& c) -> auto& { return c.bc.b; }),
      field<double>("bc", "c", [](RunConfig& c) -> auto& { return c.bc.c; }),
      field<double>("bc", "d", [](RunConfig& c) -> auto& { return c.bc.d; }),
      field<int>("bc", "tasks", [](RunConfig& c) -> auto& { return c.bc.tasks; }),
      field<bool>("bc", "permute", [](RunConfig& c) -> auto& { return c.bc.permute; }),
      field<bool>("bc", "share_graph", [](RunConfig& c) -> auto& { return c.bc_share_graph; }),

      field<bool>("adaptive", "enabled", [](RunConfig& c) -> auto& { return c.adaptive; }),

      field<size_t>("overhead", "samples", [](RunConfig& c) -> auto& { return c.overhead_samples; }),
      field<size_t>("overhead", "warmup", [](RunConfig& c) -> auto& { return c.overhead_warmup; }),

      field<double>("synthetic", "uts_base_ms", [](RunConfig& c) -> auto& { return c.synthetic.uts_base_ms; }),
      field<double>("synthetic", "uts_per_node_ms",
                    [](RunConfig& c) -> auto& { return c.synthetic.uts_per_node_ms; }),
      field<double>("synthetic", "mariani_base_ms",
                    [](RunConfig& c) -> auto& { return c.synthetic.mariani_base_ms; }),
      field<double>("synthetic", "mariani_ns_per_iteration",
                    [](RunConfig& c) -> auto& { return c.synthetic.mariani_ns_per_iteration; }),
      field<double>("synthetic", "bc_base_ms", [](RunConfig& c) -> auto& { return c.synthetic.bc_base_ms; }),
      field<double>("synthetic", "bc_per_source_ms",
                    [](RunConfig& c) -> auto& { return c.synthetic.bc_per_source_ms; }),
  };
  return table;
}

inline const KeySpec* find_key(const std::string& dotted) {
  for (const auto& k : key_table())
    if (k.dotted() == dotted) return &k;
  return nullptr;
}

/// Sets section.key from its textual value.
inline void set_value(RunConfig& config, const std::string& dotted, const std::string& text) {
  const KeySpec* spec = find_key(dotted);
  if (!spec) throw Error(Errc::UnknownKey, "unknown configuration key '" + dotted + "'");
  spec->set(config, text);
}

inline void RunConfig::validate() const {
  auto one_of = [](const std::string& v, std::initializer_list<const char*> allowed, const char* what) {
    for (const char* a : allowed)
      if (v == a) return;
    throw Error(Errc::InvalidArgument, std::string("unsupported ") + what + " '" + v + "'");
  };
  one_of(workload, {"uts", "mariani", "bc", "overhead"}, "workload");
  one_of(executor, {"local", "serverless-sim", "hybrid"}, "executor");
  one_of(mode, {"execute", "synthetic"}, "mode");
  one_of(cost_denominator, {"execution", "total"}, "cost denominator");
  if (mode == "synthetic") require(executor == "serverless-sim", "synthetic mode needs the serverless-sim executor");
  require(workers >= 1 || executor == "hybrid", "workers must be >= 1");
  require(bin_ms > 0.0, "bin_ms must be > 0");
  require(overhead_warmup >= 1, "overhead warmup must be >= 1");
  gate.validate();
  faas.validate();
  cost.validate();
  uts.validate();
  mariani.validate();
  bc.validate();
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Drops a trailing comment that is not inside a quoted string.
inline std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace detail

/// TOML-style subset: [section] headers, key = value lines, '#' comments,
/// double-quoted or bare values.
inline void apply_config_text(RunConfig& config, std::istream& in) {
  std::string line;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = detail::trim(detail::strip_comment(line));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail("unterminated section header");
      section = detail::trim(text.substr(1, text.size() - 2));
      if (section.empty()) fail("empty section name");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trim(text.substr(0, eq));
    std::string value = detail::trim(text.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (section.empty()) fail("key '" + key + "' outside any section");
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') fail("unterminated string");
      value = value.substr(1, value.size() - 2);
    }
    const std::string dotted = section + "." + key;
    if (!find_key(dotted))
      throw Error(Errc::UnknownKey, "line " + std::to_string(lineno) + ": unknown key '" + dotted + "'");
    try {
      set_value(config, dotted, value);
    } catch (const Error& e) {
      fail(e.detail());
    }
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open config file '" + path + "'");
  RunConfig config;
  apply_config_text(config, in);
  return config;
}

/// Defaults, then the optional file, then each (key, value) override in order.
inline RunConfig resolve_config(const std::string& path,
                                const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig config = path.empty() ? RunConfig{} : load_config(path);
  for (const auto& [key, value] : overrides) set_value(config, key, value);
  return config;
}

}  // namespace elastic::cli
