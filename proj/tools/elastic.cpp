// elastic: run a workload on the local, serverless or hybrid executor.
//
//   elastic run uts --depth 14 --seed 19 --b0 4
//   elastic run mariani --width 512 --height 512 --check-oracle
//   elastic run bc --scale 6 --check-oracle
//   elastic run overhead --executor serverless-sim
//
// Every configuration key is also a flag (--section.key); keys of the chosen
// workload's section and of [run] have short forms (--depth, --executor).

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "run.hpp"

namespace {

using elastic::cli::KeySpec;

struct Leaf {
  std::string config_path;
  std::vector<std::string> sets;
  bool json = false;
  bool check_oracle = false;
  bool adaptive = false;
  bool share_graph = false;
  std::vector<std::pair<const KeySpec*, CLI::Option*>> keyed;
};

std::string dashed(std::string s) {
  for (auto& c : s)
    if (c == '_') c = '-';
  return s;
}

void add_leaf(CLI::App& run, const std::string& workload, Leaf& leaf, std::string& chosen) {
  auto* app = run.add_subcommand(workload, "run the " + workload + " workload");
  app->add_option("--config", leaf.config_path, "TOML-style config file")->check(CLI::ExistingFile);
  app->add_option("--set", leaf.sets, "override section.key=value (repeatable)");
  app->add_flag("--json", leaf.json, "print report.json to standard output");
  app->add_flag("--check-oracle", leaf.check_oracle, "verify the result against the reference oracle");
  if (workload == "uts") app->add_flag("--adaptive", leaf.adaptive, "retune split/iters from the active-task count");
  if (workload == "bc") app->add_flag("--share-graph", leaf.share_graph, "build the graph once for all local tasks");

  std::map<std::string, int> short_use;
  for (const auto& k : elastic::cli::key_table())
    if (k.section == workload || k.section == "run") ++short_use[k.key];

  for (const auto& k : elastic::cli::key_table()) {
    std::string names = "--" + k.dotted();
    const bool own = k.section == workload;
    const bool shared_run = k.section == "run" && k.key != "workload" && short_use[k.key] == 1;
    const bool is_bool = std::holds_alternative<bool>(k.get({}));
    if ((own || shared_run) && !is_bool) {
      names += ",--" + k.key;
      if (dashed(k.key) != k.key) names += ",--" + dashed(k.key);
    }
    if (workload == "bc" && k.dotted() == "bc.tasks") names += ",-T";
    auto* opt = app->add_option(names)->description("set " + k.dotted())->type_name("VALUE");
    leaf.keyed.emplace_back(&k, opt);
  }
  app->callback([&chosen, workload] { chosen = workload; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic task executor: local, simulated serverless and hybrid runs of irregular workloads"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run one workload");
  run->require_subcommand(1);

  std::map<std::string, Leaf> leaves;
  std::string chosen;
  for (const char* w : {"uts", "mariani", "bc", "overhead"}) add_leaf(*run, w, leaves[w], chosen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : elastic::cli::kConfigError;
  }

  Leaf& leaf = leaves.at(chosen);
  std::vector<std::pair<std::string, std::string>> overrides{{"run.workload", chosen}};
  for (const auto& s : leaf.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects section.key=value, got '" << s << "'\n";
      return elastic::cli::kConfigError;
    }
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  // Named flags are applied after --set, so they win.
  for (const auto& [spec, opt] : leaf.keyed)
    if (opt->count() > 0) overrides.emplace_back(spec->dotted(), opt->as<std::string>());
  if (leaf.check_oracle) overrides.emplace_back("run.check_oracle", "true");
  if (leaf.adaptive) overrides.emplace_back("adaptive.enabled", "true");
  if (leaf.share_graph) overrides.emplace_back("bc.share_graph", "true");

  elastic::cli::RunConfig config;
  try {
    config = elastic::cli::resolve_config(leaf.config_path, overrides);
  } catch (const elastic::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return elastic::cli::kConfigError;
  }

  const auto outcome = elastic::cli::run(config);
  if (leaf.json) std::cout << outcome.report.dump(2) << '\n';
  if (outcome.exit_code != 0) std::cerr << "error: " << outcome.message << '\n';
  return outcome.exit_code;
}
