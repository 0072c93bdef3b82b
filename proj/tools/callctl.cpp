#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/harness.hpp"

namespace {

using namespace callctl;

constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string path;
  std::string format = "text";
};

/// random:<seed>:<length> with the seed replaced.
std::string reseed(const std::string& selector, std::uint64_t seed) {
  const std::string prefix = "random:";
  if (selector.rfind(prefix, 0) != 0) return selector;
  const auto colon = selector.find(':', prefix.size());
  if (colon == std::string::npos) return selector;
  return prefix + std::to_string(seed) + selector.substr(colon);
}

void apply_seed(ScenarioConfig& config, const std::optional<std::uint64_t>& seed) {
  if (seed && config.traffic.adversary) {
    config.traffic.adversary = reseed(*config.traffic.adversary, *seed);
  }
}

void write(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + out.path);
  file << text;
}

int finish(const RunReport& report, const Output& out) {
  write(out, emit_report(report, parse_format(out.format)));
  return report.ok() ? 0 : kCheckFailed;
}

void add_output_flags(CLI::App* cmd, Output& out,
                      std::optional<std::uint64_t>& seed) {
  cmd->add_option("--out", out.path, "Write the report to this file");
  cmd->add_option("--format", out.format, "Report format")
      ->check(CLI::IsMember({"csv", "text"}));
  cmd->add_option("--seed", seed, "Seed for random:<seed>:<length> traffic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online call control on hexagonal cellular networks"};
  app.require_subcommand(1);

  Output out;
  std::optional<std::uint64_t> seed;

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_output_flags(run, out, seed);

  auto* verify =
      app.add_subcommand("verify", "Run a scenario with OPT and certificates");
  verify->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_output_flags(verify, out, seed);

  std::string adversary;
  std::string algorithm;
  int omega = 0;
  bool certificate = false;
  auto* duel = app.add_subcommand("duel", "Play an adversary against an algorithm");
  duel->add_option("--adversary", adversary,
                   "fig2, fig3 or random:<seed>:<length>")
      ->required();
  duel->add_option("--alg", algorithm,
                   "greedy, caco, caco2 or partition:<x>:<y>")
      ->required();
  duel->add_option("--omega", omega, "Number of frequencies")->required();
  duel->add_flag("--certificate", certificate, "Also check the certificate");
  add_output_flags(duel, out, seed);

  std::string grid_spec;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a grid");
  sweep_cmd->add_option("template", scenario_path, "Template scenario JSON")
      ->required();
  sweep_cmd->add_option("--grid", grid_spec,
                        "e.g. alg=partition:1:1,partition:2:1;omega=auto")
      ->required();
  add_output_flags(sweep_cmd, out, seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed() || verify->parsed()) {
      ScenarioConfig config = load_scenario(scenario_path);
      apply_seed(config, seed);
      if (verify->parsed()) {
        config.verify_certificate = true;
        config.compute_opt = true;
        validate_scenario(config);
      }
      return finish(run_experiment(config), out);
    }
    if (duel->parsed()) {
      ScenarioConfig config;
      config.name = "duel";
      config.omega = omega;
      config.algorithm = algorithm;
      config.traffic.adversary = adversary;
      config.compute_opt = true;
      config.verify_certificate = certificate;
      const Network network = (adversary == "fig2" || adversary == "fig3")
                                  ? star_network()
                                  : flower_network();
      config.cells.assign(network.cells().begin(), network.cells().end());
      apply_seed(config, seed);
      return finish(run_experiment(config), out);
    }
    ScenarioConfig base = load_scenario(scenario_path);
    apply_seed(base, seed);
    const SweepResult result = sweep(base, parse_grid(grid_spec));
    write(out, emit_sweep(result, parse_format(out.format)));
    return result.ok() ? 0 : kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}
