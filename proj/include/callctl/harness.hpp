#ifndef CALLCTL_HARNESS_HPP
#define CALLCTL_HARNESS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "callctl/hexnet.hpp"
#include "callctl/ledger.hpp"
#include "callctl/offline_opt.hpp"
#include "callctl/online_algs.hpp"

namespace callctl {

inline constexpr std::string_view kSuiteVersion = "0.1.0";

/// Either an adversary selector ("fig2", "fig3", "random:<seed>:<length>")
/// or an explicit request list.
struct Traffic {
  std::optional<std::string> adversary;
  std::vector<CellId> requests;

  bool operator==(const Traffic&) const = default;
};

struct ScenarioConfig {
  std::string name;
  int omega = 0;
  std::vector<CellId> cells;
  Traffic traffic;
  std::string algorithm;
  bool verify_certificate = false;
  bool compute_opt = false;

  bool operator==(const ScenarioConfig&) const = default;
};

/// caco, partition:2:1 and caco2 have certificates.
bool has_certificate(const AlgorithmSpec& spec);

/// Reads and validates a JSON scenario. Every error message starts with
/// "<path>:<line>:" pointing at the offending value.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(std::string_view text,
                              std::string_view source = "<scenario>");
/// Pretty-printed JSON accepted by parse_scenario.
std::string serialize_scenario(const ScenarioConfig& config);
/// Validation for configs built in code; messages carry no line numbers.
void validate_scenario(const ScenarioConfig& config);

struct ReportRow {
  CellId cell;
  Color color = Color::R;
  int demand = 0;
  int online = 0;
  std::optional<int> opt;
};

/// Ratio observed after one adversary batch, OPT taken on the prefix.
struct PhaseRow {
  int phase = 0;
  int online = 0;
  int opt = 0;
  RatioReport ratio;
};

struct CertificateSummary {
  std::string kind;
  std::string status;
  std::vector<CheckResult> checks;
  std::vector<std::string> uncovered;
};

struct BoundCheck {
  std::string id;
  std::string description;
  bool passed = true;
  std::string detail;
};

struct RunReport {
  std::string suite_version{kSuiteVersion};
  std::string scenario;
  std::string algorithm;
  std::string traffic;
  int omega = 0;
  std::vector<ReportRow> rows;
  int total_demand = 0;
  int total_online = 0;
  std::optional<int> total_opt;
  /// Final OPT / ALG.
  std::optional<RatioReport> ratio;
  /// Adversary runs only: one row per batch, and the largest batch ratio.
  std::vector<PhaseRow> phases;
  std::optional<RatioReport> adversary_ratio;
  std::optional<CertificateSummary> certificate;
  std::vector<BoundCheck> bounds;

  /// Ratio that sweeps aggregate: the adversary ratio when present.
  std::optional<RatioReport> headline_ratio() const;
  /// False when a bound check failed or the certificate status is "fail".
  bool ok() const;
};

/// Plays the scenario, optionally computes OPT (per batch for adversaries)
/// and certificates, then attaches the bound checks that apply. Submodule
/// errors are rethrown with the scenario name prefixed.
RunReport run_experiment(const ScenarioConfig& config);

/// One grid axis, e.g. {"alg", {"partition:1:1", "partition:2:1"}}. Keys:
/// alg, omega ("auto" picks the smallest valid omega not below the template's
/// for each algorithm), adversary. Points whose algorithm has no certificate
/// run without one.
struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};
using Grid = std::vector<GridAxis>;

/// "alg=caco,caco2;omega=9,auto". An empty string is an empty grid.
Grid parse_grid(std::string_view spec);

struct SweepPoint {
  std::vector<std::pair<std::string, std::string>> settings;
  std::optional<RunReport> report;
  /// Set when the point could not be run.
  std::string error;
};

struct SweepSummaryRow {
  std::string algorithm;
  int points = 0;
  int failures = 0;
  std::optional<RatioReport> min_ratio;
  std::optional<RatioReport> max_ratio;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<SweepSummaryRow> summary;

  bool ok() const;
};

/// Runs the cartesian product of the axes in row-major order. Points run
/// concurrently; results keep grid order. A grid with no axes, or an axis
/// with no values, yields no points.
SweepResult sweep(const ScenarioConfig& base, const Grid& grid);

enum class ReportFormat { Csv, Text };
ReportFormat parse_format(std::string_view name);

std::string emit_report(const RunReport& report, ReportFormat format);
std::string emit_sweep(const SweepResult& result, ReportFormat format);

/// OPT/ALG of the fig2 adversary against the x:y partition family:
/// max((3x+y)/(x+y), 3(3x+y)/(4x+y)).
Rational fig2_partition_ratio(int x_share, int y_share);

}  // namespace callctl

#endif  // CALLCTL_HARNESS_HPP
