#include <algorithm>
#include <future>
#include <map>
#include <thread>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/harness.hpp"
#include "callctl/online_algs.hpp"

namespace callctl {

namespace {

[[noreturn]] void rethrow_with(const std::string& context) {
  try {
    throw;
  } catch (const UnknownCellError& e) {
    throw UnknownCellError(context + e.what());
  } catch (const DivisibilityError& e) {
    throw DivisibilityError(context + e.what());
  } catch (const ContractViolation& e) {
    throw ContractViolation(context + e.what());
  } catch (const SizeLimitError& e) {
    throw SizeLimitError(context + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  } catch (const Error& e) {
    throw Error(context + e.what());
  }
}

/// Orders ratios with infinity above every finite value.
bool ratio_less(const RatioReport& a, const RatioReport& b) {
  if (a.infinite()) return false;
  if (b.infinite()) return true;
  return *a.value < *b.value;
}

bool is_two_to_one(const AlgorithmSpec& spec) {
  return spec.kind == AlgorithmKind::Caco ||
         (spec.kind == AlgorithmKind::PartitionFamily && spec.x_share == 2 &&
          spec.y_share == 1);
}

std::string describe_traffic(const Traffic& t) {
  if (t.adversary) return *t.adversary;
  return std::to_string(t.requests.size()) + " requests";
}

BoundCheck upper_bound(std::string id, const RatioReport& r, Rational limit) {
  BoundCheck b{std::move(id), "OPT/ALG <= " + to_string(limit), true, {}};
  if (r.infinite() || *r.value > limit) {
    b.passed = false;
    b.detail = "ratio " + r.text();
  }
  return b;
}

CertificateSummary summarize(const RunTrace& trace, const OptimumWitness& opt,
                             int omega) {
  CertificateSummary s;
  if (trace.algorithm().kind == AlgorithmKind::Caco2) {
    const Caco2Certificate cert = caco2_certificate(trace, opt, omega);
    s.kind = "caco2";
    s.status = to_string(cert.status());
    s.checks = cert.checks;
    s.uncovered = cert.uncovered;
    CheckResult ends = check_opposite_ends(trace);
    if (!ends.passed) s.status = "fail";
    s.checks.push_back(std::move(ends));
    return s;
  }
  const CacoCertificate cert = caco_certificate(trace, opt, omega);
  s.kind = "caco";
  CheckResult own_range = check_own_range_fact(trace);
  s.status = cert.passed() && own_range.passed ? "pass" : "fail";
  s.checks.push_back(std::move(own_range));
  s.checks.insert(s.checks.end(), cert.checks.begin(), cert.checks.end());
  return s;
}

RunReport run_unchecked(const ScenarioConfig& config) {
  validate_scenario(config);
  const AlgorithmSpec spec = parse_algorithm(config.algorithm);
  const auto network = std::make_shared<const Network>(config.cells);

  AdversaryScenario scenario;
  if (config.traffic.adversary) {
    scenario = make_adversary(*config.traffic.adversary, config.omega, network);
  } else {
    scenario.name = "requests";
    scenario.network = network;
    scenario.omega = config.omega;
    scenario.script = [requests = config.traffic.requests](
                          int phase, std::span<const int>)
        -> std::optional<std::vector<CellId>> {
      if (phase == 1) return requests;
      return std::nullopt;
    };
  }
  const Interaction run = play(scenario, spec);
  const RunTrace& trace = run.trace;

  RunReport report;
  report.scenario = config.name;
  report.algorithm = to_string(spec);
  report.traffic = describe_traffic(config.traffic);
  report.omega = config.omega;
  for (std::size_t i = 0; i < network->size(); ++i) {
    const CellTally& t = trace.tally(i);
    report.rows.push_back({network->cell(i), color_of(network->cell(i)),
                           t.demand, t.accepted, std::nullopt});
    report.total_demand += t.demand;
    report.total_online += t.accepted;
  }

  if (!config.compute_opt && !config.verify_certificate) return report;

  std::map<std::vector<int>, OptimumWitness> solved;
  const auto optimum = [&](const std::vector<int>& demands)
      -> const OptimumWitness& {
    auto it = solved.find(demands);
    if (it == solved.end()) {
      it = solved.emplace(demands,
                          exact_optimum(*network, config.omega, demands))
               .first;
    }
    return it->second;
  };

  const OptimumWitness& opt = optimum(trace.demands());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    report.rows[i].opt = opt.per_cell[i];
  }
  report.total_opt = opt.total;
  report.ratio = ratio_report(trace, opt);

  if (config.traffic.adversary) {
    for (const Checkpoint& cp : run.checkpoints) {
      const OptimumWitness& o = optimum(cp.demands);
      PhaseRow row{cp.phase, cp.online_total, o.total,
                   ratio_report(cp.online_total, o.total)};
      if (!report.adversary_ratio ||
          ratio_less(*report.adversary_ratio, row.ratio)) {
        report.adversary_ratio = row.ratio;
      }
      report.phases.push_back(std::move(row));
    }
  }

  std::string why;
  const std::vector<int> demands = trace.demands();
  const bool witness_ok = verify_witness(InterferenceGraph::from_network(*network),
                                         config.omega, demands, opt, &why);
  report.bounds.push_back(
      {"opt_witness", "optimal assignment is interference-free and feasible",
       witness_ok, why});
  const int clique = clique_upper_bound(*network, config.omega, demands);
  report.bounds.push_back({"clique_bound", "clique bound >= OPT",
                           clique >= opt.total,
                           "clique bound " + std::to_string(clique)});

  const RatioReport headline = *report.headline_ratio();
  if (is_two_to_one(spec)) {
    report.bounds.push_back(upper_bound("caco_ratio", headline, Rational(7, 3)));
  }
  if (spec.kind == AlgorithmKind::Caco2) {
    report.bounds.push_back(
        upper_bound("caco2_ratio", headline, Rational(9, 4)));
  }
  const std::string adversary = config.traffic.adversary.value_or("");
  if (adversary == "fig3") {
    BoundCheck b{"fig3_lower", "OPT/ALG >= 5/3", true, {}};
    if (!headline.infinite() && *headline.value < Rational(5, 3)) {
      b.passed = false;
      b.detail = "ratio " + headline.text();
    }
    report.bounds.push_back(std::move(b));
  }
  if (adversary == "fig2" && spec.kind != AlgorithmKind::Caco2) {
    const Rational expected =
        spec.kind == AlgorithmKind::Greedy
            ? Rational(3)
            : fig2_partition_ratio(spec.x_share, spec.y_share);
    BoundCheck b{"fig2_ratio", "OPT/ALG = " + to_string(expected), true, {}};
    if (headline.infinite() || *headline.value != expected) {
      b.passed = false;
      b.detail = "ratio " + headline.text();
    }
    report.bounds.push_back(std::move(b));
  }

  if (config.verify_certificate) {
    report.certificate = summarize(trace, opt, config.omega);
  }
  return report;
}

ScenarioConfig configure_point(
    const ScenarioConfig& base,
    const std::vector<std::pair<std::string, std::string>>& settings) {
  ScenarioConfig c = base;
  bool auto_omega = false;
  for (const auto& [key, value] : settings) {
    if (key == "alg") {
      c.algorithm = value;
    } else if (key == "omega") {
      if (value == "auto") {
        auto_omega = true;
      } else {
        auto_omega = false;
        std::size_t used = 0;
        try {
          c.omega = std::stoi(value, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != value.size()) {
          throw ConfigError("bad omega '" + value + "' in grid");
        }
      }
    } else if (key == "adversary") {
      c.traffic.adversary = value;
      c.traffic.requests.clear();
    }
  }
  const AlgorithmSpec spec = parse_algorithm(c.algorithm);
  if (auto_omega) c.omega = smallest_valid_omega(spec, base.omega);
  if (c.verify_certificate && !has_certificate(spec)) {
    c.verify_certificate = false;
    c.compute_opt = true;
  }
  return c;
}

}  // namespace

std::optional<RatioReport> RunReport::headline_ratio() const {
  if (adversary_ratio) return adversary_ratio;
  return ratio;
}

bool RunReport::ok() const {
  const bool bounds_ok = std::all_of(
      bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.passed; });
  return bounds_ok && (!certificate || certificate->status != "fail");
}

RunReport run_experiment(const ScenarioConfig& config) {
  try {
    return run_unchecked(config);
  } catch (const Error&) {
    rethrow_with("scenario '" + config.name + "': ");
  }
}

Rational fig2_partition_ratio(int x_share, int y_share) {
  const Rational own_branch(3 * x_share + y_share, x_share + y_share);
  const Rational star_branch(3 * (3 * x_share + y_share), 4 * x_share + y_share);
  return std::max(own_branch, star_branch);
}

Grid parse_grid(std::string_view spec) {
  Grid grid;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find(';', pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view part = spec.substr(pos, end - pos);
    pos = end + 1;
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("grid axis '" + std::string(part) +
                        "' must look like key=v1,v2");
    }
    GridAxis axis{std::string(part.substr(0, eq)), {}};
    if (axis.key == "algorithm") axis.key = "alg";
    if (axis.key != "alg" && axis.key != "omega" && axis.key != "adversary") {
      throw ConfigError("unknown grid key '" + axis.key +
                        "' (expected alg, omega or adversary)");
    }
    std::string_view values = part.substr(eq + 1);
    std::size_t vpos = 0;
    while (vpos <= values.size() && !values.empty()) {
      std::size_t comma = values.find(',', vpos);
      if (comma == std::string_view::npos) comma = values.size();
      if (comma > vpos) {
        axis.values.emplace_back(values.substr(vpos, comma - vpos));
      }
      vpos = comma + 1;
    }
    grid.push_back(std::move(axis));
  }
  return grid;
}

bool SweepResult::ok() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) {
    return p.error.empty() && p.report && p.report->ok();
  });
}

SweepResult sweep(const ScenarioConfig& base, const Grid& grid) {
  SweepResult result;
  if (grid.empty()) return result;
  std::size_t count = 1;
  for (const auto& axis : grid) count *= axis.values.size();

  result.points.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rest = k;
    auto& settings = result.points[k].settings;
    settings.resize(grid.size());
    for (std::size_t a = grid.size(); a-- > 0;) {
      const auto& axis = grid[a];
      settings[a] = {axis.key, axis.values[rest % axis.values.size()]};
      rest /= axis.values.size();
    }
  }

  const auto evaluate = [&base](SweepPoint& point) {
    try {
      point.report = run_experiment(configure_point(base, point.settings));
    } catch (const Error& e) {
      point.error = e.what();
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < count; start += workers) {
    std::vector<std::future<void>> batch;
    for (std::size_t k = start; k < std::min(count, start + workers); ++k) {
      batch.push_back(std::async(std::launch::async, evaluate,
                                 std::ref(result.points[k])));
    }
    for (auto& f : batch) f.get();
  }

  for (const SweepPoint& point : result.points) {
    std::string alg = base.algorithm;
    for (const auto& [key, value] : point.settings) {
      if (key == "alg") alg = value;
    }
    auto row = std::find_if(
        result.summary.begin(), result.summary.end(),
        [&](const SweepSummaryRow& r) { return r.algorithm == alg; });
    if (row == result.summary.end()) {
      result.summary.push_back({alg, 0, 0, std::nullopt, std::nullopt});
      row = std::prev(result.summary.end());
    }
    ++row->points;
    if (!point.error.empty() || !point.report->ok()) ++row->failures;
    if (!point.report) continue;
    if (const auto r = point.report->headline_ratio()) {
      if (!row->min_ratio || ratio_less(*r, *row->min_ratio)) row->min_ratio = r;
      if (!row->max_ratio || ratio_less(*row->max_ratio, *r)) row->max_ratio = r;
    }
  }
  return result;
}

}  // namespace callctl
