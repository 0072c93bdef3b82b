#ifndef CALLCTL_LEDGER_HPP
#define CALLCTL_LEDGER_HPP

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "callctl/hexnet.hpp"
#include "callctl/offline_opt.hpp"
#include "callctl/online_algs.hpp"

namespace callctl {

/// Exact arithmetic for every pass/fail decision in this module.
using Rational = boost::rational<long long>;

/// "p/q".
std::string to_string(const Rational& value);
/// "p/q (~d.dddddd)".
std::string to_display(const Rational& value);

/// Outcome of one named check. Failing cells are listed in order.
struct CheckResult {
  std::string id;
  std::string description;
  bool passed = true;
  std::vector<CellId> counterexamples;
  std::string detail;

  void fail(CellId cell, const std::string& why);
};

// -- per-trace facts -------------------------------------------------------

/// For partition-family traces: a cell with R_i >= |F_x| accepted at least
/// |F_x| requests (2 omega / 7 for CACO).
CheckResult check_own_range_fact(const RunTrace& trace);
/// For partition-family traces: every cell that rejected a request sees the
/// shared range fully used around it, A_S(C) + sum_k A_S(C_k) >= |F_S|.
CheckResult check_shared_exhaustion_fact(const RunTrace& trace);
/// For CACO2 traces: adjacent cells spilling into the same third range use
/// opposite directions, and their spill frequencies never interleave (the
/// bottom-to-top cell's stay strictly below the top-to-bottom cell's).
CheckResult check_opposite_ends(const RunTrace& trace);

// -- CACO amortization ------------------------------------------------------

enum class CellClass { Safe, Dangerous };

/// Safe iff O_i <= 2 omega / 3.
CellClass classify_cell(int opt, int omega);

struct CacoCellLedger {
  CellId cell;
  CellClass cls = CellClass::Safe;
  int demand = 0;
  int accepted = 0;
  int shared_accepted = 0;
  int opt = 0;
  Rational credit;
};

struct CacoCertificate {
  std::vector<CacoCellLedger> cells;
  /// In order: safe_share, dangerous_layout, shared_exhausted, sum, ratio.
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult& check(const std::string& id) const;
};

/// Credits B_i = 3 O_i / 7 on safe cells and A_i + sum_k (A_k - 3 O_k / 7) / 3
/// on dangerous ones, then verifies the safe-cell share, dangerous-cell
/// separation, shared-range exhaustion at rejecting cells, sum B <= sum A and
/// 3 O_i <= 7 B_i per cell. Throws ContractViolation when the trace is not a
/// 2:1 partition run or `opt` covers a different cell set.
CacoCertificate caco_certificate(const RunTrace& trace,
                                 const OptimumWitness& opt, int omega);

// -- CACO2 compensation -----------------------------------------------------

/// H_ij: credit moved from surplus cell `from` to neighbor `to`.
struct Transfer {
  CellId from;
  CellId to;
  Rational amount;
  std::string rule;
};

struct Caco2CellLedger {
  CellId cell;
  std::string config;
  /// A_i >= 4 O_i / 9.
  bool surplus = false;
  int demand = 0;
  int accepted = 0;
  int opt = 0;
  Rational credit;
  Rational given;
  Rational received;
  /// Neighbor layout the pictured cases do not show (two same-colored
  /// neighbors, or a single neighbor handled by the two-color rule).
  std::optional<std::string> flag;
};

enum class CertificateStatus { Pass, Uncovered, Fail };
std::string to_string(CertificateStatus status);

struct Caco2Certificate {
  std::vector<Caco2CellLedger> cells;
  std::vector<Transfer> transfers;
  /// In order: budget, sum, ratio.
  std::vector<CheckResult> checks;
  /// One entry per failing cell that sits next to a flagged layout.
  std::vector<std::string> uncovered;

  CertificateStatus status() const;
  const CheckResult& check(const std::string& id) const;
};

/// Builds H_ij with the compensation case tree (spread over all neighbors for
/// same-colored layouts; targeted transfers for two-color layouts) and checks
/// budget feasibility, sum B <= sum A and 4 O_i <= 9 B_i. Failures touching a
/// flagged layout are reported as uncovered, anything else as a failure.
/// Throws ContractViolation for non-CACO2 traces or mismatched cell sets.
Caco2Certificate caco2_certificate(const RunTrace& trace,
                                   const OptimumWitness& opt, int omega);

// -- ratio ------------------------------------------------------------------

/// OPT / ALG. Infinite when ALG = 0 < OPT; 1 when both are 0.
struct RatioReport {
  int online = 0;
  int opt = 0;
  std::optional<Rational> value;

  bool infinite() const { return !value.has_value(); }
  std::string text() const;
};

RatioReport ratio_report(int online_total, int opt_total);
RatioReport ratio_report(const RunTrace& trace, const OptimumWitness& opt);

}  // namespace callctl

#endif  // CALLCTL_LEDGER_HPP
