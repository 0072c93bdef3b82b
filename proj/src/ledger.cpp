#include "callctl/ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "callctl/error.hpp"

namespace callctl {

std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::string to_display(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (~%.6f)",
                boost::rational_cast<double>(value));
  return to_string(value) + buf;
}

void CheckResult::fail(CellId cell, const std::string& why) {
  passed = false;
  counterexamples.push_back(cell);
  if (!detail.empty()) detail += "; ";
  detail += to_string(cell) + ": " + why;
}

namespace {

bool is_two_to_one(const AlgorithmSpec& spec) {
  return spec.kind == AlgorithmKind::Caco ||
         (spec.kind == AlgorithmKind::PartitionFamily && spec.x_share == 2 &&
          spec.y_share == 1);
}

const FrequencyPartition& shared_partition(const RunTrace& trace) {
  const auto& p = trace.partition();
  if (!p || !p->has_shared()) {
    throw ContractViolation("trace of " + to_string(trace.algorithm()) +
                            " has no shared frequency range");
  }
  return *p;
}

int shared_count(const RunTrace& trace, std::size_t cell) {
  return trace.tally(cell).by_slot[static_cast<std::size_t>(Slot::S)];
}

void check_same_cells(const RunTrace& trace, const OptimumWitness& opt,
                      int omega) {
  if (opt.per_cell.size() != trace.network().size()) {
    throw ContractViolation("optimum covers " +
                            std::to_string(opt.per_cell.size()) +
                            " cells, trace covers " +
                            std::to_string(trace.network().size()));
  }
  if (omega != trace.omega()) {
    throw ContractViolation("omega " + std::to_string(omega) +
                            " does not match the trace's " +
                            std::to_string(trace.omega()));
  }
}

template <typename Certificate>
const CheckResult& find_check(const Certificate& cert, const std::string& id) {
  for (const auto& c : cert.checks) {
    if (c.id == id) return c;
  }
  throw ContractViolation("no check named '" + id + "'");
}

}  // namespace

CheckResult check_own_range_fact(const RunTrace& trace) {
  const FrequencyPartition& p = shared_partition(trace);
  CheckResult r{"own_range", "A_i >= |F_x| whenever R_i >= |F_x|", true, {}, {}};
  const Network& net = trace.network();
  for (std::size_t i = 0; i < net.size(); ++i) {
    const int reserved = p.range(color_of(net.cell(i))).size();
    const CellTally& t = trace.tally(i);
    if (t.demand >= reserved && t.accepted < reserved) {
      r.fail(net.cell(i), "R=" + std::to_string(t.demand) + " A=" +
                              std::to_string(t.accepted) + " < " +
                              std::to_string(reserved));
    }
  }
  return r;
}

CheckResult check_shared_exhaustion_fact(const RunTrace& trace) {
  const FrequencyPartition& p = shared_partition(trace);
  CheckResult r{"shared_exhausted",
                "A_S(C) + sum_k A_S(C_k) >= |F_S| at every rejecting cell",
                true,
                {},
                {}};
  const Network& net = trace.network();
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (trace.tally(i).rejected() == 0) continue;
    int around = shared_count(trace, i);
    for (std::size_t k : net.neighbor_indices(i)) around += shared_count(trace, k);
    if (around < p.shared().size()) {
      r.fail(net.cell(i), "shared use around cell " + std::to_string(around) +
                              " < " + std::to_string(p.shared().size()));
    }
  }
  return r;
}

CheckResult check_opposite_ends(const RunTrace& trace) {
  if (trace.algorithm().kind != AlgorithmKind::Caco2) {
    throw ContractViolation("opposite-end check applies to caco2 traces");
  }
  const FrequencyPartition& p = *trace.partition();
  const Network& net = trace.network();
  CheckResult r{"opposite_ends",
                "neighbors spilling into one range consume it from opposite "
                "ends without interleaving",
                true,
                {},
                {}};
  for (std::size_t u = 0; u < net.size(); ++u) {
    for (std::size_t v : net.neighbor_indices(u)) {
      if (v < u) continue;
      const auto su = caco2_overflow(color_of(net.cell(u)),
                                     classify_neighbor_config(net, u));
      const auto sv = caco2_overflow(color_of(net.cell(v)),
                                     classify_neighbor_config(net, v));
      if (!su || !sv || su->target != sv->target) continue;
      if (su->direction == sv->direction) {
        r.fail(net.cell(u), "same spill direction as neighbor " +
                                to_string(net.cell(v)));
        continue;
      }
      const FrequencyRange& range = p.range(su->target);
      const bool u_up = su->direction == Direction::BottomToTop;
      const std::size_t up = u_up ? u : v;
      const std::size_t down = u_up ? v : u;
      Frequency highest_up = range.first - 1;
      Frequency lowest_down = range.last + 1;
      for (Frequency f = range.first; f <= range.last; ++f) {
        if (trace.state().uses(up, f)) highest_up = f;
        if (trace.state().uses(down, f) && lowest_down > range.last) {
          lowest_down = f;
        }
      }
      if (highest_up >= lowest_down) {
        r.fail(net.cell(u), "spill into " + to_string(range) +
                                " interleaves with neighbor " +
                                to_string(net.cell(v)));
      }
    }
  }
  return r;
}

CellClass classify_cell(int opt, int omega) {
  return 3 * opt <= 2 * omega ? CellClass::Safe : CellClass::Dangerous;
}

bool CacoCertificate::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

const CheckResult& CacoCertificate::check(const std::string& id) const {
  return find_check(*this, id);
}

CacoCertificate caco_certificate(const RunTrace& trace,
                                 const OptimumWitness& opt, int omega) {
  if (!is_two_to_one(trace.algorithm())) {
    throw ContractViolation("caco certificate needs a 2:2:2:1 trace, got " +
                            to_string(trace.algorithm()));
  }
  check_same_cells(trace, opt, omega);
  const Network& net = trace.network();

  CacoCertificate cert;
  cert.cells.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const CellTally& t = trace.tally(i);
    cert.cells.push_back({net.cell(i), classify_cell(opt.per_cell[i], omega),
                          t.demand, t.accepted, shared_count(trace, i),
                          opt.per_cell[i], Rational(0)});
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto& row = cert.cells[i];
    if (row.cls == CellClass::Safe) {
      row.credit = Rational(3 * row.opt, 7);
      continue;
    }
    Rational credit(row.accepted);
    for (std::size_t k : net.neighbor_indices(i)) {
      const auto& nb = cert.cells[k];
      credit += (Rational(nb.accepted) - Rational(3 * nb.opt, 7)) / 3;
    }
    row.credit = credit;
  }

  CheckResult safe_share{"safe_share", "safe cells accept A_i >= 3 O_i / 7", true, {},
                     {}};
  CheckResult layout{"dangerous_layout",
                    "dangerous cells are pairwise non-adjacent; a safe cell "
                    "has at most 3 dangerous neighbors",
                    true,
                    {},
                    {}};
  CheckResult ratio{"ratio", "3 O_i <= 7 B_i for every cell", true, {}, {}};
  Rational credit_sum(0);
  int accepted_sum = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& row = cert.cells[i];
    credit_sum += row.credit;
    accepted_sum += row.accepted;
    if (row.cls == CellClass::Safe && 7 * row.accepted < 3 * row.opt) {
      safe_share.fail(row.cell, "A=" + std::to_string(row.accepted) + " O=" +
                                std::to_string(row.opt));
    }
    int dangerous_nbrs = 0;
    for (std::size_t k : net.neighbor_indices(i)) {
      if (cert.cells[k].cls != CellClass::Dangerous) continue;
      ++dangerous_nbrs;
      if (row.cls == CellClass::Dangerous && k > i) {
        layout.fail(row.cell,
                   "adjacent dangerous cell " + to_string(cert.cells[k].cell));
      }
    }
    if (row.cls == CellClass::Safe && dangerous_nbrs > 3) {
      layout.fail(row.cell, std::to_string(dangerous_nbrs) +
                               " dangerous neighbors");
    }
    if (Rational(3 * row.opt) > 7 * row.credit) {
      ratio.fail(row.cell, "O=" + std::to_string(row.opt) +
                               " B=" + to_string(row.credit));
    }
  }
  CheckResult sum{"sum", "sum B_i <= sum A_i", true, {}, {}};
  if (credit_sum > Rational(accepted_sum)) {
    sum.passed = false;
    sum.detail = "sum B = " + to_string(credit_sum) +
                 " > sum A = " + std::to_string(accepted_sum);
  }
  CheckResult exhausted = check_shared_exhaustion_fact(trace);

  cert.checks = {std::move(safe_share), std::move(layout), std::move(exhausted),
                 std::move(sum), std::move(ratio)};
  return cert;
}

std::string to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::Pass: return "pass";
    case CertificateStatus::Uncovered: return "uncovered";
    case CertificateStatus::Fail: return "fail";
  }
  return "?";
}

CertificateStatus Caco2Certificate::status() const {
  const bool all_passed =
      std::all_of(checks.begin(), checks.end(),
                  [](const CheckResult& c) { return c.passed; });
  if (all_passed) return CertificateStatus::Pass;
  std::size_t failing_cells = 0;
  for (const auto& c : checks) {
    failing_cells += c.counterexamples.size();
    if (!c.passed && c.counterexamples.empty() && uncovered.empty()) {
      return CertificateStatus::Fail;
    }
  }
  return uncovered.size() == failing_cells ? CertificateStatus::Uncovered
                                           : CertificateStatus::Fail;
}

const CheckResult& Caco2Certificate::check(const std::string& id) const {
  return find_check(*this, id);
}

namespace {

/// Neighbor roles of a cell under the two-color rule: `next` has the
/// successor color (receives the spill), `prev` the predecessor color.
struct TwoColorRoles {
  std::optional<std::size_t> next;
  std::optional<std::size_t> prev;
};

TwoColorRoles two_color_roles(const Network& net, std::size_t i) {
  TwoColorRoles roles;
  const Color own = color_of(net.cell(i));
  for (std::size_t j : net.neighbor_indices(i)) {
    if (color_of(net.cell(j)) == successor(own)) {
      roles.next = j;
    } else {
      roles.prev = j;
    }
  }
  return roles;
}

}  // namespace

Caco2Certificate caco2_certificate(const RunTrace& trace,
                                   const OptimumWitness& opt, int omega) {
  if (trace.algorithm().kind != AlgorithmKind::Caco2) {
    throw ContractViolation("caco2 certificate needs a caco2 trace, got " +
                            to_string(trace.algorithm()));
  }
  check_same_cells(trace, opt, omega);
  const Network& net = trace.network();
  if (!is_triangle_free(net)) {
    throw ContractViolation("caco2 certificate needs a triangle-free network");
  }

  Caco2Certificate cert;
  std::vector<NeighborConfig> configs;
  for (std::size_t i = 0; i < net.size(); ++i) {
    configs.push_back(classify_neighbor_config(net, i));
    const CellTally& t = trace.tally(i);
    Caco2CellLedger row;
    row.cell = net.cell(i);
    row.config = describe(configs.back());
    row.demand = t.demand;
    row.accepted = t.accepted;
    row.opt = opt.per_cell[i];
    row.surplus = 9 * row.accepted >= 4 * row.opt;
    if (const auto* a = std::get_if<StructureA>(&configs.back())) {
      if (a->k == 1) row.flag = "single neighbor, two-color rule";
      if (a->k == 2) row.flag = "two same-colored neighbors";
    }
    cert.cells.push_back(std::move(row));
  }

  const auto target = [&](std::size_t i) {
    const auto& c = cert.cells[i];
    return Rational(4 * c.opt, 9);
  };
  const auto deficit = [&](std::size_t i) { return !cert.cells[i].surplus; };
  const auto give = [&](std::size_t from, std::size_t to, Rational amount,
                        std::string rule) {
    cert.cells[from].given += amount;
    cert.cells[to].received += amount;
    cert.transfers.push_back(
        {net.cell(from), net.cell(to), amount, std::move(rule)});
  };

  for (std::size_t i = 0; i < net.size(); ++i) {
    if (!cert.cells[i].surplus) continue;
    const Rational spare = Rational(cert.cells[i].accepted) - target(i);
    const auto* a = std::get_if<StructureA>(&configs[i]);
    if (std::holds_alternative<Isolated>(configs[i])) continue;
    if (a && a->k >= 2) {
      for (std::size_t j : net.neighbor_indices(i)) {
        give(i, j, spare / a->k, "spread");
      }
      continue;
    }
    const TwoColorRoles roles = two_color_roles(net, i);
    const bool prev_short = roles.prev && deficit(*roles.prev);
    if (3 * cert.cells[i].accepted > omega) {
      if (roles.next && deficit(*roles.next)) {
        const std::size_t j = *roles.next;
        give(i, j, target(j) - Rational(cert.cells[j].accepted),
             "spill-cell deficit");
        if (prev_short) give(i, *roles.prev, Rational(omega, 9), "omega/9");
      } else if (prev_short) {
        give(i, *roles.prev, spare, "surplus to prev");
      }
    } else if (prev_short) {
      give(i, *roles.prev, spare, "surplus to prev");
    }
  }

  CheckResult budget{"budget", "4 O_i / 9 + sum_j H_ij <= A_i on surplus cells",
                     true, {}, {}};
  CheckResult ratio{"ratio", "4 O_i <= 9 B_i for every cell", true, {}, {}};
  Rational credit_sum(0);
  int accepted_sum = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto& row = cert.cells[i];
    row.credit = row.surplus ? target(i) : Rational(row.accepted) + row.received;
    credit_sum += row.credit;
    accepted_sum += row.accepted;
    if (row.surplus && target(i) + row.given > Rational(row.accepted)) {
      budget.fail(row.cell, "gives " + to_string(row.given) + " of spare " +
                                to_string(Rational(row.accepted) - target(i)));
    }
    if (Rational(4 * row.opt) > 9 * row.credit) {
      ratio.fail(row.cell, "O=" + std::to_string(row.opt) +
                               " B=" + to_string(row.credit));
    }
  }
  CheckResult sum{"sum", "sum B_i <= sum A_i", true, {}, {}};
  if (credit_sum > Rational(accepted_sum)) {
    sum.passed = false;
    sum.detail = "sum B = " + to_string(credit_sum) +
                 " > sum A = " + std::to_string(accepted_sum);
  }

  // Pairings between a cell and the neighbor sharing its ranges that the case
  // analysis takes for granted. A failure where one does not hold is reported
  // as uncovered with the broken pairing named.
  const FrequencyPartition& p = *trace.partition();
  const auto accepted = [&](std::size_t i) { return cert.cells[i].accepted; };
  const auto premise_gap = [&](const std::string& check,
                               std::size_t i) -> std::optional<std::string> {
    const Color own = color_of(net.cell(i));
    const auto* a = std::get_if<StructureA>(&configs[i]);
    const bool spread = a && a->k >= 2;
    if (check == "budget") {
      if (spread || 3 * accepted(i) <= omega) return std::nullopt;
      const auto next = two_color_roles(net, i).next;
      if (!next || !deficit(*next)) return std::nullopt;
      if (3 * (accepted(i) + accepted(*next)) == 2 * omega) return std::nullopt;
      return "A_i + A_j != 2 omega / 3 with deficit neighbor " +
             to_string(net.cell(*next));
    }
    if (3 * accepted(i) < omega) {
      std::optional<std::size_t> taker;
      for (std::size_t j : net.neighbor_indices(i)) {
        if (trace.state().count_in(j, p.range(own)) == 0) continue;
        if (3 * (accepted(i) + accepted(j)) == 2 * omega) return std::nullopt;
        taker = j;
      }
      if (!taker) return std::nullopt;
      return "neighbor " + to_string(net.cell(*taker)) +
             " spills into this cell's range but A_i + A_j != 2 omega / 3";
    }
    if (spread) {
      if (3 * accepted(i) == 2 * omega) return std::nullopt;
      for (std::size_t j : net.neighbor_indices(i)) {
        if (accepted(i) + accepted(j) == omega) return std::nullopt;
      }
      return "neither A_i = 2 omega / 3 nor A_i + A_j = omega for a neighbor";
    }
    const auto next = two_color_roles(net, i).next;
    if (!next || 3 * (accepted(i) + accepted(*next)) >= 2 * omega) {
      return std::nullopt;
    }
    return "A_i + A_j < 2 omega / 3 with spill neighbor " +
           to_string(net.cell(*next));
  };

  // A failing cell counts as uncovered when it, or a neighbor, has a layout
  // the case analysis does not picture, or when a pairing above breaks.
  for (const CheckResult* check : {&budget, &ratio}) {
    for (CellId c : check->counterexamples) {
      const std::size_t i = net.index_of(c);
      std::optional<std::string> why;
      if (cert.cells[i].flag) {
        why = "own layout: " + *cert.cells[i].flag;
      }
      for (std::size_t j : net.neighbor_indices(i)) {
        if (!why && cert.cells[j].flag) {
          why = "neighbor " + to_string(net.cell(j)) + ": " + *cert.cells[j].flag;
        }
      }
      if (!why) {
        if (auto gap = premise_gap(check->id, i)) why = "premise: " + *gap;
      }
      if (why) cert.uncovered.push_back(check->id + " at " + to_string(c) +
                                        " (" + *why + ")");
    }
  }

  cert.checks = {std::move(budget), std::move(sum), std::move(ratio)};
  return cert;
}

std::string RatioReport::text() const {
  if (infinite()) return "inf";
  return to_display(*value);
}

RatioReport ratio_report(int online_total, int opt_total) {
  RatioReport r;
  r.online = online_total;
  r.opt = opt_total;
  if (online_total == 0 && opt_total == 0) {
    r.value = Rational(1);
  } else if (online_total > 0) {
    r.value = Rational(opt_total, online_total);
  }
  return r;
}

RatioReport ratio_report(const RunTrace& trace, const OptimumWitness& opt) {
  return ratio_report(trace.total_accepted(), opt.total);
}

}  // namespace callctl
