#include <algorithm>
#include <cstdio>
#include <sstream>

#include "callctl/error.hpp"
#include "callctl/harness.hpp"

namespace callctl {

namespace {

constexpr const char* kCsvHeader =
    "q,r,color,demand,online_accepted,opt_accepted\n";

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string opt_text(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "-";
}

std::string ratio_csv(const std::optional<RatioReport>& r) {
  if (!r) return "";
  return r->infinite() ? "inf" : to_string(*r->value);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_rows_csv(std::ostream& out, const RunReport& report) {
  out << kCsvHeader;
  std::vector<const ReportRow*> rows;
  for (const auto& r : report.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [](const ReportRow* a, const ReportRow* b) { return a->cell < b->cell; });
  for (const ReportRow* r : rows) {
    out << r->cell.q << ',' << r->cell.r << ',' << to_char(r->color) << ','
        << r->demand << ',' << r->online << ','
        << (r->opt ? std::to_string(*r->opt) : "") << '\n';
  }
}

void write_report_text(std::ostream& out, const RunReport& report) {
  out << "scenario:  " << (report.scenario.empty() ? "-" : report.scenario)
      << '\n'
      << "algorithm: " << report.algorithm << '\n'
      << "traffic:   " << report.traffic << '\n'
      << "omega:     " << report.omega << '\n'
      << "suite:     " << report.suite_version << "\n\n";

  out << lpad("q", 4) << lpad("r", 4) << "  color" << lpad("demand", 8)
      << lpad("online", 8) << lpad("opt", 6) << '\n';
  for (const auto& r : report.rows) {
    out << lpad(std::to_string(r.cell.q), 4) << lpad(std::to_string(r.cell.r), 4)
        << "  " << pad(std::string(1, to_char(r.color)), 5)
        << lpad(std::to_string(r.demand), 8) << lpad(std::to_string(r.online), 8)
        << lpad(opt_text(r.opt), 6) << '\n';
  }
  out << "\ntotals: demand " << report.total_demand << ", online "
      << report.total_online << ", opt " << opt_text(report.total_opt) << '\n';
  if (report.ratio) out << "ratio:  " << report.ratio->text() << '\n';

  if (!report.phases.empty()) {
    out << "\nphases:\n";
    for (const auto& p : report.phases) {
      out << "  " << p.phase << ": online " << p.online << ", opt " << p.opt
          << ", ratio " << p.ratio.text() << '\n';
    }
    out << "adversary ratio (largest phase): " << report.adversary_ratio->text()
        << '\n';
  }

  if (report.certificate) {
    const auto& cert = *report.certificate;
    out << "\ncertificate (" << cert.kind << "): " << cert.status << '\n';
    for (const auto& c : cert.checks) {
      out << "  " << pad(c.id, 14) << (c.passed ? "pass" : "FAIL") << "  "
          << c.description << '\n';
      if (!c.passed && !c.detail.empty()) out << "      " << c.detail << '\n';
    }
    for (const auto& u : cert.uncovered) out << "  uncovered: " << u << '\n';
  }

  if (!report.bounds.empty()) {
    out << "\nbounds:\n";
    for (const auto& b : report.bounds) {
      out << "  " << pad(b.id, 14) << (b.passed ? "pass" : "FAIL") << "  "
          << b.description;
      if (!b.detail.empty()) out << "  [" << b.detail << "]";
      out << '\n';
    }
  }
  out << "\nstatus: " << (report.ok() ? "ok" : "FAILED") << '\n';
}

std::string settings_text(const SweepPoint& p) {
  std::string s;
  for (const auto& [k, v] : p.settings) {
    if (!s.empty()) s += ' ';
    s += k + "=" + v;
  }
  return s;
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw ConfigError("unknown report format '" + std::string(name) +
                    "' (expected csv or text)");
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    write_rows_csv(out, report);
  } else {
    write_report_text(out, report);
  }
  return out.str();
}

std::string emit_sweep(const SweepResult& result, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "point,settings,algorithm,omega,online,opt,ratio,status\n";
    for (std::size_t k = 0; k < result.points.size(); ++k) {
      const auto& p = result.points[k];
      out << k << ',' << csv_field(settings_text(p)) << ',';
      if (!p.report) {
        out << ",,,,," << csv_field("error: " + p.error) << '\n';
        continue;
      }
      const auto& r = *p.report;
      out << csv_field(r.algorithm) << ',' << r.omega << ',' << r.total_online
          << ',' << opt_text(r.total_opt) << ',' << ratio_csv(r.headline_ratio())
          << ',' << (r.ok() ? "ok" : "failed") << '\n';
    }
    return out.str();
  }

  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const auto& p = result.points[k];
    out << lpad(std::to_string(k), 3) << "  " << pad(settings_text(p), 36);
    if (!p.report) {
      out << "error: " << p.error << '\n';
      continue;
    }
    const auto& r = *p.report;
    const auto ratio = r.headline_ratio();
    out << "online " << lpad(std::to_string(r.total_online), 4) << "  opt "
        << lpad(opt_text(r.total_opt), 4) << "  ratio "
        << pad(ratio ? ratio->text() : "-", 22) << (r.ok() ? "ok" : "FAILED")
        << '\n';
    for (const auto& b : r.bounds) {
      if (!b.passed) out << "     failed " << b.id << ": " << b.detail << '\n';
    }
  }
  out << "\nsummary:\n";
  if (result.summary.empty()) out << "  (no points)\n";
  for (const auto& s : result.summary) {
    out << "  " << pad(s.algorithm, 16) << "points " << s.points
        << "  failures " << s.failures << "  min "
        << (s.min_ratio ? s.min_ratio->text() : "-") << "  max "
        << (s.max_ratio ? s.max_ratio->text() : "-") << '\n';
  }
  return out.str();
}

}  // namespace callctl
