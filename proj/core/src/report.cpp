#include "infid/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "infid/errors.hpp"

namespace infid {

namespace {

using nlohmann::json;

Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  throw InvalidInput("report: unknown verdict '" + s + "'");
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "CLOSED_FORM") return Provenance::ClosedForm;
  if (s == "OPTIMIZER") return Provenance::Optimizer;
  if (s == "ORACLE") return Provenance::Oracle;
  throw InvalidInput("report: unknown provenance '" + s + "'");
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidInput("report: expected a number");
}

}  // namespace

std::string format_report_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string serialize_record(const ReportRecord& rec) {
  const VerificationReport& r = rec.report;
  std::string out = "{";
  out += "\"statement_id\":\"" + std::string(to_string(r.statement)) + "\"";
  out += ",\"instance\":" + std::to_string(rec.instance);
  out += ",\"gamma\":" + (rec.gamma ? std::to_string(*rec.gamma) : std::string("null"));
  out += ",\"lhs\":" + format_report_number(r.lhs);
  out += ",\"rhs\":" + format_report_number(r.rhs);
  out += ",\"gap\":" + (r.both_unbounded ? std::string("\"both -inf\"") : format_report_number(r.gap));
  out += ",\"tolerance\":" + format_report_number(r.tolerance);
  out += ",\"verdict\":\"" + std::string(to_string(r.verdict)) + "\"";
  out += ",\"lhs_provenance\":\"" + std::string(to_string(r.lhs_provenance)) + "\"";
  out += ",\"rhs_provenance\":\"" + std::string(to_string(r.rhs_provenance)) + "\"";
  out += ",\"budget_used\":" + std::to_string(r.budget_used);
  out += ",\"seed\":" + std::to_string(rec.seed);
  out += ",\"note\":" + json(r.note).dump();
  out += ",\"series\":[";
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    if (i) out += ',';
    out += "[" + format_report_number(r.series[i].first) + "," + format_report_number(r.series[i].second) + "]";
  }
  out += "]}";
  return out;
}

std::string serialize_report(const std::vector<ReportRecord>& records) {
  std::string out;
  for (const auto& r : records) out += serialize_record(r) + "\n";
  return out;
}

std::vector<ReportRecord> parse_report(std::string_view text) {
  std::vector<ReportRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ReportRecord rec;
      VerificationReport& r = rec.report;
      r.statement = statement_from_string(j.at("statement_id").get<std::string>());
      rec.instance = j.at("instance").get<int>();
      if (!j.at("gamma").is_null()) rec.gamma = j.at("gamma").get<int>();
      r.lhs = number_from(j.at("lhs"));
      r.rhs = number_from(j.at("rhs"));
      if (j.at("gap").is_string() && j.at("gap").get<std::string>() == "both -inf") {
        r.both_unbounded = true;
        r.gap = 0.0;
      } else {
        r.gap = number_from(j.at("gap"));
      }
      r.tolerance = number_from(j.at("tolerance"));
      r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
      r.lhs_provenance = provenance_from_string(j.at("lhs_provenance").get<std::string>());
      r.rhs_provenance = provenance_from_string(j.at("rhs_provenance").get<std::string>());
      r.budget_used = j.at("budget_used").get<long long>();
      rec.seed = j.at("seed").get<std::uint64_t>();
      r.note = j.value("note", std::string());
      if (j.contains("series")) {
        for (const auto& p : j.at("series")) r.series.emplace_back(number_from(p.at(0)), number_from(p.at(1)));
      }
      out.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw ParseError("report:" + std::to_string(line_no) + ": " + e.what(), line_no, 1);
    } catch (const InvalidInput& e) {
      throw ParseError("report:" + std::to_string(line_no) + ": " + e.what(), line_no, 1);
    }
  }
  return out;
}

std::string summary_table(const std::vector<ReportRecord>& records) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %8s %6s %20s %20s %14s %-12s\n", "statement", "instance", "gamma", "lhs",
                "rhs", "gap", "verdict");
  out += buf;
  int pass = 0, fail = 0, inconclusive = 0;
  for (const auto& rec : records) {
    const auto& r = rec.report;
    const std::string gamma = rec.gamma ? std::to_string(*rec.gamma) : "-";
    auto num = [](double v) {
      char b[32];
      std::snprintf(b, sizeof(b), "%.12g", v);
      return std::string(b);
    };
    const std::string gap = r.both_unbounded ? "both -inf" : num(r.gap);
    std::snprintf(buf, sizeof(buf), "%-10s %8d %6s %20s %20s %14s %-12s\n", to_string(r.statement), rec.instance,
                  gamma.c_str(), num(r.lhs).c_str(), num(r.rhs).c_str(), gap.c_str(), to_string(r.verdict));
    out += buf;
    switch (r.verdict) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::Inconclusive: ++inconclusive; break;
    }
  }
  std::snprintf(buf, sizeof(buf), "%d records: %d PASS, %d FAIL, %d INCONCLUSIVE\n", static_cast<int>(records.size()),
                pass, fail, inconclusive);
  out += buf;
  return out;
}

}  // namespace infid
