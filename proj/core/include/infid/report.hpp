#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infid/theorems.hpp"

namespace infid {

// One line of the report stream.
struct ReportRecord {
  VerificationReport report;
  int instance = 0;
  std::optional<int> gamma;
  std::uint64_t seed = 0;
};

// Numbers as %.12g; non-finite values as the strings "-inf", "inf", "nan".
std::string format_report_number(double v);

// JSON Lines, one record per line, keys in a fixed order.
std::string serialize_record(const ReportRecord& rec);
std::string serialize_report(const std::vector<ReportRecord>& records);

// Inverse of serialize_report (numbers come back at 12 significant digits).
std::vector<ReportRecord> parse_report(std::string_view text);

// Fixed-width table of statement, instance, gamma, lhs, rhs, gap and verdict.
std::string summary_table(const std::vector<ReportRecord>& records);

}  // namespace infid
