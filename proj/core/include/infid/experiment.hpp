#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "infid/config.hpp"
#include "infid/report.hpp"

namespace infid {

enum ExitCode : int { kExitPass = 0, kExitConfigError = 1, kExitFail = 2, kExitInconclusive = 3 };

// Runs every requested statement over every instance (and gamma, for THM1/THM3). Records come
// back ordered by statement, then instance, then gamma.
std::vector<ReportRecord> execute(const ExperimentConfig& config);

// 0 if all PASS, 2 if any FAIL, 3 if any INCONCLUSIVE and none FAIL.
int exit_code_for(const std::vector<ReportRecord>& records);

// execute + write the report to config.output and the summary next to it (<output>.summary.txt).
int run(const ExperimentConfig& config, std::ostream& log);

struct PlotFiles {
  std::filesystem::path thm1;
  std::filesystem::path thm4_4;
  std::filesystem::path thm2_fix;
};

// CSV tables: THM1 (instance, gamma, lhs, rhs, gap), THM4_4 (instance, R, shell_inf),
// THM2_FIX (instance, iteration, step_norm). Headers are always written.
PlotFiles emit_plotdata(const std::vector<ReportRecord>& records, const std::filesystem::path& out_dir,
                        const std::string& stem = "plot");

}  // namespace infid
