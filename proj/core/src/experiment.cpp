#include "infid/experiment.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "infid/errors.hpp"

namespace infid {

namespace {

// Stable per-record seed: instance and gamma indices folded into the config seed.
std::uint64_t record_seed(std::uint64_t seed, int instance, int gamma) {
  std::uint64_t h = seed * 0x100000001B3ULL + 0xCBF29CE484222325ULL;
  h ^= static_cast<std::uint64_t>(instance) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(gamma + 1) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h;
}

VerificationReport unsupported(StatementId id, const std::string& why) {
  VerificationReport r;
  r.statement = id;
  r.lhs = r.rhs = r.gap = std::numeric_limits<double>::quiet_NaN();
  r.verdict = Verdict::Inconclusive;
  r.note = why;
  return r;
}

}  // namespace

std::vector<ReportRecord> execute(const ExperimentConfig& config) {
  std::vector<ReportRecord> records;
  const int n_inst = static_cast<int>(config.instances.size());
  const int n_gamma = static_cast<int>(config.gammas.size());

  for (StatementId id : config.statements) {
    const bool thm4 = id == StatementId::Thm4_3 || id == StatementId::Thm4_4 || id == StatementId::Thm4_5 ||
                      id == StatementId::Thm4_6;
    for (int i = 0; i < n_inst; ++i) {
      const ProblemInstance& inst = config.instances[static_cast<std::size_t>(i)];
      if (id == StatementId::Thm1 || id == StatementId::Thm3) {
        for (int k = 0; k < n_gamma; ++k) {
          const GammaFn& g = config.gammas[static_cast<std::size_t>(k)];
          ReportRecord rec;
          rec.instance = i;
          rec.gamma = k;
          rec.seed = record_seed(config.seed, i, k);
          SearchBudget budget = config.budget;
          budget.seed = rec.seed;
          if (id == StatementId::Thm1) {
            rec.report = verify_theorem1(inst, g, budget, config.tolerance);
          } else if (!g.strictly_increasing_derivative()) {
            rec.report = unsupported(id, "gamma' not strictly increasing (" + g.kind_name() + ")");
          } else {
            rec.report = verify_theorem3(inst, g, budget, config.tolerance);
          }
          records.push_back(std::move(rec));
        }
        continue;
      }

      ReportRecord rec;
      rec.instance = i;
      rec.seed = record_seed(config.seed, i, -1);
      SearchBudget budget = config.budget;
      budget.seed = rec.seed;
      switch (id) {
        case StatementId::Thm2Fix:
          if (!inst.space().is_euclidean()) {
            rec.report = unsupported(id, "fixed-point selection needs p = 2");
          } else {
            rec.report = verify_fixed_point(inst, config.fixed_point.lambda, config.fixed_point.r,
                                            config.fixed_point.starts, rec.seed, config.tolerance);
          }
          break;
        case StatementId::Thm2Haus:
          rec.report = verify_hausdorff(inst.phi(), inst.space(), config.hausdorff.t, config.hausdorff.s,
                                        config.hausdorff.samples, rec.seed, config.tolerance);
          break;
        case StatementId::Prop1:
          rec.report = check_nonattainment(inst, config.nonattainment_r, budget, config.tolerance);
          break;
        case StatementId::Prop21: {
          const double lambda = config.unboundedness_lambda.value_or(inst.regime() == Regime::Equal ? 0.5 : 1.0);
          rec.report = verify_unboundedness(inst, lambda, config.tolerance);
          break;
        }
        default:
          if (thm4) {
            // One THM4 run yields all four identities; keep the requested one.
            const auto reps = verify_theorem4(inst, budget, config.tolerance);
            for (const auto& r : reps) {
              if (r.statement == id) rec.report = r;
            }
          }
          break;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

int exit_code_for(const std::vector<ReportRecord>& records) {
  bool fail = false;
  bool inconclusive = false;
  for (const auto& r : records) {
    fail = fail || r.report.verdict == Verdict::Fail;
    inconclusive = inconclusive || r.report.verdict == Verdict::Inconclusive;
  }
  if (fail) return kExitFail;
  if (inconclusive) return kExitInconclusive;
  return kExitPass;
}

int run(const ExperimentConfig& config, std::ostream& log) {
  const auto records = execute(config);
  const std::string report = serialize_report(records);
  const std::string summary = summary_table(records);
  {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw InvalidInput("cannot write report to '" + config.output + "'");
    out << report;
  }
  {
    std::ofstream out(config.output + ".summary.txt", std::ios::binary);
    if (!out) throw InvalidInput("cannot write summary next to '" + config.output + "'");
    out << summary;
  }
  log << summary;
  return exit_code_for(records);
}

PlotFiles emit_plotdata(const std::vector<ReportRecord>& records, const std::filesystem::path& out_dir,
                        const std::string& stem) {
  std::filesystem::create_directories(out_dir);
  PlotFiles files{out_dir / (stem + ".thm1.csv"), out_dir / (stem + ".thm4_4.csv"),
                  out_dir / (stem + ".thm2_fix.csv")};
  std::ofstream thm1(files.thm1, std::ios::binary);
  std::ofstream thm44(files.thm4_4, std::ios::binary);
  std::ofstream fix(files.thm2_fix, std::ios::binary);
  if (!thm1 || !thm44 || !fix) throw InvalidInput("cannot write plot data into '" + out_dir.string() + "'");

  // CSV cells reuse the report number format minus the JSON quotes.
  auto cell = [](double v) {
    std::string s = format_report_number(v);
    if (!s.empty() && s.front() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  thm1 << "instance,gamma,lhs,rhs,gap\n";
  thm44 << "instance,R,shell_inf\n";
  fix << "instance,iteration,step_norm\n";
  for (const auto& rec : records) {
    const auto& r = rec.report;
    switch (r.statement) {
      case StatementId::Thm1:
        thm1 << rec.instance << ',' << (rec.gamma ? std::to_string(*rec.gamma) : "") << ',' << cell(r.lhs) << ','
             << cell(r.rhs) << ',' << (r.both_unbounded ? "both -inf" : cell(r.gap)) << '\n';
        break;
      case StatementId::Thm4_4:
        for (const auto& [R, v] : r.series) thm44 << rec.instance << ',' << cell(R) << ',' << cell(v) << '\n';
        break;
      case StatementId::Thm2Fix:
        for (const auto& [k, v] : r.series) fix << rec.instance << ',' << cell(k) << ',' << cell(v) << '\n';
        break;
      default:
        break;
    }
  }
  return files;
}

}  // namespace infid
