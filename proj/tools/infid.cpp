#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "infid/config.hpp"
#include "infid/errors.hpp"
#include "infid/experiment.hpp"
#include "infid/report.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return infid::kInfinity;
  std::size_t used = 0;
  const double p = std::stod(s, &used);
  if (used != s.size()) throw infid::InvalidInput("bad norm exponent '" + s + "'");
  return p;
}

int cmd_verify(const std::string& path, const std::string& output) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot open\n";
    return infid::kExitConfigError;
  }
  infid::ExperimentConfig cfg;
  try {
    cfg = infid::parse_config(text);
  } catch (const infid::ParseError& e) {
    std::cerr << path << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
    return infid::kExitConfigError;
  }
  if (!output.empty()) cfg.output = output;
  try {
    return infid::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return infid::kExitConfigError;
  }
}

int cmd_plot(const std::string& path, const std::string& out_dir, const std::string& stem) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot open\n";
    return infid::kExitConfigError;
  }
  try {
    const auto records = infid::parse_report(text);
    const auto files = infid::emit_plotdata(records, out_dir, stem);
    std::cout << files.thm1.string() << "\n" << files.thm4_4.string() << "\n" << files.thm2_fix.string() << "\n";
  } catch (const infid::ParseError& e) {
    std::cerr << path << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
    return infid::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return infid::kExitConfigError;
  }
  return 0;
}

int cmd_generate(std::uint64_t seed, const std::string& regime, std::size_t n, const std::string& p) {
  try {
    const infid::Space space(n, parse_p(p));
    std::cout << infid::config_skeleton(seed, infid::regime_from_string(regime), space) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return infid::kExitConfigError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infimum identity verifier"};
  app.require_subcommand(1);

  std::string config_path, output;
  auto* verify = app.add_subcommand("verify", "Run the verifiers listed in a config file");
  verify->add_option("config", config_path, "Config file (JSON)")->required();
  verify->add_option("-o,--output", output, "Override the report path from the config");

  std::string report_path, out_dir = ".", stem = "plot";
  auto* plot = app.add_subcommand("plot", "Write CSV plot tables from a report");
  plot->add_option("report", report_path, "Report file (JSON Lines)")->required();
  plot->add_option("--out-dir", out_dir, "Directory for the CSV files");
  plot->add_option("--stem", stem, "File name prefix");

  std::uint64_t seed = 0;
  std::string regime = "EQUAL", p = "2";
  std::size_t n = 2;
  auto* generate = app.add_subcommand("generate", "Print a config skeleton with a generated instance");
  generate->add_option("--seed", seed, "Instance seed")->required();
  generate->add_option("--regime", regime, "EQUAL or STRICT_LESS")->check(CLI::IsMember({"EQUAL", "STRICT_LESS"}));
  generate->add_option("--n", n, "Dimension")->check(CLI::PositiveNumber);
  generate->add_option("--p", p, "Norm exponent: 1, 2, inf or any p > 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : infid::kExitConfigError;
  }

  if (*verify) return cmd_verify(config_path, output);
  if (*plot) return cmd_plot(report_path, out_dir, stem);
  return cmd_generate(seed, regime, n, p);
}
