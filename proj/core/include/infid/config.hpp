#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infid/functional.hpp"
#include "infid/gamma.hpp"
#include "infid/optimizer.hpp"
#include "infid/theorems.hpp"

namespace infid {

struct FixedPointSettings {
  double lambda = 0.5;
  double r = 0.0;
  int starts = 100;
};

struct HausdorffSettings {
  double t = 0.0;
  double s = 1.0;
  std::size_t samples = 10000;
};

// Everything one `verify` run needs. Built from JSON text by parse_config; all randomness
// derives from `seed`.
struct ExperimentConfig {
  std::vector<ProblemInstance> instances;
  std::vector<GammaFn> gammas;
  std::vector<StatementId> statements;
  SearchBudget budget;
  std::uint64_t seed = 0;
  std::string output = "report.jsonl";
  Tolerances tolerance;
  FixedPointSettings fixed_point;
  HausdorffSettings hausdorff;
  double nonattainment_r = 2.0;
  // Unset: 0.5 for EQUAL instances and 1 for STRICT_LESS ones.
  std::optional<double> unboundedness_lambda;
};

// Throws ParseError with 1-based line/column into `text` for malformed JSON, unknown keys,
// type errors, invalid parameters, and regime/statement mismatches.
ExperimentConfig parse_config(std::string_view text);

// Config text for one generated instance, ready to edit and feed back to parse_config.
std::string config_skeleton(std::uint64_t seed, Regime regime, const Space& space);

std::string format_space_p(double p);

}  // namespace infid
