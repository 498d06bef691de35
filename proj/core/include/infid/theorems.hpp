#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infid/banach.hpp"
#include "infid/functional.hpp"
#include "infid/gamma.hpp"
#include "infid/optimizer.hpp"

namespace infid {

enum class StatementId { Thm1, Thm2Fix, Thm2Haus, Thm3, Thm4_3, Thm4_4, Thm4_5, Thm4_6, Prop1, Prop21 };
enum class Verdict { Pass, Fail, Inconclusive };
enum class Provenance { ClosedForm, Optimizer, Oracle };

const char* to_string(StatementId id);
const char* to_string(Verdict v);
const char* to_string(Provenance p);
// Throws InvalidInput for unknown names.
StatementId statement_from_string(const std::string& name);
std::vector<StatementId> all_statements();

struct Tolerances {
  double optimizer = 1e-3;    // sides that come out of a budgeted search
  double closed_form = 1e-9;  // both sides algebraic
  double hausdorff_rel = 0.05;
  double rate_slack = 0.05;
  double ray_rel = 0.01;
};

struct VerificationReport {
  StatementId statement = StatementId::Thm1;
  double lhs = 0.0;
  double rhs = 0.0;
  // |lhs - rhs|; 0 with both_unbounded set when both sides are certified -inf.
  double gap = 0.0;
  bool both_unbounded = false;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  Provenance lhs_provenance = Provenance::Optimizer;
  Provenance rhs_provenance = Provenance::Optimizer;
  long long budget_used = 0;
  std::string note;
  // Plot data: (radius, shell inf) for THM4_4, (iteration, step norm) for THM2_FIX.
  std::vector<std::pair<double, double>> series;
};

// One side of an identity: a value with the certainty attached to it.
struct SideValue {
  InfStatus status = InfStatus::Inconclusive;
  double value = 0.0;
  Provenance provenance = Provenance::Optimizer;
  long long evals = 0;
};

// PASS iff both finite within tolerance or both certified unbounded; INCONCLUSIVE whenever a
// side is; FAIL otherwise.
VerificationReport compare_sides(StatementId id, const SideValue& lhs, const SideValue& rhs, double tolerance);

// max over the endpoints of inf(phi + lambda psi) - gamma(lambda); interior endpoints use the
// analytic ray certificate.
SideValue endpoint_side(const ProblemInstance& inst, const GammaFn& g, const SearchBudget& budget);

// inf over x of phi(x) + sup_{lambda in [a,b]} (lambda psi(x) - gamma(lambda)).
SideValue minimax_side(const ProblemInstance& inst, const GammaFn& g, const SearchBudget& budget);

// Region of x by psi(x) against inf / sup of gamma'. Ties go to A or B, never C.
enum class Region { A, B, C };
const char* to_string(Region r);

class RegionPartition {
 public:
  RegionPartition(LipschitzFn psi, double deriv_inf, double deriv_sup)
      : psi_(std::move(psi)), lo_(deriv_inf), hi_(deriv_sup) {}
  explicit RegionPartition(const ProblemInstance& inst, const GammaFn& g)
      : RegionPartition(inst.psi(), g.deriv_inf(), g.deriv_sup()) {}

  Region classify(ConstVectorView x) const { return classify_value(psi_(x)); }
  Region classify_value(double psi_value) const {
    if (psi_value <= lo_) return Region::A;
    if (psi_value >= hi_) return Region::B;
    return Region::C;
  }

 private:
  LipschitzFn psi_;
  double lo_;
  double hi_;
};

// Min over the A/B/C region infima (empty regions contribute +inf).
SideValue region_side(const ProblemInstance& inst, const GammaFn& g, const SearchBudget& budget);

// Requires the EQUAL regime (HypothesisViolation otherwise).
VerificationReport verify_theorem1(const ProblemInstance& inst, const GammaFn& g, const SearchBudget& budget,
                                   const Tolerances& tol = {});

// Also requires strictly increasing gamma' (UnsupportedOperation otherwise).
VerificationReport verify_theorem3(const ProblemInstance& inst, const GammaFn& g, const SearchBudget& budget,
                                   const Tolerances& tol = {});

// Reports THM4_3, THM4_4, THM4_5, THM4_6 in that order.
std::vector<VerificationReport> verify_theorem4(const ProblemInstance& inst, const SearchBudget& budget,
                                                const Tolerances& tol = {});

struct FixedPointResult {
  Vector x_star;
  // Largest ratio of successive step norms.
  double rate = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> step_norms;
};

// Iterates x <- projection of x onto G(r - lambda psi(x)). Needs |lambda| < 1 and p = 2.
FixedPointResult fixed_point_iterate(const ProblemInstance& inst, double lambda, double r, ConstVectorView x0,
                                     int max_iters = 10000);

// x in F(x), i.e. phi(x) <= r - lambda psi(x), and the projection selection leaves x unchanged.
bool is_fixed_point(const ProblemInstance& inst, double lambda, double r, ConstVectorView x);

// Fixed-point runs from random starts plus the sublevel-set membership check (THM2_FIX).
VerificationReport verify_fixed_point(const ProblemInstance& inst, double lambda, double r, int starts,
                                      std::uint64_t seed, const Tolerances& tol = {});

// Closed-form Hausdorff distance against the sampled estimator (THM2_HAUS).
VerificationReport verify_hausdorff(const LinearFunctional& phi, const Space& space, double t, double s,
                                    std::size_t samples, std::uint64_t seed, const Tolerances& tol = {});

// phi + |psi - r| has no attained global minimum (PROP1). Certifiable only for psi a smooth
// distance with ||psi'|| < ||phi||_* everywhere; INCONCLUSIVE otherwise.
VerificationReport check_nonattainment(const ProblemInstance& inst, double r, const SearchBudget& budget,
                                       const Tolerances& tol = {});

// Margin inf over ||x||_2 <= radius of min(||psi'(x) - phi||, ||psi'(x) + phi||) for a smooth
// distance psi; nullopt when psi is not of that form.
std::optional<double> derivative_margin(const ProblemInstance& inst, double radius);

// Decay of phi + lambda psi along the certified ray at t = 1000 against the certified slope (PROP21).
VerificationReport verify_unboundedness(const ProblemInstance& inst, double lambda, const Tolerances& tol = {});

// Objective builders shared with tests.
Objective tilted(const ProblemInstance& inst, double lambda);  // phi + lambda psi
Objective minimax_objective(const ProblemInstance& inst, const GammaFn& g);
Objective abs_objective(const ProblemInstance& inst);        // phi + |psi|
Objective abs_exp_objective(const ProblemInstance& inst);    // phi + |psi| + exp(-|psi|)
Objective shifted_abs_objective(const ProblemInstance& inst, double r);  // phi + |psi - r|

}  // namespace infid
