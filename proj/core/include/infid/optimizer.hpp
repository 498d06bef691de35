#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infid/banach.hpp"
#include "infid/functional.hpp"

namespace infid {

// Objectives must be defined on all of R^n and reentrant.
using Objective = std::function<double(ConstVectorView)>;
using Predicate = std::function<bool(ConstVectorView)>;

enum class InfStatus { Finite, UnboundedBelow, Inconclusive };

const char* to_string(InfStatus status);

// Half-line base + t * direction (||direction||_p = 1) along which the objective drops at
// least at rate |slope|.
struct Ray {
  Vector base;
  Vector direction;
  double slope;
};

struct SearchBudget {
  int starts = 32;
  int iters_per_start = 2000;
  std::vector<double> radii{1.0, 10.0, 100.0, 1000.0};
  std::uint64_t seed = 0;

  // Throws InvalidInput unless every field is positive and radii strictly increase.
  void validate() const;
};

// Best point found inside the ball of one radius.
struct RadiusTrace {
  double radius;
  double value;
  double witness_norm;
  Vector witness;
};

struct InfResult {
  InfStatus status = InfStatus::Inconclusive;
  // -inf when unbounded below.
  double value = 0.0;
  // Best point found (also set for unbounded results, as the far end of the search).
  Vector witness;
  std::optional<Ray> ray;
  // The ray came from instance structure rather than the empirical fit.
  bool analytic_ray = false;
  long long budget_used = 0;
  std::vector<RadiusTrace> trace;
};

struct SearchOptions {
  // Candidate certificate; if it verifies, the search is skipped.
  std::optional<Ray> ray_hint;
  // Restricts the search to {feasible}; moves that leave it are rejected.
  Predicate feasible;
  // Extra start points (used when feasible, projected into each ball).
  std::vector<Vector> seeds;
};

// Sampled certificate: slope < 0 and f(base + t d) <= f(base) + 0.99 slope t for
// t in {1, 10, 100, 1000}, with every sample feasible when a predicate is given.
bool verify_ray(const Objective& f, const Ray& ray, const Predicate& feasible = {});

// Multistart pattern search over balls of growing radius. FINITE when the best value stalls
// (or its improvements shrink geometrically) across the radii, UNBOUNDED_BELOW when it drops
// linearly with the radius and a ray certificate verifies, INCONCLUSIVE otherwise.
InfResult estimate_inf(const Objective& f, const Space& space, const SearchBudget& budget,
                       const SearchOptions& options = {});

// Ray from the origin along -norming_direction(phi) on which phi + lambda psi decreases at rate
// at least ||phi||_* - |lambda| L. Requires |lambda| L < ||phi||_* (|lambda| < 1 when L = ||phi||_*).
std::optional<Ray> unboundedness_certificate(const ProblemInstance& inst, double lambda);

// Estimated infimum over the annulus r_low <= ||x||_p <= r_high.
double shell_inf(const Objective& f, const Space& space, double r_low, double r_high,
                 const SearchBudget& budget);

// Exact minimum over the uniform grid of points_per_axis^n points on [-radius, radius]^n.
// Dimension above 3 is refused.
double grid_oracle(const Objective& f, const Space& space, double radius, int points_per_axis);

}  // namespace infid
