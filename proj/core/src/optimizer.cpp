#include "infid/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "infid/errors.hpp"

namespace infid {

namespace {

constexpr double kMinStep = 1e-9;
constexpr double kStallTol = 1e-6;
constexpr double kSlopeTol = 1e-6;

// Poll set: every nonzero vector of {-1, 0, 1}^n for n <= 4, else coordinate and pairwise
// diagonal moves. Covers the kink directions of l1 / l-inf norms in low dimension.
std::vector<Vector> poll_directions(std::size_t n) {
  std::vector<Vector> dirs;
  if (n <= 4) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Vector d(n);
      std::size_t c = code;
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = static_cast<double>(c % 3) - 1.0;
        zero = zero && d[i] == 0.0;
        c /= 3;
      }
      if (!zero) dirs.push_back(std::move(d));
    }
    return dirs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector d(n, 0.0);
      d[i] = s;
      dirs.push_back(d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          Vector d(n, 0.0);
          d[i] = si;
          d[j] = sj;
          dirs.push_back(d);
        }
      }
    }
  }
  return dirs;
}

// Radial clamp onto {lo <= ||x|| <= hi}.
struct Domain {
  const Space* space;
  double lo;
  double hi;
  const Predicate* feasible;

  bool map(Vector& x) const {
    const double r = space->norm(x);
    if (r > hi) {
      for (double& v : x) v *= hi / r;
    } else if (r < lo) {
      if (r == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        x[0] = lo;
      } else {
        for (double& v : x) v *= lo / r;
      }
    }
    return !(feasible && *feasible) || (*feasible)(x);
  }
};

struct Point {
  Vector x;
  double f;
};

// Total order used to reduce over starts: value first, then the witness lexicographically.
bool better(const Point& a, const Point& b) {
  if (a.f != b.f) return a.f < b.f;
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

class Counter {
 public:
  explicit Counter(const Objective& f) : f_(f) {}
  double operator()(ConstVectorView x) {
    ++evals_;
    const double v = f_(x);
    return std::isnan(v) ? kInfinity : v;
  }
  long long evals() const noexcept { return evals_; }

 private:
  const Objective& f_;
  long long evals_ = 0;
};

Point pattern_search(Counter& f, Point start, const Domain& dom, int max_iters,
                     const std::vector<Vector>& dirs) {
  const std::size_t n = start.x.size();
  double h = 1.0;
  const double h_max = std::max(1.0, 2.0 * dom.hi);
  Vector trial(n);
  Vector best_trial(n);
  for (int it = 0; it < max_iters && h >= kMinStep; ++it) {
    double best_f = start.f;
    bool improved = false;
    for (const auto& d : dirs) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = start.x[i] + h * d[i];
      if (!dom.map(trial)) continue;
      const double ft = f(trial);
      if (ft < best_f) {
        best_f = ft;
        best_trial = trial;
        improved = true;
      }
    }
    if (improved) {
      start.x = best_trial;
      start.f = best_f;
      h = std::min(2.0 * h, h_max);
    } else {
      h *= 0.5;
    }
  }
  return start;
}

Vector random_in_ball(const Space& space, double lo, double hi, std::mt19937_64& rng) {
  Vector u = random_unit_vector(space, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Radius distributed as r^(1/n) so the volume is covered evenly.
  const double n = static_cast<double>(space.dim());
  const double lo_n = std::pow(lo, n);
  const double hi_n = std::pow(hi, n);
  const double r = std::pow(lo_n + unit(rng) * (hi_n - lo_n), 1.0 / n);
  for (double& v : u) v *= r;
  return u;
}

// Multistart search over one ball or annulus.
Point search_region(Counter& f, const Space& space, const Domain& dom, const SearchBudget& budget,
                    std::uint64_t stream, const std::vector<Vector>& fixed_starts,
                    const std::vector<Vector>& dirs) {
  std::mt19937_64 rng(budget.seed * 0x9E3779B97F4A7C15ULL + stream);
  std::vector<Vector> starts;
  for (const auto& s : fixed_starts) {
    Vector x = s;
    if (dom.map(x)) starts.push_back(std::move(x));
  }
  const int wanted = std::max(budget.starts, static_cast<int>(starts.size()));
  int attempts = 0;
  while (static_cast<int>(starts.size()) < wanted && attempts < 50 * budget.starts) {
    ++attempts;
    Vector x = random_in_ball(space, dom.lo, dom.hi, rng);
    if (dom.map(x)) starts.push_back(std::move(x));
  }

  std::optional<Point> best;
  for (auto& x : starts) {
    const double fx = f(x);
    Point p = pattern_search(f, {std::move(x), fx}, dom, budget.iters_per_start, dirs);
    if (!best || better(p, *best)) best = std::move(p);
  }
  if (!best) return {Vector(space.dim(), 0.0), kInfinity};
  return *best;
}

Vector normalized(Vector v, const Space& space) {
  const double r = space.norm(v);
  if (r == 0.0) return {};
  for (double& x : v) x /= r;
  return v;
}

}  // namespace

const char* to_string(InfStatus status) {
  switch (status) {
    case InfStatus::Finite: return "FINITE";
    case InfStatus::UnboundedBelow: return "UNBOUNDED_BELOW";
    case InfStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void SearchBudget::validate() const {
  if (starts <= 0) throw InvalidInput("budget: starts must be positive");
  if (iters_per_start <= 0) throw InvalidInput("budget: iters_per_start must be positive");
  if (radii.empty()) throw InvalidInput("budget: radii must not be empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InvalidInput("budget: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidInput("budget: radii must be strictly increasing");
  }
}

bool verify_ray(const Objective& f, const Ray& ray, const Predicate& feasible) {
  if (!(ray.slope < 0.0) || ray.base.size() != ray.direction.size()) return false;
  if (feasible && !feasible(ray.base)) return false;
  const double f0 = f(ray.base);
  if (!std::isfinite(f0)) return false;
  Vector x(ray.base.size());
  for (double t : {1.0, 10.0, 100.0, 1000.0}) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = ray.base[i] + t * ray.direction[i];
    if (feasible && !feasible(x)) return false;
    if (!(f(x) <= f0 + ray.slope * t * (1.0 - 0.01))) return false;
  }
  return true;
}

InfResult estimate_inf(const Objective& f, const Space& space, const SearchBudget& budget,
                       const SearchOptions& options) {
  budget.validate();
  Counter counted(f);
  InfResult result;

  if (options.ray_hint && verify_ray(f, *options.ray_hint, options.feasible)) {
    result.status = InfStatus::UnboundedBelow;
    result.value = -kInfinity;
    result.ray = options.ray_hint;
    result.analytic_ray = true;
    result.witness = options.ray_hint->base;
    result.budget_used = 8;
    return result;
  }

  const auto dirs = poll_directions(space.dim());
  const Predicate* feasible = options.feasible ? &options.feasible : nullptr;
  std::vector<Point> bests;
  for (std::size_t k = 0; k < budget.radii.size(); ++k) {
    const double radius = budget.radii[k];
    Domain dom{&space, 0.0, radius, feasible};
    std::vector<Vector> fixed = options.seeds;
    if (bests.empty()) {
      fixed.push_back(Vector(space.dim(), 0.0));
    } else if (std::isfinite(bests.back().f)) {
      fixed.insert(fixed.begin(), bests.back().x);
    }
    Point p = search_region(counted, space, dom, budget, k, fixed, dirs);
    if (!bests.empty() && better(bests.back(), p)) p = bests.back();
    result.trace.push_back({radius, p.f, space.norm(p.x), p.x});
    bests.push_back(std::move(p));
  }
  result.budget_used = counted.evals();

  const Point& last = bests.back();
  result.witness = last.x;
  result.value = last.f;
  if (!std::isfinite(last.f)) {
    // Nothing feasible was found.
    result.status = InfStatus::Inconclusive;
    return result;
  }

  const std::size_t m = bests.size();
  const double scale = std::max(1.0, std::abs(last.f));
  const double drop_last = m >= 2 ? bests[m - 2].f - bests[m - 1].f : 0.0;
  const double drop_prev = m >= 3 ? bests[m - 3].f - bests[m - 2].f : 0.0;
  const bool stalled = drop_last <= kStallTol * scale && drop_prev <= kStallTol * scale;

  if (m >= 2 && stalled) {
    result.status = InfStatus::Finite;
    return result;
  }

  const double slope_last = m >= 2 ? -drop_last / (budget.radii[m - 1] - budget.radii[m - 2]) : 0.0;
  if (m >= 2 && slope_last <= -kSlopeTol && (m < 3 || drop_last >= 2.0 * drop_prev)) {
    // Linear decay in the radius: fit a ray through the last two witnesses and certify it.
    Vector dir(space.dim());
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = bests[m - 1].x[i] - bests[m - 2].x[i];
    dir = normalized(std::move(dir), space);
    if (!dir.empty()) {
      Vector probe(dir.size());
      for (std::size_t i = 0; i < dir.size(); ++i) probe[i] = last.x[i] + 1000.0 * dir[i];
      const double fitted = (counted(probe) - last.f) / 1000.0;
      if (fitted <= -kSlopeTol) {
        Ray ray{last.x, dir, 0.5 * fitted};
        if (verify_ray(f, ray, options.feasible)) {
          result.status = InfStatus::UnboundedBelow;
          result.value = -kInfinity;
          result.ray = std::move(ray);
          result.budget_used = counted.evals() + 5;
          return result;
        }
      }
    }
    result.budget_used = counted.evals();
    result.status = InfStatus::Inconclusive;
    return result;
  }

  if (m >= 3 && drop_last <= 0.5 * drop_prev) {
    // Improvements shrink geometrically: a tail approached at infinity.
    result.status = InfStatus::Finite;
    return result;
  }
  result.status = InfStatus::Inconclusive;
  return result;
}

std::optional<Ray> unboundedness_certificate(const ProblemInstance& inst, double lambda) {
  const double gap = inst.phi_norm() - std::abs(lambda) * inst.lipschitz_constant();
  const bool ok = inst.regime() == Regime::Equal ? std::abs(lambda) < 1.0 : std::abs(lambda) <= 1.0;
  if (!ok || !(gap > 0.0)) return std::nullopt;
  Vector d = norming_direction(inst.phi(), inst.space());
  for (double& v : d) v = -v;
  return Ray{Vector(inst.space().dim(), 0.0), std::move(d), -gap};
}

double shell_inf(const Objective& f, const Space& space, double r_low, double r_high,
                 const SearchBudget& budget) {
  if (!(r_low > 0.0 && r_low < r_high)) throw InvalidInput("shell_inf: need 0 < r_low < r_high");
  budget.validate();
  Counter counted(f);
  Domain dom{&space, r_low, r_high, nullptr};
  const auto dirs = poll_directions(space.dim());
  const std::uint64_t stream = 0x5E11ULL + static_cast<std::uint64_t>(std::llround(std::log2(r_low) * 16.0));
  return search_region(counted, space, dom, budget, stream, {}, dirs).f;
}

double grid_oracle(const Objective& f, const Space& space, double radius, int points_per_axis) {
  const std::size_t n = space.dim();
  if (n > 3) throw InvalidInput("grid_oracle: dimension above 3 refused (cost guard)");
  if (points_per_axis < 1) throw InvalidInput("grid_oracle: need at least one point per axis");
  if (!(radius >= 0.0)) throw InvalidInput("grid_oracle: radius must be nonnegative");
  const int m = points_per_axis;
  auto coord = [&](int i) {
    if (m == 1) return 0.0;
    return radius * static_cast<double>(2 * i - (m - 1)) / static_cast<double>(m - 1);
  };
  std::vector<int> idx(n, 0);
  Vector x(n);
  double best = kInfinity;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = coord(idx[i]);
    best = std::min(best, f(x));
    std::size_t i = 0;
    while (i < n && ++idx[i] == m) idx[i++] = 0;
    if (i == n) break;
  }
  return best;
}

}  // namespace infid
