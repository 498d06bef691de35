// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "infid/config.hpp"
#include "infid/experiment.hpp"
#include "infid/gamma.hpp"
#include "infid/optimizer.hpp"
#include "infid/report.hpp"
#include "infid/theorems.hpp"
#include "oracles.hpp"

using namespace infid;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body, double time_limit_s) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    out.ok = false;
    out.detail += " [over time limit " + std::to_string(time_limit_s) + " s]";
  }
  if (!out.ok) ++failures;
  std::printf("%s criterion %d (%s): %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Space suite_space(int i) {
  const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
  switch ((i / 3) % 3) {
    case 0: return Space::l1(n);
    case 1: return Space::l2(n);
    default: return Space::linf(n);
  }
}

std::vector<GammaFn> suite_gammas() {
  return {GammaFn::entropy(-1.0, 1.0), GammaFn::entropy(0.0, 1.0), GammaFn::quadratic(1.0, -1.0, 1.0),
          GammaFn::quadratic(1.0, -0.5, 0.5)};
}

SearchBudget seeded(std::uint64_t seed) {
  SearchBudget b;
  b.seed = seed;
  return b;
}

// Shared between criteria 3 and 4.
struct SuiteRun {
  std::vector<VerificationReport> thm1;
  std::vector<ProblemInstance> instances;
  std::vector<std::uint64_t> seeds;
  std::vector<int> gamma_index;
};
SuiteRun suite;

Outcome criterion1() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    double a = -1.0 + 2.0 * u(rng), b = -1.0 + 2.0 * u(rng);
    if (k % 5 == 0) a = -1.0, b = 1.0;  // include the singular entropy endpoints
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) b = std::min(1.0, a + 0.1);
    const double mu = -10.0 + 20.0 * u(rng);
    const GammaFn g = k % 2 ? GammaFn::entropy(a, b) : GammaFn::quadratic(0.2 + 4.0 * u(rng), a, b);
    const double oracle = oracle::grid_conjugate([&](double l) { return g(l); }, a, b, mu, 1e-5);
    worst = std::max(worst, std::abs(g.restricted_conjugate(mu).value - oracle));
  }
  return {worst <= 1e-4, "max |conjugate - grid| = " + fmt("%.3g", worst) + " over 1000 draws"};
}

Outcome criterion2() {
  const GammaFn g = GammaFn::entropy();
  double worst = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const double mu = -50.0 + 100.0 * i / (m - 1);
    const double l = g.eta(mu);
    const double closed = std::abs(mu) + std::exp(-std::abs(mu)) - 1.0;
    worst = std::max(worst, std::abs(l * mu - g(l) - closed));
  }
  return {worst <= 1e-12, "max residual " + fmt("%.3g", worst) + " on 1e5 grid points"};
}

Outcome criterion3() {
  const auto gammas = suite_gammas();
  suite.instances.clear();
  for (int i = 0; i < 20; ++i) suite.instances.push_back(generate_instance(1000 + i, suite_space(i), Regime::Equal));
  int fail = 0, inconclusive = 0, total = 0, both_finite = 0, both_unb = 0, interior_bad = 0;
  double worst_gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      const std::uint64_t seed = 7000 + 16 * i + k;
      const auto rep = verify_theorem1(suite.instances[i], gammas[k], seeded(seed));
      ++total;
      if (rep.verdict == Verdict::Fail) ++fail;
      if (rep.verdict == Verdict::Inconclusive) ++inconclusive;
      const bool interior = std::abs(gammas[k].a()) < 1.0 && std::abs(gammas[k].b()) < 1.0;
      if (interior && !(rep.verdict == Verdict::Pass && rep.both_unbounded)) ++interior_bad;
      if (std::isfinite(rep.lhs) && std::isfinite(rep.rhs)) {
        ++both_finite;
        worst_gap = std::max(worst_gap, rep.gap);
      }
      if (rep.both_unbounded) ++both_unb;
      suite.thm1.push_back(rep);
      suite.seeds.push_back(seed);
      suite.gamma_index.push_back(static_cast<int>(k));
    }
  }
  const double rate = static_cast<double>(inconclusive) / total;
  const bool ok = fail == 0 && rate <= 0.10 && worst_gap <= 1e-3 && interior_bad == 0;
  return {ok, std::to_string(total) + " runs, " + std::to_string(fail) + " FAIL, " + std::to_string(inconclusive) +
                  " INCONCLUSIVE, " + std::to_string(both_finite) + " finite (max gap " + fmt("%.3g", worst_gap) +
                  "), " + std::to_string(both_unb) + " both unbounded, " + std::to_string(interior_bad) +
                  " interior intervals without matched certificates"};
}

Outcome criterion4() {
  if (suite.thm1.empty()) return {false, "suite from criterion 3 missing"};
  const auto gammas = suite_gammas();
  double worst = 0.0;
  int compared = 0, mismatched = 0;
  for (std::size_t j = 0; j < suite.thm1.size(); ++j) {
    const int i = static_cast<int>(j / gammas.size());
    const GammaFn& g = gammas[static_cast<std::size_t>(suite.gamma_index[j])];
    if (!g.strictly_increasing_derivative()) continue;
    const auto t3 = verify_theorem3(suite.instances[static_cast<std::size_t>(i)], g, seeded(suite.seeds[j] + 50000));
    const auto& t1 = suite.thm1[j];
    ++compared;
    if (std::isinf(t1.rhs) || std::isinf(t3.rhs)) {
      if (t1.rhs != t3.rhs) ++mismatched;
      continue;
    }
    const double d = std::abs(t1.rhs - t3.rhs);
    worst = std::max(worst, d);
    if (d > 2e-3) ++mismatched;
  }
  return {mismatched == 0 && compared > 0, std::to_string(compared) + " pairs, max |rhs3 - rhs1| = " +
                                               fmt("%.3g", worst) + ", " + std::to_string(mismatched) + " mismatched"};
}

Outcome criterion5() {
  struct Canon {
    std::string name;
    ProblemInstance inst;
    double analytic;  // inf(phi + |psi|), derived by hand
  };
  std::vector<Canon> cases;
  const std::vector<Space> spaces{Space::l1(2), Space::l2(2), Space::linf(2), Space::l2(3)};
  for (const Space& s : spaces) {
    Vector c(s.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (i % 2 ? -0.7 : 1.3) + 0.1 * static_cast<double>(i);
    const LinearFunctional phi(c);
    const double pn = dual_norm(phi, s);
    Vector x0(s.dim(), 0.5);
    x0[0] = -1.0;
    cases.push_back({"|phi| p=" + format_space_p(s.p()), ProblemInstance(phi, LipschitzFn::abs_dev(s, phi, 0.0), Regime::Equal), 0.0});
    cases.push_back({"dist p=" + format_space_p(s.p()),
                     ProblemInstance(phi, LipschitzFn::scaled_dist(s, pn, x0), Regime::Equal), phi(x0)});
    if (s.is_euclidean()) {
      cases.push_back({"smooth n=" + std::to_string(s.dim()),
                       ProblemInstance(phi, LipschitzFn::smooth_dist(s, pn, 0.3, x0), Regime::Equal), phi(x0)});
    }
  }
  double worst3 = 0.0, worst6 = 0.0, worst_shell = 0.0, worst_analytic = 0.0;
  bool ok = true;
  std::string bad;
  std::uint64_t seed = 300;
  for (const auto& cs : cases) {
    const auto reps = verify_theorem4(cs.inst, seeded(seed++));
    const auto& r3 = reps[0];
    const auto& r6 = reps[3];
    if (r3.verdict != Verdict::Pass || r6.verdict != Verdict::Pass) {
      ok = false;
      bad += " " + cs.name;
    }
    worst3 = std::max(worst3, r3.gap);
    worst6 = std::max(worst6, r6.gap);
    worst_analytic = std::max(worst_analytic, std::abs(r3.rhs - cs.analytic));
    // Shell study at R = 1000 against the global inf.
    const auto f = abs_objective(cs.inst);
    const double shell = shell_inf(f, cs.inst.space(), 1000.0, 2000.0, seeded(seed++));
    worst_shell = std::max(worst_shell, std::abs(shell - r3.rhs));
  }
  ok = ok && worst3 <= 1e-3 && worst6 <= 1e-3 && worst_shell <= 1e-3 && worst_analytic <= 1e-3;
  return {ok, std::to_string(cases.size()) + " instances, gap(3) " + fmt("%.3g", worst3) + ", gap(6) " +
                  fmt("%.3g", worst6) + ", |shell(1000,2000) - inf| " + fmt("%.3g", worst_shell) +
                  ", |inf - analytic| " + fmt("%.3g", worst_analytic) + bad};
}

Outcome criterion6() {
  // Hausdorff: closed form vs sampled estimator.
  double worst_rel = 0.0;
  std::mt19937_64 rng(600);
  for (const Space& s : {Space::l1(1), Space::l2(1), Space::linf(1), Space::l1(2), Space::l2(2), Space::linf(2),
                         Space::l1(3), Space::l2(3), Space::linf(3)}) {
    const LinearFunctional phi(oracle::random_vector(s.dim(), -2.0, 2.0, rng));
    const double closed = hausdorff_halfspaces(-0.5, 1.75, phi, s);
    const double est = sampled_hausdorff(-0.5, 1.75, phi, s, 10000, 16, rng);
    worst_rel = std::max(worst_rel, std::abs(est - closed) / closed);
  }
  // Fixed-point iteration from 100 random starts per lambda.
  double worst_excess = -kInfinity, worst_feas = -kInfinity;
  int not_converged = 0, fixed_checks = 0, fixed_fail = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = generate_instance(600 + seed, Space::l2(1 + seed), Regime::Equal);
    for (double lambda : {0.3, -0.3, 0.5, -0.5, 0.9, -0.9}) {
      const double r = 0.5;
      std::mt19937_64 srng(seed * 100 + static_cast<std::uint64_t>(10 * lambda + 10));
      for (int k = 0; k < 100; ++k) {
        const Vector x0 = oracle::random_vector(inst.space().dim(), -10.0, 10.0, srng);
        const auto fp = fixed_point_iterate(inst, lambda, r, x0);
        if (!fp.converged) ++not_converged;
        worst_excess = std::max(worst_excess, fp.rate - std::abs(lambda));
        const double value = inst.phi()(fp.x_star) + lambda * inst.psi()(fp.x_star);
        worst_feas = std::max(worst_feas, value - r);
      }
      // Sublevel points, drawn independently, are fixed points.
      for (int k = 0; k < 2000; ++k) {
        const Vector x = oracle::random_vector(inst.space().dim(), -10.0, 10.0, srng);
        if (inst.phi()(x) + lambda * inst.psi()(x) > r) continue;
        ++fixed_checks;
        if (!is_fixed_point(inst, lambda, r, x)) ++fixed_fail;
      }
    }
  }
  const bool ok = worst_rel <= 0.05 && worst_excess <= 0.05 && worst_feas <= 1e-9 && not_converged == 0 &&
                  fixed_fail == 0 && fixed_checks > 0;
  return {ok, "Hausdorff max rel err " + fmt("%.3g", worst_rel) + "; rate - |lambda| max " +
                  fmt("%.3g", worst_excess) + ", feasibility max " + fmt("%.3g", worst_feas) + ", " +
                  std::to_string(not_converged) + " unconverged of 1800; " + std::to_string(fixed_checks) +
                  " sublevel points, " + std::to_string(fixed_fail) + " not fixed"};
}

Outcome criterion7() {
  const Space s = Space::l2(2);
  const LinearFunctional phi({1.0, 0.0});
  const ProblemInstance inst(phi, LipschitzFn::smooth_dist(s, 1.0, 1.0, {0.0, 0.0}), Regime::Equal);
  const auto rep = check_nonattainment(inst, 2.0, seeded(700));
  // Brute-force grids over expanding boxes; values must decrease toward -2 and sit at the box edge.
  const auto f = [](ConstVectorView x) { return x[0] + std::abs(std::sqrt(1.0 + x[0] * x[0] + x[1] * x[1]) - 2.0); };
  std::vector<double> grids;
  for (double R : {10.0, 100.0, 1000.0}) grids.push_back(grid_oracle(f, s, R, 2001));
  const bool decreasing = grids[0] > grids[1] && grids[1] > grids[2];
  const double diff = std::abs(rep.lhs - grids.back());
  const bool ok = rep.verdict == Verdict::Pass && diff <= 1e-3 && decreasing && std::abs(grids.back() + 2.0) <= 1e-3;
  return {ok, "estimate " + fmt("%.9g", rep.lhs) + ", grid(R=10,100,1000) " + fmt("%.6g", grids[0]) + " " +
                  fmt("%.6g", grids[1]) + " " + fmt("%.9g", grids[2]) + ", verdict " + to_string(rep.verdict) +
                  (rep.note.empty() ? "" : " (" + rep.note + ")")};
}

Outcome criterion8() {
  double worst = -kInfinity;
  int missing = 0, checked = 0;
  for (int i = 0; i < 20; ++i) {
    const bool strict = i < 10;
    const auto inst = generate_instance(800 + i, suite_space(i), strict ? Regime::StrictLess : Regime::Equal);
    for (double lambda : strict ? std::vector<double>{1.0} : std::vector<double>{0.5, -0.5}) {
      const auto ray = unboundedness_certificate(inst, lambda);
      if (!ray) {
        ++missing;
        continue;
      }
      const auto f = [&](ConstVectorView x) { return inst.phi()(x) + lambda * inst.psi()(x); };
      Vector x = ray->base;
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += 1000.0 * ray->direction[k];
      const double measured = (f(x) - f(ray->base)) / 1000.0;
      // Achieved decay at least the certified one, up to 1%.
      worst = std::max(worst, (measured - ray->slope) / std::abs(ray->slope));
      ++checked;
    }
  }
  return {missing == 0 && worst <= 0.01, std::to_string(checked) + " rays, worst relative shortfall " +
                                             fmt("%.3g", worst) + ", " + std::to_string(missing) + " missing"};
}

Outcome criterion9() {
  const std::string text = R"J({
    "generate": {"count": 6, "regime": "EQUAL", "spaces": [{"n": 1, "p": 1}, {"n": 2, "p": 2}, {"n": 3, "p": "inf"}]},
    "gammas": [{"kind": "entropy", "a": -1, "b": 1}, {"kind": "quadratic", "kappa": 1, "a": -0.5, "b": 0.5}],
    "statements": ["THM1", "THM3", "THM4_3", "THM4_4", "THM4_5", "THM4_6", "THM2_HAUS", "PROP1", "PROP21"],
    "budget": {"starts": 12, "iters_per_start": 1000},
    "seed": 909
  })J";
  const auto a = serialize_report(execute(parse_config(text)));
  const auto b = serialize_report(execute(parse_config(text)));
  const auto c = serialize_report(execute(parse_config(text)));
  return {a == b && b == c && !a.empty(), std::to_string(a.size()) + " report bytes, three runs " +
                                              (a == b && b == c ? "identical" : "differ")};
}

}  // namespace

int main() {
  report(1, "restricted conjugate vs grid oracle", criterion1, 10.0);
  report(2, "entropy conjugate identity", criterion2, 1.0);
  report(3, "minimax equality suite", criterion3, 120.0);
  report(4, "case-split cross-check", criterion4, 0.0);
  report(5, "absolute-value identities and shell study", criterion5, 0.0);
  report(6, "Hausdorff bound and fixed-point machinery", criterion6, 0.0);
  report(7, "nonattainment instance", criterion7, 0.0);
  report(8, "unboundedness rays", criterion8, 0.0);
  report(9, "determinism", criterion9, 0.0);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
