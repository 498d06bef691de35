#include <gtest/gtest.h>

#include <cmath>

#include "infid/errors.hpp"
#include "infid/optimizer.hpp"
#include "infid/theorems.hpp"
#include "oracles.hpp"

using namespace infid;

namespace {

SearchBudget budget(std::uint64_t seed = 1) {
  SearchBudget b;
  b.starts = 8;
  b.iters_per_start = 800;
  b.seed = seed;
  return b;
}

const LinearFunctional kX1({1, 0});

ProblemInstance abs_x1() { return ProblemInstance(kX1, LipschitzFn::abs_dev(Space::l2(2), kX1, 0.0), Regime::Equal); }

ProblemInstance dist_01() {
  return ProblemInstance(kX1, LipschitzFn::scaled_dist(Space::l2(2), 1.0, {0, 1}), Regime::Equal);
}

ProblemInstance smooth_origin() {
  return ProblemInstance(kX1, LipschitzFn::smooth_dist(Space::l2(2), 1.0, 1.0, {0, 0}), Regime::Equal);
}

SideValue finite_side(double v) { return {InfStatus::Finite, v, Provenance::Optimizer, 0}; }
SideValue unbounded() { return {InfStatus::UnboundedBelow, -kInfinity, Provenance::Optimizer, 0}; }
SideValue inconclusive() { return {InfStatus::Inconclusive, 0.0, Provenance::Optimizer, 0}; }

}  // namespace

TEST(CompareSides, VerdictTable) {
  EXPECT_EQ(compare_sides(StatementId::Thm1, finite_side(1.0), finite_side(1.0005), 1e-3).verdict, Verdict::Pass);
  EXPECT_EQ(compare_sides(StatementId::Thm1, finite_side(1.0), finite_side(1.01), 1e-3).verdict, Verdict::Fail);
  const auto both = compare_sides(StatementId::Thm1, unbounded(), unbounded(), 1e-3);
  EXPECT_EQ(both.verdict, Verdict::Pass);
  EXPECT_TRUE(both.both_unbounded);
  EXPECT_EQ(compare_sides(StatementId::Thm1, unbounded(), finite_side(0.0), 1e-3).verdict, Verdict::Fail);
  EXPECT_EQ(compare_sides(StatementId::Thm1, inconclusive(), finite_side(0.0), 1e-3).verdict, Verdict::Inconclusive);
  EXPECT_EQ(compare_sides(StatementId::Thm1, inconclusive(), inconclusive(), 1e-3).verdict, Verdict::Inconclusive);
  EXPECT_EQ(compare_sides(StatementId::Thm1, unbounded(), inconclusive(), 1e-3).verdict, Verdict::Inconclusive);
}

TEST(StatementIds, RoundTrip) {
  for (StatementId id : all_statements()) EXPECT_EQ(statement_from_string(to_string(id)), id);
  EXPECT_THROW(statement_from_string("THM9"), InvalidInput);
  EXPECT_EQ(all_statements().size(), 10u);
}

TEST(MinimaxEquality, AbsX1Entropy) {
  const auto rep = verify_theorem1(abs_x1(), GammaFn::entropy(), budget());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_NEAR(rep.lhs, -1.0, 1e-9);
  EXPECT_NEAR(rep.rhs, -1.0, 1e-3);
}

TEST(MinimaxEquality, InteriorIntervalBothUnbounded) {
  const auto rep = verify_theorem1(abs_x1(), GammaFn::quadratic(1.0, -0.5, 0.5), budget());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_TRUE(rep.both_unbounded);
  EXPECT_EQ(rep.lhs, -kInfinity);
  EXPECT_EQ(rep.rhs, -kInfinity);
}

TEST(MinimaxEquality, DistanceInstanceHalfInterval) {
  const auto rep = verify_theorem1(dist_01(), GammaFn::entropy(0.0, 1.0), budget());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_NEAR(rep.lhs, -1.0, 1e-3);
  // Independent oracle for inf(phi + psi): grid on a large box cannot go below the true value 0.
  const auto inst = dist_01();
  const double grid = grid_oracle([&](ConstVectorView x) { return x[0] + inst.psi()(x); }, inst.space(), 100.0, 2001);
  EXPECT_GE(grid, -1e-12);
  EXPECT_LE(grid, 0.01);
}

TEST(MinimaxEquality, RejectsStrictLess) {
  const ProblemInstance inst(kX1, LipschitzFn::scale(0.5, LipschitzFn::abs_dev(Space::l2(2), kX1, 0.0)),
                             Regime::StrictLess);
  EXPECT_THROW(verify_theorem1(inst, GammaFn::entropy(), budget()), HypothesisViolation);
}

TEST(CaseSplit, EmptyRegionAndCrossCheck) {
  const auto inst = abs_x1();
  const auto g = GammaFn::quadratic(1.0, -1.0, 1.0);
  const RegionPartition part(inst, g);
  EXPECT_EQ(part.classify(Vector{0.5, 3}), Region::C);
  EXPECT_EQ(part.classify(Vector{-1, 3}), Region::B);  // tie goes to B
  EXPECT_EQ(part.classify_value(-1.0), Region::A);
  const auto t3 = verify_theorem3(inst, g, budget());
  const auto t1 = verify_theorem1(inst, g, budget());
  EXPECT_EQ(t3.verdict, Verdict::Pass);
  EXPECT_NEAR(t3.rhs, t1.rhs, 2e-3);
  EXPECT_THROW(verify_theorem3(inst, GammaFn::tabulated({{-1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}}), budget()),
               UnsupportedOperation);
}

TEST(CaseSplit, EntropyRegionIsAllInterior) {
  const auto inst = dist_01();
  const auto g = GammaFn::entropy();
  const RegionPartition part(inst, g);
  std::mt19937_64 rng(50);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(part.classify(oracle::random_vector(2, -1e3, 1e3, rng)), Region::C);
  EXPECT_EQ(verify_theorem3(inst, g, budget()).verdict, Verdict::Pass);
}

TEST(RegionPartition, PropertyExhaustiveAndDisjoint) {
  std::mt19937_64 rng(51);
  const auto inst = dist_01();
  for (const GammaFn& g : {GammaFn::quadratic(1.0), GammaFn::entropy(0.0, 0.5), GammaFn::quadratic(4.0, -0.5, 0.25)}) {
    const RegionPartition part(inst, g);
    int counts[3] = {0, 0, 0};
    for (int k = 0; k < 10000; ++k) {
      const Vector x = oracle::random_vector(2, -3.0, 3.0, rng);
      const double v = inst.psi()(x);
      const Region r = part.classify(x);
      const bool in_a = v <= g.deriv_inf(), in_b = v >= g.deriv_sup();
      ASSERT_EQ(in_a + in_b + (!in_a && !in_b), 1);
      ASSERT_EQ(r, in_a ? Region::A : (in_b ? Region::B : Region::C));
      ++counts[static_cast<int>(r)];
    }
    EXPECT_EQ(counts[0] + counts[1] + counts[2], 10000);
  }
}

TEST(AbsoluteValueIdentities, AbsX1AllIdentities) {
  const auto reps = verify_theorem4(abs_x1(), budget());
  ASSERT_EQ(reps.size(), 4u);
  EXPECT_EQ(reps[0].statement, StatementId::Thm4_3);
  EXPECT_EQ(reps[1].statement, StatementId::Thm4_4);
  EXPECT_EQ(reps[2].statement, StatementId::Thm4_5);
  EXPECT_EQ(reps[3].statement, StatementId::Thm4_6);
  for (const auto& r : reps) EXPECT_EQ(r.verdict, Verdict::Pass) << to_string(r.statement) << " " << r.note;
  EXPECT_NEAR(reps[0].rhs, 0.0, 1e-9);
  EXPECT_NEAR(reps[3].rhs, 0.0, 1e-3);
  EXPECT_EQ(reps[1].series.size(), 4u);
  for (const auto& [R, v] : reps[1].series) EXPECT_NEAR(v, 0.0, 1e-6) << R;
}

TEST(AbsoluteValueIdentities, SmoothInstance) {
  for (const auto& r : verify_theorem4(smooth_origin(), budget(2))) {
    EXPECT_EQ(r.verdict, Verdict::Pass) << to_string(r.statement) << " " << r.note;
  }
}

TEST(FixedPoint, FeasibleStartStaysPut) {
  const auto inst = abs_x1();
  const auto r = fixed_point_iterate(inst, 0.5, 0.0, Vector{-3, 2});
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.x_star, (Vector{-3, 2}));
  EXPECT_TRUE(r.converged);
}

TEST(FixedPoint, HandIteratedRecurrence) {
  // From (4, 0): x1 <- -0.5 |x1| each step, so 4 -> -2 and then feasible.
  const auto inst = abs_x1();
  const auto r = fixed_point_iterate(inst, 0.5, 0.0, Vector{4, 0});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(inst.phi()(r.x_star) + 0.5 * inst.psi()(r.x_star), 1e-9);
  EXPECT_NEAR(r.x_star[0], -2.0, 1e-12);
  EXPECT_TRUE(is_fixed_point(inst, 0.5, 0.0, r.x_star));
}

TEST(FixedPoint, RejectsBadHypotheses) {
  EXPECT_THROW(fixed_point_iterate(abs_x1(), 1.0, 0.0, Vector{1, 1}), HypothesisViolation);
  const ProblemInstance l1(kX1, LipschitzFn::abs_dev(Space::l1(2), kX1, 0.0), Regime::Equal);
  EXPECT_THROW(fixed_point_iterate(l1, 0.5, 0.0, Vector{1, 1}), UnsupportedOperation);
}

TEST(FixedPoint, PropertyRateAndFeasibility) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate_instance(seed, Space::l2(1 + seed % 3), Regime::Equal);
    for (double lambda : {-0.9, -0.3, 0.5, 0.9}) {
      const auto rep = verify_fixed_point(inst, lambda, 0.25, 30, seed);
      EXPECT_EQ(rep.verdict, Verdict::Pass) << seed << " " << lambda << " " << rep.note;
      EXPECT_LE(rep.lhs, std::abs(lambda) + 0.05);
    }
  }
}

TEST(Hausdorff, VerifierPasses) {
  for (const Space& s : {Space::l1(2), Space::l2(3), Space::linf(3)}) {
    const auto rep = verify_hausdorff(LinearFunctional(Vector(s.dim(), 1.5)), s, -1.0, 2.0, 10000, 4);
    EXPECT_EQ(rep.verdict, Verdict::Pass) << rep.note;
  }
}

TEST(Nonattainment, SmoothInstance) {
  const auto inst = smooth_origin();
  const auto rep = check_nonattainment(inst, 2.0, budget(3));
  EXPECT_EQ(rep.verdict, Verdict::Pass) << rep.note;
  EXPECT_NEAR(rep.lhs, -2.0, 1e-3);
  const auto m = derivative_margin(inst, 10.0);
  ASSERT_TRUE(m.has_value());
  // Closed form: at distance t the gradient norm is t / sqrt(1 + t^2), so the margin is 1 - that at t = 10.
  EXPECT_NEAR(*m, 1.0 - 10.0 / std::sqrt(101.0), 1e-12);
}

TEST(Nonattainment, NondifferentiableIsInconclusive) {
  EXPECT_EQ(check_nonattainment(abs_x1(), 2.0, budget()).verdict, Verdict::Inconclusive);
  EXPECT_FALSE(derivative_margin(abs_x1(), 1.0).has_value());
}

TEST(Unboundedness, SlopeMatches) {
  const auto rep = verify_unboundedness(abs_x1(), 0.5);
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_NEAR(rep.lhs, -0.5, 0.005);
  EXPECT_EQ(verify_unboundedness(abs_x1(), 1.0).verdict, Verdict::Inconclusive);
}
