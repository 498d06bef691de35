#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infid/banach.hpp"
#include "infid/errors.hpp"
#include "oracles.hpp"

using namespace infid;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Space> sample_spaces() {
  return {Space::l1(1), Space::l2(1), Space::linf(1), Space::l1(2), Space::l2(2), Space::linf(2),
          Space::l1(3), Space::l2(3), Space::linf(3), Space(3, 1.5),  Space(2, 4.0)};
}

}  // namespace

TEST(Space, RejectsBadParameters) {
  EXPECT_THROW(Space(0, 2.0), InvalidInput);
  EXPECT_THROW(Space(2, 0.5), InvalidInput);
  EXPECT_THROW(Space(2, kNaN), InvalidInput);
}

TEST(Space, DualExponent) {
  EXPECT_EQ(Space::l1(2).q(), kInfinity);
  EXPECT_EQ(Space::linf(2).q(), 1.0);
  EXPECT_DOUBLE_EQ(Space::l2(2).q(), 2.0);
  EXPECT_NEAR(Space(2, 3.0).q(), 1.5, 1e-15);
  const Space s(2, 1.25);
  EXPECT_NEAR(1.0 / s.p() + 1.0 / s.q(), 1.0, 1e-15);
}

TEST(Space, NormsAndDimensionCheck) {
  const Vector x{3.0, -4.0};
  EXPECT_DOUBLE_EQ(Space::l1(2).norm(x), 7.0);
  EXPECT_DOUBLE_EQ(Space::l2(2).norm(x), 5.0);
  EXPECT_DOUBLE_EQ(Space::linf(2).norm(x), 4.0);
  EXPECT_THROW(Space::l2(3).norm(x), InvalidInput);
}

TEST(LinearFunctional, RejectsZeroEmptyAndNonFinite) {
  EXPECT_THROW(LinearFunctional(Vector{0.0, 0.0}), InvalidInput);
  EXPECT_THROW(LinearFunctional(Vector{}), InvalidInput);
  EXPECT_THROW(LinearFunctional(Vector{1.0, kNaN}), InvalidInput);
  EXPECT_THROW(LinearFunctional(Vector{kInfinity}), InvalidInput);
}

TEST(DualNorm, Examples) {
  EXPECT_DOUBLE_EQ(dual_norm(LinearFunctional({3, 4}), Space::l2(2)), 5.0);
  EXPECT_DOUBLE_EQ(dual_norm(LinearFunctional({3, -4}), Space::l1(2)), 4.0);
  EXPECT_DOUBLE_EQ(dual_norm(LinearFunctional({3, -4}), Space::linf(2)), 7.0);
  EXPECT_THROW(dual_norm(LinearFunctional({3, -4}), Space::l2(3)), InvalidInput);
}

TEST(NormingDirection, Examples) {
  auto d = norming_direction(LinearFunctional({3, 4}), Space::l2(2));
  EXPECT_NEAR(d[0], 0.6, 1e-15);
  EXPECT_NEAR(d[1], 0.8, 1e-15);
  EXPECT_EQ(norming_direction(LinearFunctional({3, -4}), Space::l1(2)), (Vector{0, -1}));
  EXPECT_EQ(norming_direction(LinearFunctional({3, -4}), Space::linf(2)), (Vector{1, -1}));
}

TEST(NormingDirection, TiesGoToLowestIndex) {
  EXPECT_EQ(norming_direction(LinearFunctional({-2, 2, 1}), Space::l1(3)), (Vector{-1, 0, 0}));
  EXPECT_EQ(norming_direction(LinearFunctional({0, 5}), Space::linf(2)), (Vector{0, 1}));
}

TEST(NormingDirection, PropertyUnitNormAndAttainsDualNorm) {
  std::mt19937_64 rng(1);
  for (const Space& space : sample_spaces()) {
    for (int k = 0; k < 200; ++k) {
      Vector c = oracle::random_vector(space.dim(), -3.0, 3.0, rng);
      const LinearFunctional phi(c);
      const Vector d = norming_direction(phi, space);
      const double dn = dual_norm(phi, space);
      EXPECT_NEAR(space.norm(d), 1.0, 1e-12);
      EXPECT_NEAR(phi(d), dn, 1e-12 * dn);
    }
  }
}

TEST(DualNorm, PropertyBoundsTheFunctional) {
  std::mt19937_64 rng(2);
  for (const Space& space : sample_spaces()) {
    for (int k = 0; k < 500; ++k) {
      const LinearFunctional phi(oracle::random_vector(space.dim(), -3.0, 3.0, rng));
      const Vector x = oracle::random_vector(space.dim(), -10.0, 10.0, rng);
      EXPECT_LE(std::abs(phi(x)), dual_norm(phi, space) * space.norm(x) * (1 + 1e-12) + 1e-12);
    }
  }
}

TEST(DistToHyperplane, Examples) {
  EXPECT_DOUBLE_EQ(dist_to_hyperplane(Vector{3, 7}, LinearFunctional({2, 0}), 0.0, Space::l2(2)), 3.0);
  EXPECT_DOUBLE_EQ(dist_to_hyperplane(Vector{1, 1}, LinearFunctional({1, 1}), 2.0, Space::l2(2)), 0.0);
  EXPECT_DOUBLE_EQ(dist_to_hyperplane(Vector{2, 2}, LinearFunctional({1, 1}), 0.0, Space::l1(2)), 4.0);
}

TEST(DistToHyperplane, AgreesWithBruteForce) {
  std::mt19937_64 rng(3);
  for (const Space& space : {Space::l1(2), Space::l2(2), Space::linf(2), Space::l1(3), Space::linf(3)}) {
    for (int k = 0; k < 10; ++k) {
      const Vector c = oracle::random_vector(space.dim(), -2.0, 2.0, rng);
      const Vector x = oracle::random_vector(space.dim(), -5.0, 5.0, rng);
      const double t = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
      const double closed = dist_to_hyperplane(x, LinearFunctional(c), t, space);
      const double brute = oracle::brute_hyperplane_distance(x, c, t, space, rng, 4000);
      EXPECT_LE(closed, brute + 1e-9);
      EXPECT_NEAR(closed, brute, 1e-6 * (1 + closed));
    }
  }
  // l1 example by brute force.
  std::mt19937_64 r2(4);
  EXPECT_NEAR(oracle::brute_hyperplane_distance({2, 2}, {1, 1}, 0.0, Space::l1(2), r2), 4.0, 1e-9);
}

TEST(Hausdorff, Examples) {
  EXPECT_DOUBLE_EQ(hausdorff_halfspaces(0, 2, LinearFunctional({2}), Space::l2(1)), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff_halfspaces(3, 3, LinearFunctional({2}), Space::l2(1)), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff_halfspaces(1, 11, LinearFunctional({3, 4}), Space::l2(2)), 2.0);
}

TEST(Hausdorff, PropertySymmetryAndTriangle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const Space& space : sample_spaces()) {
    const LinearFunctional phi(oracle::random_vector(space.dim(), -3.0, 3.0, rng));
    for (int k = 0; k < 100; ++k) {
      const double t = u(rng), s = u(rng), r = u(rng);
      EXPECT_DOUBLE_EQ(hausdorff_halfspaces(t, s, phi, space), hausdorff_halfspaces(s, t, phi, space));
      EXPECT_LE(hausdorff_halfspaces(t, r, phi, space),
                hausdorff_halfspaces(t, s, phi, space) + hausdorff_halfspaces(s, r, phi, space) + 1e-12);
    }
  }
}

TEST(Hausdorff, SampledEstimatorConvergesFromAbove) {
  std::mt19937_64 rng(6);
  for (const Space& space : {Space::l1(1), Space::l2(2), Space::linf(2), Space::l1(3), Space::l2(3), Space::linf(3)}) {
    const LinearFunctional phi(oracle::random_vector(space.dim(), -2.0, 2.0, rng));
    const double closed = hausdorff_halfspaces(0.5, 2.0, phi, space);
    const double est = sampled_hausdorff(0.5, 2.0, phi, space, 10000, 16, rng);
    EXPECT_GE(est, closed * (1 - 1e-12));
    EXPECT_LE(est, closed * 1.05);
  }
}

TEST(ProjectHalfspace, Examples) {
  const HalfSpace h1{LinearFunctional({1, 0}), 0.0};
  EXPECT_EQ(project_halfspace(Vector{2, 5}, h1, Space::l2(2)), (Vector{0, 5}));
  EXPECT_EQ(project_halfspace(Vector{-1, 5}, h1, Space::l2(2)), (Vector{-1, 5}));
  const HalfSpace h2{LinearFunctional({3, 4}), 0.0};
  const Vector y = project_halfspace(Vector{3, 4}, h2, Space::l2(2));
  EXPECT_NEAR(y[0], 0.0, 1e-15);
  EXPECT_NEAR(y[1], 0.0, 1e-15);
  EXPECT_THROW(project_halfspace(Vector{3, 4}, h2, Space::l1(2)), UnsupportedOperation);
  EXPECT_THROW(project_halfspace(Vector{3, 4}, h2, Space::linf(2)), UnsupportedOperation);
}

TEST(ProjectHalfspace, PropertyFeasibleIdempotentNearest) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const Space space = Space::l2(n);
    for (int k = 0; k < 300; ++k) {
      const HalfSpace hs{LinearFunctional(oracle::random_vector(n, -3.0, 3.0, rng)), u(rng)};
      const Vector x = oracle::random_vector(n, -100.0, 100.0, rng);
      const Vector y = project_halfspace(x, hs, space);
      EXPECT_LE(hs.functional(y), hs.level + 1e-12 * std::abs(hs.level) + 1e-12);
      EXPECT_EQ(project_halfspace(y, hs, space), y);
      // No sampled feasible point is closer.
      const Vector z = project_halfspace(oracle::random_vector(n, -100.0, 100.0, rng), hs, space);
      EXPECT_LE(space.distance(x, y), space.distance(x, z) + 1e-9);
    }
  }
}
