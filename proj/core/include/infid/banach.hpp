#pragma once

#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace infid {

using Vector = std::vector<double>;
using ConstVectorView = std::span<const double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Real sequence space R^n with the l^p norm, p in [1, inf].
class Space {
 public:
  Space(std::size_t n, double p);

  static Space l1(std::size_t n) { return Space(n, 1.0); }
  static Space l2(std::size_t n) { return Space(n, 2.0); }
  static Space linf(std::size_t n) { return Space(n, kInfinity); }

  std::size_t dim() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  // Conjugate exponent q with 1/p + 1/q = 1.
  double q() const noexcept { return q_; }
  bool is_euclidean() const noexcept { return p_ == 2.0; }

  double norm(ConstVectorView x) const;
  double dual_norm(ConstVectorView c) const;
  // ||x - y||_p without allocating.
  double distance(ConstVectorView x, ConstVectorView y) const;

  void check_dim(ConstVectorView x) const;

  bool operator==(const Space&) const = default;

 private:
  std::size_t n_;
  double p_;
  double q_;
};

// l^r norm of x for r in [1, inf].
double lp_norm(ConstVectorView x, double r);

double dot(ConstVectorView a, ConstVectorView b);

// phi(x) = <c, x> with c != 0.
class LinearFunctional {
 public:
  explicit LinearFunctional(Vector coeffs);

  const Vector& coeffs() const noexcept { return coeffs_; }
  std::size_t dim() const noexcept { return coeffs_.size(); }
  double operator()(ConstVectorView x) const;

  LinearFunctional negated() const;

  bool operator==(const LinearFunctional&) const = default;

 private:
  Vector coeffs_;
};

// G(t) = { x : phi(x) <= t }.
struct HalfSpace {
  LinearFunctional functional;
  double level;

  bool contains(ConstVectorView x, double tol = 0.0) const { return functional(x) <= level + tol; }
};

double dual_norm(const LinearFunctional& phi, const Space& space);

// Unit vector d (||d||_p = 1) with phi(d) = ||phi||_*. Ties in l1 go to the lowest index.
Vector norming_direction(const LinearFunctional& phi, const Space& space);

// Distance from x to the hyperplane { phi = t }.
double dist_to_hyperplane(ConstVectorView x, const LinearFunctional& phi, double t,
                          const Space& space);

// Hausdorff distance between the half-spaces G(t) and G(s).
double hausdorff_halfspaces(double t, double s, const LinearFunctional& phi, const Space& space);

// Nearest point of the half-space in l2. Throws UnsupportedOperation for p != 2.
Vector project_halfspace(ConstVectorView x, const HalfSpace& hs, const Space& space);

// Monte Carlo estimate of d_H(G(t), G(s)) that never evaluates the dual norm: random points on
// the boundary of the larger set are pushed toward the smaller one along `directions` random
// l^p-unit rays, and the shortest push is kept. Converges to the closed form from above.
double sampled_hausdorff(double t, double s, const LinearFunctional& phi, const Space& space,
                         std::size_t directions, std::size_t boundary_points,
                         std::mt19937_64& rng);

// Uniform-ish random point with ||x||_p = 1 (normalised Gaussian).
Vector random_unit_vector(const Space& space, std::mt19937_64& rng);

}  // namespace infid
