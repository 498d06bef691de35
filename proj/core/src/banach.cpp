#include "infid/banach.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infid/errors.hpp"

namespace infid {

namespace {

double conjugate_exponent(double p) {
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Space::Space(std::size_t n, double p) : n_(n), p_(p), q_(conjugate_exponent(p)) {
  if (n == 0) throw InvalidInput("Space: dimension must be positive");
  if (std::isnan(p) || p < 1.0) throw InvalidInput("Space: exponent p must be >= 1 or inf");
}

void Space::check_dim(ConstVectorView x) const {
  if (x.size() != n_) {
    throw InvalidInput("dimension mismatch: expected " + std::to_string(n_) + ", got " +
                       std::to_string(x.size()));
  }
}

double lp_norm(ConstVectorView x, double r) {
  if (r == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (r == 2.0) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0 || std::isinf(scale)) return scale;
    double s = 0.0;
    for (double v : x) {
      const double w = v / scale;
      s += w * w;
    }
    return scale * std::sqrt(s);
  }
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (std::isinf(r) || m == 0.0 || std::isinf(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, r);
  return m * std::pow(s, 1.0 / r);
}

double Space::norm(ConstVectorView x) const {
  check_dim(x);
  return lp_norm(x, p_);
}

double Space::dual_norm(ConstVectorView c) const {
  check_dim(c);
  return lp_norm(c, q_);
}

double Space::distance(ConstVectorView x, ConstVectorView y) const {
  check_dim(x);
  check_dim(y);
  if (p_ == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += std::abs(x[i] - y[i]);
    return s;
  }
  if (std::isinf(p_)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
  }
  if (p_ == 2.0 && n_ <= 4) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double d = x[i] - y[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  Vector diff(n_);
  for (std::size_t i = 0; i < n_; ++i) diff[i] = x[i] - y[i];
  return lp_norm(diff, p_);
}

double dot(ConstVectorView a, ConstVectorView b) {
  if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LinearFunctional::LinearFunctional(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("LinearFunctional: empty coefficient vector");
  const bool nonzero = std::any_of(coeffs_.begin(), coeffs_.end(), [](double v) { return v != 0.0; });
  if (!nonzero) throw InvalidInput("LinearFunctional: zero functional");
  for (double v : coeffs_) {
    if (!std::isfinite(v)) throw InvalidInput("LinearFunctional: non-finite coefficient");
  }
}

double LinearFunctional::operator()(ConstVectorView x) const {
  if (x.size() != coeffs_.size()) throw InvalidInput("LinearFunctional: dimension mismatch");
  return dot(coeffs_, x);
}

LinearFunctional LinearFunctional::negated() const {
  Vector c = coeffs_;
  for (double& v : c) v = -v;
  return LinearFunctional(std::move(c));
}

double dual_norm(const LinearFunctional& phi, const Space& space) {
  return space.dual_norm(phi.coeffs());
}

Vector norming_direction(const LinearFunctional& phi, const Space& space) {
  const Vector& c = phi.coeffs();
  space.check_dim(c);
  const std::size_t n = c.size();
  Vector d(n, 0.0);
  if (space.p() == 1.0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(c[i]) > std::abs(c[best])) best = i;
    }
    d[best] = sign(c[best]);
    return d;
  }
  if (std::isinf(space.p())) {
    for (std::size_t i = 0; i < n; ++i) d[i] = sign(c[i]);
    return d;
  }
  // d_i ~ sign(c_i) |c_i|^(q-1), computed relative to max|c_i| to stay in range.
  const double q = space.q();
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) d[i] = sign(c[i]) * std::pow(std::abs(c[i]) / m, q - 1.0);
  const double len = lp_norm(d, space.p());
  for (double& v : d) v /= len;
  return d;
}

double dist_to_hyperplane(ConstVectorView x, const LinearFunctional& phi, double t,
                          const Space& space) {
  space.check_dim(x);
  return std::abs(phi(x) - t) / dual_norm(phi, space);
}

double hausdorff_halfspaces(double t, double s, const LinearFunctional& phi, const Space& space) {
  return std::abs(t - s) / dual_norm(phi, space);
}

Vector project_halfspace(ConstVectorView x, const HalfSpace& hs, const Space& space) {
  if (!space.is_euclidean()) {
    throw UnsupportedOperation("project_halfspace: nearest point is only unique for p = 2");
  }
  space.check_dim(x);
  const Vector& c = hs.functional.coeffs();
  const double excess = hs.functional(x) - hs.level;
  Vector y(x.begin(), x.end());
  if (excess <= 0.0) return y;
  const double cc = dot(c, c);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= excess * c[i] / cc;
  // Rounding can leave the result a few ulps outside; push it in so projection is idempotent.
  for (int k = 0; k < 8; ++k) {
    const double e = hs.functional(y) - hs.level;
    if (e <= 0.0) break;
    const double step = std::max(e, 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(hs.level) + 1.0));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * c[i] / cc;
  }
  return y;
}

Vector random_unit_vector(const Space& space, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(space.dim());
  double len = 0.0;
  while (len == 0.0) {
    for (double& v : u) v = normal(rng);
    len = space.norm(u);
  }
  for (double& v : u) v /= len;
  return u;
}

double sampled_hausdorff(double t, double s, const LinearFunctional& phi, const Space& space,
                         std::size_t directions, std::size_t boundary_points,
                         std::mt19937_64& rng) {
  if (directions == 0 || boundary_points == 0) {
    throw InvalidInput("sampled_hausdorff: need at least one direction and one point");
  }
  const double lo = std::min(t, s);
  const double hi = std::max(t, s);
  if (lo == hi) return 0.0;

  // Largest descent rate -phi(u) over the sampled unit directions; u and -u both count.
  double best_rate = 0.0;
  for (std::size_t k = 0; k < directions; ++k) {
    const Vector u = random_unit_vector(space, rng);
    best_rate = std::max(best_rate, std::abs(phi(u)));
  }
  if (best_rate == 0.0) return kInfinity;

  // G(lo) is a subset of G(hi), so d_H = sup over x in G(hi) of dist(x, G(lo)). Points with
  // phi(x) <= lo contribute zero; the rest need a push of (phi(x) - lo) / rate.
  std::uniform_real_distribution<double> level(lo, hi);
  const Vector& c = phi.coeffs();
  const double cc = dot(c, c);
  double sup = 0.0;
  for (std::size_t k = 0; k < boundary_points; ++k) {
    Vector x = random_unit_vector(space, rng);
    const double target = (k == 0) ? hi : level(rng);
    const double shift = (target - phi(x)) / cc;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += shift * c[i];
    sup = std::max(sup, std::max(0.0, phi(x) - lo) / best_rate);
  }
  return sup;
}

}  // namespace infid
