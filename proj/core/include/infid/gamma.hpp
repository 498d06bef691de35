#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infid/banach.hpp"

namespace infid {

namespace gamma_kind {

// kappa * l^2 / 2, kappa > 0
struct Quadratic {
  double kappa;
};
// (1 - |l|) log(1 - |l|) + |l| on ]-1, 1[, and 1 at |l| = 1
struct Entropy {};
// beta * l; derivative constant, so no inverse
struct LinearPlus {
  double beta;
};
// Piecewise-linear interpolant of (lambda, value) knots covering exactly [a, b].
struct Tabulated {
  std::vector<std::pair<double, double>> knots;
};

using Variant = std::variant<Quadratic, Entropy, LinearPlus, Tabulated>;

}  // namespace gamma_kind

enum class ConjugateBranch { AtA, AtB, Interior };

const char* to_string(ConjugateBranch branch);

// sup over [a, b] of (lambda * mu - gamma(lambda)) and where it is attained.
struct ConjugateValue {
  double value;
  double argmax_lambda;
  ConjugateBranch branch;
};

// Convex gamma on [a, b] with -1 <= a < b <= 1.
class GammaFn {
 public:
  GammaFn(gamma_kind::Variant kind, double a, double b);

  static GammaFn quadratic(double kappa, double a = -1.0, double b = 1.0) {
    return GammaFn(gamma_kind::Quadratic{kappa}, a, b);
  }
  static GammaFn entropy(double a = -1.0, double b = 1.0) { return GammaFn(gamma_kind::Entropy{}, a, b); }
  static GammaFn linear_plus(double beta, double a = -1.0, double b = 1.0) {
    return GammaFn(gamma_kind::LinearPlus{beta}, a, b);
  }
  // Knots must be sorted, start at a, end at b, and have nondecreasing slopes.
  static GammaFn tabulated(std::vector<std::pair<double, double>> knots);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const gamma_kind::Variant& kind() const noexcept { return kind_; }
  std::string kind_name() const;

  // inf and sup of gamma' over ]a, b[; may be infinite.
  double deriv_inf() const noexcept { return deriv_inf_; }
  double deriv_sup() const noexcept { return deriv_sup_; }

  // True when gamma' exists on ]a, b[ and is strictly increasing there.
  bool strictly_increasing_derivative() const noexcept;

  // Throws RangeError outside [a, b].
  double operator()(double lambda) const;
  double eval(double lambda) const { return (*this)(lambda); }
  // Throws RangeError outside ]a, b[; for Tabulated, the slope of the segment containing lambda.
  double deriv(double lambda) const;
  // Inverse of gamma'. Throws RangeError outside [deriv_inf, deriv_sup] and
  // UnsupportedOperation when gamma' is not invertible (LinearPlus).
  double eta(double mu) const;

  // Endpoint/interior case split: mu <= deriv_inf -> a, mu >= deriv_sup -> b, else eta(mu).
  ConjugateValue restricted_conjugate(double mu) const;

 private:
  gamma_kind::Variant kind_;
  double a_;
  double b_;
  double deriv_inf_ = 0.0;
  double deriv_sup_ = 0.0;
};

// Max of lambda * mu - gamma(lambda) over {a, a + step, ..., b} (b always included).
double conjugate_oracle(const GammaFn& g, double mu, double step);

}  // namespace infid
