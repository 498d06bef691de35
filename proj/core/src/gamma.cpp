#include "infid/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "infid/errors.hpp"

namespace infid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// (1 - u) log(1 - u) + u for u = |lambda| in [0, 1].
double entropy_value(double lambda) {
  const double u = std::abs(lambda);
  if (u >= 1.0) return 1.0;
  return (1.0 - u) * std::log1p(-u) + u;
}

double entropy_deriv(double lambda) { return -sign(lambda) * std::log1p(-std::abs(lambda)); }

double entropy_eta(double mu) { return -sign(mu) * std::expm1(-std::abs(mu)); }

std::vector<double> slopes(const gamma_kind::Tabulated& t) {
  std::vector<double> s;
  for (std::size_t i = 1; i < t.knots.size(); ++i) {
    s.push_back((t.knots[i].second - t.knots[i - 1].second) / (t.knots[i].first - t.knots[i - 1].first));
  }
  return s;
}

}  // namespace

const char* to_string(ConjugateBranch branch) {
  switch (branch) {
    case ConjugateBranch::AtA: return "AT_A";
    case ConjugateBranch::AtB: return "AT_B";
    case ConjugateBranch::Interior: return "INTERIOR";
  }
  return "?";
}

GammaFn::GammaFn(gamma_kind::Variant kind, double a, double b) : kind_(std::move(kind)), a_(a), b_(b) {
  if (!(a >= -1.0 && a < b && b <= 1.0)) {
    throw InvalidInput("gamma: need -1 <= a < b <= 1");
  }
  std::visit(overloaded{
                 [&](const gamma_kind::Quadratic& q) {
                   if (!(q.kappa > 0.0) || !std::isfinite(q.kappa)) throw InvalidInput("gamma: kappa must be positive");
                   deriv_inf_ = q.kappa * a_;
                   deriv_sup_ = q.kappa * b_;
                 },
                 [&](const gamma_kind::Entropy&) {
                   deriv_inf_ = a_ <= -1.0 ? -kInfinity : entropy_deriv(a_);
                   deriv_sup_ = b_ >= 1.0 ? kInfinity : entropy_deriv(b_);
                 },
                 [&](const gamma_kind::LinearPlus& l) {
                   if (!std::isfinite(l.beta)) throw InvalidInput("gamma: beta must be finite");
                   deriv_inf_ = deriv_sup_ = l.beta;
                 },
                 [&](const gamma_kind::Tabulated& t) {
                   if (t.knots.size() < 2) throw InvalidInput("gamma: tabulated needs at least two knots");
                   if (t.knots.front().first != a_ || t.knots.back().first != b_) {
                     throw InvalidInput("gamma: tabulated knots must start at a and end at b");
                   }
                   for (std::size_t i = 1; i < t.knots.size(); ++i) {
                     if (!(t.knots[i].first > t.knots[i - 1].first)) {
                       throw InvalidInput("gamma: tabulated knots must be strictly increasing");
                     }
                   }
                   for (const auto& [l, v] : t.knots) {
                     if (!std::isfinite(v)) throw InvalidInput("gamma: tabulated values must be finite");
                   }
                   const auto s = slopes(t);
                   for (std::size_t i = 1; i < s.size(); ++i) {
                     if (s[i] < s[i - 1] - 1e-12 * (1.0 + std::abs(s[i - 1]))) {
                       throw InvalidInput("gamma: tabulated values are not convex");
                     }
                   }
                   deriv_inf_ = s.front();
                   deriv_sup_ = s.back();
                 },
             },
             kind_);
}

GammaFn GammaFn::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw InvalidInput("gamma: tabulated needs at least two knots");
  const double a = knots.front().first;
  const double b = knots.back().first;
  return GammaFn(gamma_kind::Tabulated{std::move(knots)}, a, b);
}

std::string GammaFn::kind_name() const {
  return std::visit(overloaded{
                        [](const gamma_kind::Quadratic&) { return std::string("quadratic"); },
                        [](const gamma_kind::Entropy&) { return std::string("entropy"); },
                        [](const gamma_kind::LinearPlus&) { return std::string("linear"); },
                        [](const gamma_kind::Tabulated&) { return std::string("tabulated"); },
                    },
                    kind_);
}

bool GammaFn::strictly_increasing_derivative() const noexcept {
  return std::holds_alternative<gamma_kind::Quadratic>(kind_) || std::holds_alternative<gamma_kind::Entropy>(kind_);
}

double GammaFn::operator()(double lambda) const {
  if (!(lambda >= a_ && lambda <= b_)) throw RangeError("gamma: lambda outside [a, b]");
  return std::visit(overloaded{
                        [&](const gamma_kind::Quadratic& q) { return 0.5 * q.kappa * lambda * lambda; },
                        [&](const gamma_kind::Entropy&) { return entropy_value(lambda); },
                        [&](const gamma_kind::LinearPlus& l) { return l.beta * lambda; },
                        [&](const gamma_kind::Tabulated& t) {
                          auto it = std::upper_bound(t.knots.begin(), t.knots.end(), lambda,
                                                     [](double v, const auto& k) { return v < k.first; });
                          if (it == t.knots.end()) return t.knots.back().second;
                          if (it == t.knots.begin()) return t.knots.front().second;
                          const auto& [l1, v1] = *it;
                          const auto& [l0, v0] = *(it - 1);
                          return v0 + (v1 - v0) * (lambda - l0) / (l1 - l0);
                        },
                    },
                    kind_);
}

double GammaFn::deriv(double lambda) const {
  if (!(lambda > a_ && lambda < b_)) throw RangeError("gamma': lambda outside ]a, b[");
  return std::visit(overloaded{
                        [&](const gamma_kind::Quadratic& q) { return q.kappa * lambda; },
                        [&](const gamma_kind::Entropy&) { return entropy_deriv(lambda); },
                        [&](const gamma_kind::LinearPlus& l) { return l.beta; },
                        [&](const gamma_kind::Tabulated& t) {
                          auto it = std::upper_bound(t.knots.begin(), t.knots.end(), lambda,
                                                     [](double v, const auto& k) { return v < k.first; });
                          const auto& [l1, v1] = *it;
                          const auto& [l0, v0] = *(it - 1);
                          return (v1 - v0) / (l1 - l0);
                        },
                    },
                    kind_);
}

double GammaFn::eta(double mu) const {
  if (std::holds_alternative<gamma_kind::LinearPlus>(kind_)) {
    throw UnsupportedOperation("eta: gamma' is constant, no inverse");
  }
  if (!(mu >= deriv_inf_ && mu <= deriv_sup_)) throw RangeError("eta: mu outside the range of gamma'");
  return std::visit(overloaded{
                        [&](const gamma_kind::Quadratic& q) { return mu / q.kappa; },
                        [&](const gamma_kind::Entropy&) { return entropy_eta(mu); },
                        [&](const gamma_kind::LinearPlus&) -> double {
                          throw UnsupportedOperation("eta: gamma' is constant, no inverse");
                        },
                        [&](const gamma_kind::Tabulated& t) {
                          // gamma' is a step function; bisect for the knot where it crosses mu.
                          const auto s = slopes(t);
                          std::size_t lo = 0, hi = s.size();
                          while (lo < hi) {
                            const std::size_t mid = (lo + hi) / 2;
                            if (s[mid] <= mu) lo = mid + 1; else hi = mid;
                          }
                          // Segments [0, lo) have slope <= mu; the maximiser sits at knot lo.
                          return t.knots[lo].first;
                        },
                    },
                    kind_);
}

ConjugateValue GammaFn::restricted_conjugate(double mu) const {
  if (mu <= deriv_inf_) return {a_ * mu - (*this)(a_), a_, ConjugateBranch::AtA};
  if (mu >= deriv_sup_) return {b_ * mu - (*this)(b_), b_, ConjugateBranch::AtB};
  const double lam = std::clamp(eta(mu), a_, b_);
  const ConjugateBranch branch =
      lam == a_ ? ConjugateBranch::AtA : (lam == b_ ? ConjugateBranch::AtB : ConjugateBranch::Interior);
  return {lam * mu - (*this)(lam), lam, branch};
}

double conjugate_oracle(const GammaFn& g, double mu, double step) {
  if (!(step > 0.0)) throw InvalidInput("conjugate_oracle: step must be positive");
  const double a = g.a();
  const double b = g.b();
  double best = b * mu - g(b);
  const auto count = static_cast<long long>(std::floor((b - a) / step));
  for (long long k = 0; k <= count; ++k) {
    const double lam = std::min(b, a + static_cast<double>(k) * step);
    best = std::max(best, lam * mu - g(lam));
  }
  return best;
}

}  // namespace infid
