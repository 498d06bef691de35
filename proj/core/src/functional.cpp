#include "infid/functional.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "infid/errors.hpp"

namespace infid {

namespace {

constexpr double kKinkTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign(double v) { return (v > 0.0) - (v < 0.0); }

const Space& common_space(const std::vector<LipschitzFn>& children, const char* who) {
  if (children.empty()) throw InvalidInput(std::string(who) + ": needs at least one child");
  const Space& space = children.front().space();
  for (const auto& c : children) {
    if (!(c.space() == space)) throw InvalidInput(std::string(who) + ": children live in different spaces");
  }
  return space;
}

// Cheap probe against trees that cancel to a constant (e.g. sum of phi and -phi).
bool looks_constant(const LipschitzFn& f) {
  const std::size_t n = f.space().dim();
  Vector x(n, 0.0);
  const double f0 = f(x);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 16; ++k) {
    for (auto& v : x) v = u(rng);
    if (std::abs(f(x) - f0) > 1e-12 * (1.0 + std::abs(f0))) return false;
  }
  return true;
}

}  // namespace

LipschitzFn LipschitzFn::make(Impl impl) {
  return LipschitzFn(std::make_shared<const Impl>(std::move(impl)));
}

LipschitzFn LipschitzFn::linear(const Space& space, Vector coeffs) {
  LinearFunctional phi(std::move(coeffs));
  space.check_dim(phi.coeffs());
  const double lip = dual_norm(phi, space);
  return make({space, node::Linear{std::move(phi)}, {lip, true}, true, true});
}

LipschitzFn LipschitzFn::abs_dev(const Space& space, LinearFunctional phi, double offset) {
  space.check_dim(phi.coeffs());
  if (!std::isfinite(offset)) throw InvalidInput("abs_dev: offset must be finite");
  const double lip = dual_norm(phi, space);
  return make({space, node::AbsDev{std::move(phi), offset}, {lip, true}, true, false});
}

LipschitzFn LipschitzFn::scaled_dist(const Space& space, double alpha, Vector center) {
  space.check_dim(center);
  if (!std::isfinite(alpha) || alpha == 0.0) throw InvalidInput("scaled_dist: alpha must be finite and nonzero");
  return make({space, node::ScaledDist{alpha, std::move(center)}, {std::abs(alpha), true}, alpha > 0.0, false});
}

LipschitzFn LipschitzFn::smooth_dist(const Space& space, double alpha, double eps, Vector center) {
  if (!space.is_euclidean()) throw UnsupportedOperation("smooth_dist: only defined for p = 2");
  space.check_dim(center);
  if (!std::isfinite(alpha) || alpha == 0.0) throw InvalidInput("smooth_dist: alpha must be finite and nonzero");
  if (!std::isfinite(eps) || eps <= 0.0) throw InvalidInput("smooth_dist: eps must be positive");
  return make({space, node::SmoothDist{alpha, eps, std::move(center)}, {std::abs(alpha), true}, alpha > 0.0, true});
}

LipschitzFn LipschitzFn::max_of(std::vector<LipschitzFn> children) {
  const Space space = common_space(children, "max_of");
  double bound = 0.0;
  for (const auto& c : children) bound = std::max(bound, c.lipschitz().bound);
  // Exact only through a child that attains the max bound, is exact, and ascends at full rate
  // along some ray: the max is then squeezed between that child and its own bound.
  bool exact = false;
  for (const auto& c : children) {
    if (c.lipschitz().bound == bound && c.lipschitz().exact && c.impl_->full_rate_ascent) exact = true;
  }
  const bool smooth = children.size() == 1 && children.front().differentiable_everywhere();
  auto f = make({space, node::MaxOf{std::move(children)}, {bound, exact}, exact, smooth});
  if (looks_constant(f)) throw InvalidInput("max_of: expression is constant");
  return f;
}

LipschitzFn LipschitzFn::sum(std::vector<LipschitzFn> children) {
  const Space space = common_space(children, "sum");
  double bound = 0.0;
  bool smooth = true;
  for (const auto& c : children) {
    bound += c.lipschitz().bound;
    smooth = smooth && c.differentiable_everywhere();
  }
  const bool single = children.size() == 1;
  const bool exact = single && children.front().lipschitz().exact;
  const bool ascent = single && children.front().impl_->full_rate_ascent;
  auto f = make({space, node::Sum{std::move(children)}, {bound, exact}, ascent, smooth});
  if (looks_constant(f)) throw InvalidInput("sum: expression is constant");
  return f;
}

LipschitzFn LipschitzFn::scale(double alpha, LipschitzFn child) {
  if (!std::isfinite(alpha) || alpha == 0.0) throw InvalidInput("scale: alpha must be finite and nonzero");
  const Space space = child.space();
  const LipschitzBound lip{std::abs(alpha) * child.lipschitz().bound, child.lipschitz().exact};
  // -f ascends at full rate only when f also descends at full rate, which holds for linear leaves.
  const bool ascent = alpha > 0.0 ? child.impl_->full_rate_ascent
                                  : std::holds_alternative<node::Linear>(child.node());
  const bool smooth = child.differentiable_everywhere();
  return make({space, node::Scale{alpha, {std::move(child)}}, lip, ascent, smooth});
}

LipschitzFn LipschitzFn::shift(LipschitzFn child, double offset) {
  if (!std::isfinite(offset)) throw InvalidInput("shift: offset must be finite");
  const Space space = child.space();
  const LipschitzBound lip = child.lipschitz();
  const bool ascent = child.impl_->full_rate_ascent;
  const bool smooth = child.differentiable_everywhere();
  return make({space, node::Shift{{std::move(child)}, offset}, lip, ascent, smooth});
}

double LipschitzFn::operator()(ConstVectorView x) const {
  space().check_dim(x);
  return eval_unchecked(x);
}

double LipschitzFn::eval_unchecked(ConstVectorView x) const {
  const Space& sp = impl_->space;
  return std::visit(
      overloaded{
          [&](const node::Linear& n) { return dot(n.phi.coeffs(), x); },
          [&](const node::AbsDev& n) { return std::abs(dot(n.phi.coeffs(), x) - n.offset); },
          [&](const node::ScaledDist& n) { return n.alpha * sp.distance(x, n.center); },
          [&](const node::SmoothDist& n) {
            double s = n.eps;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double d = x[i] - n.center[i];
              s += d * d;
            }
            return n.alpha * std::sqrt(s);
          },
          [&](const node::MaxOf& n) {
            double m = -kInfinity;
            for (const auto& c : n.children) m = std::max(m, c.eval_unchecked(x));
            return m;
          },
          [&](const node::Sum& n) {
            double s = 0.0;
            for (const auto& c : n.children) s += c.eval_unchecked(x);
            return s;
          },
          [&](const node::Scale& n) { return n.alpha * n.child.front().eval_unchecked(x); },
          [&](const node::Shift& n) { return n.child.front().eval_unchecked(x) - n.offset; },
      },
      impl_->data);
}

std::optional<Vector> LipschitzFn::gradient(ConstVectorView x) const {
  space().check_dim(x);
  return gradient_unchecked(x);
}

std::optional<Vector> LipschitzFn::gradient_unchecked(ConstVectorView x) const {
  const Space& sp = impl_->space;
  const std::size_t n = sp.dim();
  return std::visit(
      overloaded{
          [&](const node::Linear& nd) -> std::optional<Vector> { return nd.phi.coeffs(); },
          [&](const node::AbsDev& nd) -> std::optional<Vector> {
            const double r = dot(nd.phi.coeffs(), x) - nd.offset;
            if (std::abs(r) <= kKinkTol) return std::nullopt;
            Vector g = nd.phi.coeffs();
            for (double& v : g) v *= sign(r);
            return g;
          },
          [&](const node::ScaledDist& nd) -> std::optional<Vector> {
            Vector u(n);
            for (std::size_t i = 0; i < n; ++i) u[i] = x[i] - nd.center[i];
            const double len = lp_norm(u, sp.p());
            if (len <= kKinkTol) return std::nullopt;
            Vector g(n, 0.0);
            if (sp.p() == 1.0) {
              for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(u[i]) <= kKinkTol) return std::nullopt;
                g[i] = nd.alpha * sign(u[i]);
              }
              return g;
            }
            if (std::isinf(sp.p())) {
              std::size_t arg = 0;
              for (std::size_t i = 1; i < n; ++i) {
                if (std::abs(u[i]) > std::abs(u[arg])) arg = i;
              }
              for (std::size_t i = 0; i < n; ++i) {
                if (i != arg && std::abs(std::abs(u[i]) - std::abs(u[arg])) <= kKinkTol) return std::nullopt;
              }
              g[arg] = nd.alpha * sign(u[arg]);
              return g;
            }
            const double p = sp.p();
            for (std::size_t i = 0; i < n; ++i) {
              g[i] = nd.alpha * sign(u[i]) * std::pow(std::abs(u[i]) / len, p - 1.0);
            }
            return g;
          },
          [&](const node::SmoothDist& nd) -> std::optional<Vector> {
            double s = nd.eps;
            Vector g(n);
            for (std::size_t i = 0; i < n; ++i) {
              g[i] = x[i] - nd.center[i];
              s += g[i] * g[i];
            }
            const double root = std::sqrt(s);
            for (double& v : g) v *= nd.alpha / root;
            return g;
          },
          [&](const node::MaxOf& nd) -> std::optional<Vector> {
            std::size_t arg = 0;
            double best = -kInfinity;
            std::vector<double> values;
            values.reserve(nd.children.size());
            for (std::size_t k = 0; k < nd.children.size(); ++k) {
              values.push_back(nd.children[k].eval_unchecked(x));
              if (values.back() > best) {
                best = values.back();
                arg = k;
              }
            }
            for (std::size_t k = 0; k < values.size(); ++k) {
              if (k != arg && best - values[k] <= kKinkTol) return std::nullopt;
            }
            return nd.children[arg].gradient_unchecked(x);
          },
          [&](const node::Sum& nd) -> std::optional<Vector> {
            Vector g(n, 0.0);
            for (const auto& c : nd.children) {
              auto gc = c.gradient_unchecked(x);
              if (!gc) return std::nullopt;
              for (std::size_t i = 0; i < n; ++i) g[i] += (*gc)[i];
            }
            return g;
          },
          [&](const node::Scale& nd) -> std::optional<Vector> {
            auto g = nd.child.front().gradient_unchecked(x);
            if (g) {
              for (double& v : *g) v *= nd.alpha;
            }
            return g;
          },
          [&](const node::Shift& nd) -> std::optional<Vector> { return nd.child.front().gradient_unchecked(x); },
      },
      impl_->data);
}

std::optional<std::pair<Vector, Vector>> LipschitzFn::adversarial_pair() const {
  if (!impl_->lip.exact) return std::nullopt;
  const Space& sp = impl_->space;
  const std::size_t n = sp.dim();
  auto quotient = [&](const Vector& a, const Vector& b) {
    return std::abs((*this)(a) - (*this)(b)) / sp.distance(a, b);
  };
  return std::visit(
      overloaded{
          [&](const node::Linear& nd) -> std::optional<std::pair<Vector, Vector>> {
            return std::pair{Vector(n, 0.0), norming_direction(nd.phi, sp)};
          },
          [&](const node::AbsDev& nd) -> std::optional<std::pair<Vector, Vector>> {
            // Both points on the same side of the kink, displaced along the norming direction.
            const Vector d = norming_direction(nd.phi, sp);
            const double rate = dual_norm(nd.phi, sp);
            Vector a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
              a[i] = d[i] * (nd.offset + 1.0) / rate;
              b[i] = a[i] + d[i];
            }
            return std::pair{std::move(a), std::move(b)};
          },
          [&](const node::ScaledDist& nd) -> std::optional<std::pair<Vector, Vector>> {
            Vector b = nd.center;
            b[0] += 1.0;
            return std::pair{nd.center, std::move(b)};
          },
          [&](const node::SmoothDist& nd) -> std::optional<std::pair<Vector, Vector>> {
            const double far = 100.0 * (1.0 + std::sqrt(nd.eps));
            Vector a = nd.center, b = nd.center;
            a[0] += far;
            b[0] += far + 1.0;
            return std::pair{std::move(a), std::move(b)};
          },
          [&](const node::MaxOf& nd) -> std::optional<std::pair<Vector, Vector>> {
            // Slide each eligible child's pair outward until that child dominates.
            std::optional<std::pair<Vector, Vector>> best;
            double best_q = -1.0;
            for (const auto& c : nd.children) {
              if (c.lipschitz().bound != impl_->lip.bound) continue;
              auto pair = c.adversarial_pair();
              if (!pair) continue;
              const auto& [a, b] = *pair;
              for (double far : {0.0, 10.0, 100.0, 1e3, 1e4, 1e5}) {
                Vector a2(n), b2(n);
                for (std::size_t i = 0; i < n; ++i) {
                  const double step = b[i] - a[i];
                  a2[i] = a[i] + far * step;
                  b2[i] = b[i] + far * step;
                }
                const double q = quotient(a2, b2);
                if (q > best_q) {
                  best_q = q;
                  best = std::pair{std::move(a2), std::move(b2)};
                }
              }
            }
            return best;
          },
          [&](const node::Sum& nd) -> std::optional<std::pair<Vector, Vector>> {
            return nd.children.front().adversarial_pair();
          },
          [&](const node::Scale& nd) -> std::optional<std::pair<Vector, Vector>> {
            return nd.child.front().adversarial_pair();
          },
          [&](const node::Shift& nd) -> std::optional<std::pair<Vector, Vector>> {
            return nd.child.front().adversarial_pair();
          },
      },
      impl_->data);
}

LipschitzBound certified_lipschitz(const LipschitzFn& psi) { return psi.lipschitz(); }

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Equal: return "EQUAL";
    case Regime::StrictLess: return "STRICT_LESS";
  }
  return "?";
}

Regime regime_from_string(const std::string& name) {
  if (name == "EQUAL") return Regime::Equal;
  if (name == "STRICT_LESS") return Regime::StrictLess;
  throw InvalidInput("unknown regime '" + name + "' (expected EQUAL or STRICT_LESS)");
}

ProblemInstance::ProblemInstance(LinearFunctional phi, LipschitzFn psi, Regime regime)
    : phi_(std::move(phi)), psi_(std::move(psi)), regime_(regime), phi_norm_(0.0) {
  psi_.space().check_dim(phi_.coeffs());
  phi_norm_ = dual_norm(phi_, psi_.space());
  const LipschitzBound lip = psi_.lipschitz();
  if (regime_ == Regime::Equal) {
    if (!lip.exact) {
      throw HypothesisViolation("EQUAL regime needs an exact Lipschitz certificate for psi");
    }
    if (std::abs(lip.bound - phi_norm_) > 1e-12 * phi_norm_) {
      throw HypothesisViolation("EQUAL regime needs L = ||phi||_*, got L = " + std::to_string(lip.bound) +
                                " and ||phi||_* = " + std::to_string(phi_norm_));
    }
  } else if (!(lip.bound < phi_norm_)) {
    throw HypothesisViolation("STRICT_LESS regime needs a certified L < ||phi||_*");
  }
}

ProblemInstance generate_instance(std::uint64_t seed, const Space& space, Regime regime) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::uniform_real_distribution<double> eps(0.05, 0.5);
  std::uniform_real_distribution<double> shrink(0.2, 0.8);
  std::bernoulli_distribution coin(0.5);

  const std::size_t n = space.dim();
  Vector c(n);
  for (double& v : c) v = coin(rng) ? magnitude(rng) : -magnitude(rng);
  LinearFunctional phi(c);
  const double norm = dual_norm(phi, space);

  auto random_point = [&] {
    Vector x(n);
    for (double& v : x) v = offset(rng);
    return x;
  };

  const int families = space.is_euclidean() ? 4 : 3;
  const int family = std::uniform_int_distribution<int>(0, families - 1)(rng);
  LipschitzFn psi = [&] {
    switch (family) {
      case 0: return LipschitzFn::abs_dev(space, phi, offset(rng));
      case 1: return LipschitzFn::scaled_dist(space, norm, random_point());
      case 2: {
        const double up = offset(rng);
        const double down = offset(rng);
        return LipschitzFn::max_of({LipschitzFn::shift(LipschitzFn::linear(space, c), up),
                                    LipschitzFn::shift(LipschitzFn::linear(space, phi.negated().coeffs()), down)});
      }
      default: {
        const double e = eps(rng);
        return LipschitzFn::smooth_dist(space, norm, e, random_point());
      }
    }
  }();
  if (regime == Regime::StrictLess) psi = LipschitzFn::scale(shrink(rng), std::move(psi));
  return ProblemInstance(std::move(phi), std::move(psi), regime);
}

}  // namespace infid
