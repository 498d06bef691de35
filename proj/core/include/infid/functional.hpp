#pragma once

#include <cstdint>
#include <string>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "infid/banach.hpp"

namespace infid {

struct LipschitzBound {
  double bound = 0.0;
  // True only when the bound is the least Lipschitz constant, certified by construction.
  bool exact = false;
};

class LipschitzFn;

namespace node {

// <c, x>
struct Linear {
  LinearFunctional phi;
};
// |phi(x) - offset|
struct AbsDev {
  LinearFunctional phi;
  double offset;
};
// alpha * ||x - center||_p
struct ScaledDist {
  double alpha;
  Vector center;
};
// alpha * sqrt(eps + ||x - center||_2^2), Euclidean spaces only
struct SmoothDist {
  double alpha;
  double eps;
  Vector center;
};
struct MaxOf {
  std::vector<LipschitzFn> children;
};
struct Sum {
  std::vector<LipschitzFn> children;
};
// alpha * child(x)
struct Scale {
  double alpha;
  std::vector<LipschitzFn> child;  // exactly one element
};
// child(x) - offset
struct Shift {
  std::vector<LipschitzFn> child;  // exactly one element
  double offset;
};

using Variant = std::variant<Linear, AbsDev, ScaledDist, SmoothDist, MaxOf, Sum, Scale, Shift>;

}  // namespace node

// Lipschitz functional psi: R^n -> R as an immutable expression tree. Every node carries a
// Lipschitz bound computed by composition rules; only whitelisted constructions mark the bound
// exact. Copies share structure.
class LipschitzFn {
 public:
  static LipschitzFn linear(const Space& space, Vector coeffs);
  static LipschitzFn abs_dev(const Space& space, LinearFunctional phi, double offset);
  static LipschitzFn scaled_dist(const Space& space, double alpha, Vector center);
  static LipschitzFn smooth_dist(const Space& space, double alpha, double eps, Vector center);
  static LipschitzFn max_of(std::vector<LipschitzFn> children);
  static LipschitzFn sum(std::vector<LipschitzFn> children);
  static LipschitzFn scale(double alpha, LipschitzFn child);
  static LipschitzFn shift(LipschitzFn child, double offset);

  const Space& space() const noexcept { return impl_->space; }
  const node::Variant& node() const noexcept { return impl_->data; }

  double operator()(ConstVectorView x) const;
  double eval(ConstVectorView x) const { return (*this)(x); }

  LipschitzBound lipschitz() const noexcept { return impl_->lip; }
  // True when the tree is differentiable at every point of R^n.
  bool differentiable_everywhere() const noexcept { return impl_->smooth; }

  // Gradient where defined; nullopt at detected kinks (ties or zeros within 1e-12).
  std::optional<Vector> gradient(ConstVectorView x) const;

  // For exact bounds: a pair (x, y) whose difference quotient is at least 0.99 of the bound.
  std::optional<std::pair<Vector, Vector>> adversarial_pair() const;

  bool same_tree(const LipschitzFn& other) const noexcept { return impl_ == other.impl_; }

 private:
  struct Impl {
    Space space;
    node::Variant data;
    LipschitzBound lip;
    // Some ray along which the node increases at the full rate lip.bound.
    bool full_rate_ascent = false;
    bool smooth = false;
  };

  explicit LipschitzFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static LipschitzFn make(Impl impl);

  double eval_unchecked(ConstVectorView x) const;
  std::optional<Vector> gradient_unchecked(ConstVectorView x) const;

  std::shared_ptr<const Impl> impl_;
};

enum class Regime { Equal, StrictLess };

const char* to_string(Regime regime);
Regime regime_from_string(const std::string& name);

// phi, psi and the Lipschitz regime relating them.
class ProblemInstance {
 public:
  // Validates the regime: Equal needs an exact bound equal to ||phi||_* (relative 1e-12),
  // StrictLess needs a certified bound strictly below ||phi||_*.
  ProblemInstance(LinearFunctional phi, LipschitzFn psi, Regime regime);

  const Space& space() const noexcept { return psi_.space(); }
  const LinearFunctional& phi() const noexcept { return phi_; }
  const LipschitzFn& psi() const noexcept { return psi_; }
  Regime regime() const noexcept { return regime_; }

  double phi_norm() const noexcept { return phi_norm_; }
  double lipschitz_constant() const noexcept { return psi_.lipschitz().bound; }

 private:
  LinearFunctional phi_;
  LipschitzFn psi_;
  Regime regime_;
  double phi_norm_;
};

LipschitzBound certified_lipschitz(const LipschitzFn& psi);

// Deterministic random instance. Equal draws from exact families only (|phi - c0|,
// ||phi||_* ||x - x0||, smooth distance in l2, max of +-phi shifted); StrictLess scales one
// of them by a factor in [0.2, 0.8].
ProblemInstance generate_instance(std::uint64_t seed, const Space& space, Regime regime);

}  // namespace infid
