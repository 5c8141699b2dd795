#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "dsoc/convex.hpp"
#include "dsoc/errors.hpp"

namespace dsoc {

/// Local cost with analytic gradient and Hessian action, plus the constants
/// bounding gradient variation: strong monotonicity sigma and Lipschitz L,
/// 0 < sigma <= L.
template <typename Scalar = double>
class LocalObjective {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  virtual ~LocalObjective() = default;

  virtual Scalar value(const Vector& y) const = 0;
  virtual Vector gradient(const Vector& y) const = 0;
  /// Hessian at y applied to w.
  virtual Vector hessian_action(const Vector& y, const Vector& w) const = 0;
  virtual Scalar lipschitz() const = 0;
  virtual Scalar strong_convexity() const = 0;
};

/// (weight/2) * ||y - target||^2
template <typename Scalar = double>
class Quadratic : public LocalObjective<Scalar> {
 public:
  using Vector = typename LocalObjective<Scalar>::Vector;

  Quadratic(Vector target, Scalar weight)
      : target_(std::move(target)), weight_(weight) {
    if (!(weight_ > Scalar(0)))
      throw ConfigError("objectives.weight: must be positive");
  }

  Scalar value(const Vector& y) const override {
    return Scalar(0.5) * weight_ * (y - target_).squaredNorm();
  }
  Vector gradient(const Vector& y) const override {
    return weight_ * (y - target_);
  }
  Vector hessian_action(const Vector&, const Vector& w) const override {
    return weight_ * w;
  }
  Scalar lipschitz() const override { return weight_; }
  Scalar strong_convexity() const override { return weight_; }

  const Vector& target() const { return target_; }
  Scalar weight() const { return weight_; }

 private:
  Vector target_;
  Scalar weight_;
};

/// Arbitrary smooth objective supplied as callbacks with declared constants.
template <typename Scalar = double>
class GeneralSmooth : public LocalObjective<Scalar> {
 public:
  using Vector = typename LocalObjective<Scalar>::Vector;
  using ValueFn = std::function<Scalar(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;
  using HessFn = std::function<Vector(const Vector&, const Vector&)>;

  GeneralSmooth(ValueFn f, GradFn g, HessFn h, Scalar lipschitz, Scalar sigma)
      : f_(std::move(f)),
        g_(std::move(g)),
        h_(std::move(h)),
        lipschitz_(lipschitz),
        sigma_(sigma) {
    if (!(sigma_ > Scalar(0)) || sigma_ > lipschitz_)
      throw ConfigError("objectives: constants must satisfy 0 < sigma <= L");
  }

  Scalar value(const Vector& y) const override { return f_(y); }
  Vector gradient(const Vector& y) const override { return g_(y); }
  Vector hessian_action(const Vector& y, const Vector& w) const override {
    return h_(y, w);
  }
  Scalar lipschitz() const override { return lipschitz_; }
  Scalar strong_convexity() const override { return sigma_; }

 private:
  ValueFn f_;
  GradFn g_;
  HessFn h_;
  Scalar lipschitz_, sigma_;
};

template <typename Scalar>
struct EnsembleConstants {
  Scalar l_max;    // max_i L_i
  Scalar sigma;    // mean of sigma_i
  Scalar sigma1;   // min(sigma, 1/16)
};

/// The collection of local objectives; the protocol consumes per-agent
/// gradients and the ensemble constants.
template <typename Scalar = double>
class ObjectiveEnsemble {
 public:
  using Vector = typename LocalObjective<Scalar>::Vector;
  using Ptr = std::shared_ptr<const LocalObjective<Scalar>>;

  explicit ObjectiveEnsemble(std::vector<Ptr> locals)
      : locals_(std::move(locals)) {
    if (locals_.empty())
      throw ConfigError("objectives: at least one objective required");
  }

  int size() const { return static_cast<int>(locals_.size()); }
  const LocalObjective<Scalar>& local(int i) const { return *locals_[static_cast<size_t>(i)]; }

  EnsembleConstants<Scalar> constants() const {
    Scalar lmax = 0, sig = 0;
    for (const auto& f : locals_) {
      lmax = std::max(lmax, f->lipschitz());
      sig += f->strong_convexity();
    }
    sig /= Scalar(locals_.size());
    return {lmax, sig, std::min(sig, Scalar(1) / Scalar(16))};
  }

  Scalar lipschitz_total() const {
    Scalar s = 0;
    for (const auto& f : locals_) s += f->lipschitz();
    return s;
  }

  Vector sum_gradient(const Vector& y) const {
    Vector g = locals_[0]->gradient(y);
    for (size_t i = 1; i < locals_.size(); ++i) g += locals_[i]->gradient(y);
    return g;
  }

  Vector average_gradient(const Vector& y) const {
    return (sum_gradient(y) / Scalar(locals_.size())).eval();
  }

  Scalar sum_value(const Vector& y) const {
    Scalar v = 0;
    for (const auto& f : locals_) v += f->value(y);
    return v;
  }

  /// sup over the region (interior and boundary samples) of the norm of the
  /// average gradient; feeds the alpha-feasibility formula.
  Scalar gradient_bound(const ConvexRegion<Scalar>& region,
                        int n_interior = 10000, int n_boundary = 1000,
                        uint64_t seed = 77) const {
    Scalar best = 0;
    for (const auto& y : region.sample_interior(n_interior, seed))
      best = std::max(best, average_gradient(y).norm());
    for (const auto& y : region.sample_boundary(n_boundary, seed + 1))
      best = std::max(best, average_gradient(y).norm());
    return best;
  }

 private:
  std::vector<Ptr> locals_;
};

template <typename Scalar>
EnsembleConstants<Scalar> ensemble_constants(const ObjectiveEnsemble<Scalar>& e) {
  return e.constants();
}

using LocalObjectived = LocalObjective<double>;
using Quadraticd = Quadratic<double>;
using GeneralSmoothd = GeneralSmooth<double>;
using ObjectiveEnsembled = ObjectiveEnsemble<double>;

}  // namespace dsoc
