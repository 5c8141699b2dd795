#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "dsoc/convex.hpp"
#include "dsoc/errors.hpp"

namespace dsoc {

/// One-sided boundary distances between a nested pair of regions:
///   beta1 = max over the outer boundary of the distance to the inner set,
///   beta2 = min over the outer boundary of the distance to the inner set.
/// beta2 intentionally ranges over the outer *boundary*; the min over the
/// full outer set would be identically zero for nested sets.
template <typename Scalar>
struct OneSidedDistances {
  Scalar beta1;
  Scalar beta2;
};

template <typename Scalar>
OneSidedDistances<Scalar> one_sided_distances(const ConvexRegion<Scalar>& inner,
                                              const ConvexRegion<Scalar>& outer,
                                              int n_samples = 1000,
                                              uint64_t seed = 2024) {
  using Vec = typename ConvexRegion<Scalar>::Vector;
  if (const auto* bi = dynamic_cast<const Ball<Scalar>*>(&inner)) {
    if (const auto* bo = dynamic_cast<const Ball<Scalar>*>(&outer)) {
      const Scalar shift = (bo->center() - bi->center()).norm();
      const Scalar lo = bo->radius() - shift - bi->radius();
      if (lo < Scalar(0))
        throw ScheduleError("inner ball not contained in outer ball");
      return {bo->radius() + shift - bi->radius(), lo};
    }
  }
  if (const auto* xi = dynamic_cast<const Box<Scalar>*>(&inner)) {
    if (const auto* xo = dynamic_cast<const Box<Scalar>*>(&outer)) {
      const Vec lo_gap = xi->lower() - xo->lower();
      const Vec hi_gap = xo->upper() - xi->upper();
      if (lo_gap.minCoeff() < Scalar(0) || hi_gap.minCoeff() < Scalar(0))
        throw ScheduleError("inner box not contained in outer box");
      Scalar corner_sq = 0, face = std::numeric_limits<Scalar>::max();
      for (Eigen::Index j = 0; j < lo_gap.size(); ++j) {
        const Scalar g = std::max(lo_gap(j), hi_gap(j));
        corner_sq += g * g;
        face = std::min(face, std::min(lo_gap(j), hi_gap(j)));
      }
      return {std::sqrt(corner_sq), face};
    }
  }
  // Sampling fallback over the outer boundary.
  Scalar b1 = 0, b2 = std::numeric_limits<Scalar>::max();
  for (const auto& y : outer.sample_boundary(n_samples, seed)) {
    const Scalar d = (y - inner.project(y)).norm();
    b1 = std::max(b1, d);
    b2 = std::min(b2, d);
  }
  return {b1, b2};
}

/// Expanding family of convex constraint sets growing toward a terminal
/// region. xi bounds the boundary-distance anisotropy and v is the declared
/// decay rate of the family, both consumed by validate_schedule.
template <typename Scalar = double>
class ExpandingSchedule {
 public:
  using Region = ConvexRegion<Scalar>;

  virtual ~ExpandingSchedule() = default;

  virtual const Region& terminal() const = 0;
  virtual std::shared_ptr<const Region> region_at(Scalar t) const = 0;

  virtual Scalar xi() const = 0;
  virtual Scalar decay_rate() const = 0;

  /// Curvature bound valid uniformly over the family.
  virtual Scalar curvature_bound() const = 0;
};

/// Concentric ball family: radius R - gap * exp(-rate * t).
template <typename Scalar = double>
class BallSchedule : public ExpandingSchedule<Scalar> {
 public:
  using Vector = typename ConvexRegion<Scalar>::Vector;

  BallSchedule(Vector center, Scalar outer_radius, Scalar gap, Scalar rate,
               Scalar xi = Scalar(1), Scalar v = Scalar(0))
      : outer_(center, outer_radius),
        gap_(gap),
        rate_(rate),
        xi_(xi),
        v_(v > Scalar(0) ? v : rate) {
    if (!(gap_ > Scalar(0)) || gap_ >= outer_radius)
      throw ConfigError("expanding.gap: must lie in (0, radius)");
    if (!(rate_ > Scalar(0)))
      throw ConfigError("expanding.rate: must be positive");
    if (xi_ < Scalar(1)) throw ConfigError("expanding.xi: must be >= 1");
  }

  Scalar inner_radius(Scalar t) const {
    return outer_.radius() - gap_ * std::exp(-rate_ * t);
  }

  const ConvexRegion<Scalar>& terminal() const override { return outer_; }

  std::shared_ptr<const ConvexRegion<Scalar>> region_at(Scalar t) const override {
    return std::make_shared<Ball<Scalar>>(outer_.center(), inner_radius(t));
  }

  Scalar xi() const override { return xi_; }
  Scalar decay_rate() const override { return v_; }
  Scalar curvature_bound() const override {
    return Scalar(1) / inner_radius(Scalar(0));
  }

  Scalar gap() const { return gap_; }
  Scalar rate() const { return rate_; }

 private:
  Ball<Scalar> outer_;
  Scalar gap_, rate_, xi_, v_;
};

/// Box family inset uniformly by gap * exp(-rate * t) on every face.
template <typename Scalar = double>
class BoxSchedule : public ExpandingSchedule<Scalar> {
 public:
  using Vector = typename ConvexRegion<Scalar>::Vector;

  BoxSchedule(Vector lower, Vector upper, Scalar gap, Scalar rate,
              Scalar xi = Scalar(0), Scalar v = Scalar(0))
      : outer_(lower, upper),
        gap_(gap),
        rate_(rate),
        xi_(xi > Scalar(0) ? xi
                           : std::sqrt(Scalar(outer_.dim()))),  // corner/face
        v_(v > Scalar(0) ? v : rate) {
    const Scalar halfwidth = (upper - lower).minCoeff() / Scalar(2);
    if (!(gap_ > Scalar(0)) || gap_ >= halfwidth)
      throw ConfigError("expanding.gap: must lie in (0, min halfwidth)");
    if (!(rate_ > Scalar(0)))
      throw ConfigError("expanding.rate: must be positive");
  }

  const ConvexRegion<Scalar>& terminal() const override { return outer_; }

  std::shared_ptr<const ConvexRegion<Scalar>> region_at(Scalar t) const override {
    const Scalar g = gap_ * std::exp(-rate_ * t);
    using VecT = typename ConvexRegion<Scalar>::Vector;
    const VecT ones = VecT::Ones(outer_.dim());
    return std::make_shared<Box<Scalar>>(outer_.lower() + g * ones,
                                         outer_.upper() - g * ones);
  }

  Scalar xi() const override { return xi_; }
  Scalar decay_rate() const override { return v_; }
  Scalar curvature_bound() const override { return Scalar(0); }

 private:
  Box<Scalar> outer_;
  Scalar gap_, rate_, xi_, v_;
};

/// Largest r with  region_at(t) + B(0, r)  contained in the terminal set.
/// Exact for ball and box families; otherwise the minimum over sampled
/// boundary points of the inner set of their depth inside the outer set.
template <typename Scalar>
Scalar safety_radius(const ExpandingSchedule<Scalar>& sched, Scalar t,
                     int n_samples = 1000, uint64_t seed = 2024) {
  if (const auto* bs = dynamic_cast<const BallSchedule<Scalar>*>(&sched))
    return bs->gap() * std::exp(-bs->rate() * t);
  if (const auto* xs = dynamic_cast<const BoxSchedule<Scalar>*>(&sched)) {
    const auto d = one_sided_distances(*xs->region_at(t), xs->terminal());
    return d.beta2;  // min per-face slack
  }
  const auto inner = sched.region_at(t);
  Scalar r = std::numeric_limits<Scalar>::max();
  for (const auto& x : inner->sample_boundary(n_samples, seed)) {
    const Scalar depth = -sched.terminal().signed_distance(x);
    if (depth < Scalar(0))
      throw ScheduleError("schedule violates nesting: inner set leaves the "
                          "terminal region");
    r = std::min(r, depth);
  }
  return r;
}

template <typename Scalar>
OneSidedDistances<Scalar> one_sided_distances(
    const ExpandingSchedule<Scalar>& sched, Scalar t, int n_samples = 1000,
    uint64_t seed = 2024) {
  return one_sided_distances(*sched.region_at(t), sched.terminal(), n_samples,
                             seed);
}

template <typename Scalar>
struct ScheduleReport {
  bool nesting_pass = true;            // C1: monotone nesting inside terminal
  std::optional<Scalar> nesting_violation_t;
  bool convergence_pass = true;        // C2: beta1 decays toward zero
  bool ratio_pass = true;              // C4: beta1(t) <= xi * beta2(t)
  std::optional<Scalar> ratio_violation_t;
  bool envelope_pass = true;           // C4: beta1(t) >= beta1(0) e^{-v t}
  std::optional<Scalar> envelope_violation_t;
  bool rate_match_pass = true;         // measured decay rate of beta1 vs v
  Scalar measured_rate = Scalar(0);
  bool all_pass() const {
    return nesting_pass && convergence_pass && ratio_pass && envelope_pass &&
           rate_match_pass;
  }
};

/// Check C1/C2/C4 on a sampled time grid. The envelope test uses the
/// schedule's declared rate v; a mismatch between v and the measured decay
/// rate of beta1(t) is flagged separately.
template <typename Scalar>
ScheduleReport<Scalar> validate_schedule(const ExpandingSchedule<Scalar>& sched,
                                         Scalar horizon, int n_samples = 200,
                                         uint64_t seed = 2024) {
  if (!(horizon > Scalar(0)))
    throw ConfigError("validate_schedule: horizon must be positive");
  ScheduleReport<Scalar> rep;
  const int nt = 33;
  std::vector<Scalar> ts(nt), b1s(nt);
  for (int k = 0; k < nt; ++k) ts[static_cast<size_t>(k)] = horizon * Scalar(k) / Scalar(nt - 1);

  const auto& outer = sched.terminal();
  for (int k = 0; k < nt; ++k) {
    const Scalar t = ts[static_cast<size_t>(k)];
    const auto inner = sched.region_at(t);
    const auto d = one_sided_distances(*inner, outer, n_samples, seed);
    b1s[static_cast<size_t>(k)] = d.beta1;

    // C1: inner set strictly inside the terminal region ...
    for (const auto& x : inner->sample_boundary(n_samples / 4 + 8, seed + 1)) {
      if (outer.signed_distance(x) > Scalar(-1e-12)) {
        if (rep.nesting_pass) rep.nesting_violation_t = t;
        rep.nesting_pass = false;
        break;
      }
    }
    // ... and nested forward in time.
    if (k + 1 < nt) {
      const auto next = sched.region_at(ts[static_cast<size_t>(k + 1)]);
      for (const auto& x : inner->sample_boundary(n_samples / 4 + 8, seed + 2)) {
        if (next->signed_distance(x) > Scalar(1e-10)) {
          if (rep.nesting_pass) rep.nesting_violation_t = t;
          rep.nesting_pass = false;
          break;
        }
      }
    }
    // C4 ratio
    if (d.beta1 > sched.xi() * d.beta2 + Scalar(1e-10)) {
      if (rep.ratio_pass) rep.ratio_violation_t = t;
      rep.ratio_pass = false;
    }
    // C4 envelope, one-sided
    const Scalar env =
        b1s[0] * std::exp(-sched.decay_rate() * t) * Scalar(1 - 1e-9);
    if (d.beta1 < env - Scalar(1e-12)) {
      if (rep.envelope_pass) rep.envelope_violation_t = t;
      rep.envelope_pass = false;
    }
  }

  // C2: beta1 must shrink substantially over the horizon.
  rep.convergence_pass = b1s[nt - 1] <= std::max(Scalar(0.5) * b1s[0],
                                                 Scalar(1e-12));
  for (int k = 1; k < nt; ++k)
    if (b1s[static_cast<size_t>(k)] > b1s[static_cast<size_t>(k - 1)] + Scalar(1e-10))
      rep.convergence_pass = false;

  // Declared rate vs measured log-slope of beta1.
  if (b1s[0] > Scalar(0) && b1s[nt - 1] > Scalar(0)) {
    rep.measured_rate =
        -(std::log(b1s[nt - 1]) - std::log(b1s[0])) / (ts[nt - 1] - ts[0]);
    const Scalar v = sched.decay_rate();
    rep.rate_match_pass =
        std::abs(rep.measured_rate - v) <= Scalar(0.05) * std::max(v, rep.measured_rate);
  }
  return rep;
}

using ExpandingScheduled = ExpandingSchedule<double>;
using BallScheduled = BallSchedule<double>;
using BoxScheduled = BoxSchedule<double>;

}  // namespace dsoc
