#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "dsoc/errors.hpp"

namespace dsoc {

/// Compact convex region with nonempty interior. Projections are exact for
/// balls and boxes; halfspace intersections project by Dykstra's alternating
/// scheme. All operations are pure; regions are safe to share across threads.
template <typename Scalar = double>
class ConvexRegion {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  virtual ~ConvexRegion() = default;

  virtual int dim() const = 0;

  /// Euclidean projection onto the region. Fixed point for members.
  virtual Vector project(const Vector& x) const = 0;

  /// Negative inside, zero on the boundary, positive outside.
  virtual Scalar signed_distance(const Vector& x) const = 0;

  /// Upper bound on the normal curvature of the boundary.
  virtual Scalar curvature_bound() const = 0;

  virtual Vector interior_point() const = 0;

  /// Radius of a ball around interior_point() that contains the region.
  virtual Scalar bounding_radius() const = 0;

  bool contains(const Vector& x, Scalar tol = Scalar(1e-9)) const {
    return signed_distance(x) <= tol;
  }

  /// Deterministic boundary samples: rays from the interior point bisected
  /// onto the boundary. Overridden with exact constructions where available.
  virtual std::vector<Vector> sample_boundary(int n, uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Vector base = interior_point();
    const Scalar reach = Scalar(2) * bounding_radius() + Scalar(1);
    std::vector<Vector> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      Vector dir(dim());
      do {
        for (int i = 0; i < dim(); ++i) dir(i) = Scalar(gauss(rng));
      } while (dir.norm() < Scalar(1e-12));
      dir.normalize();
      Scalar lo = 0, hi = reach;
      for (int it = 0; it < 200 && hi - lo > Scalar(1e-13) * reach; ++it) {
        const Scalar mid = (lo + hi) / 2;
        (signed_distance(base + mid * dir) <= Scalar(0) ? lo : hi) = mid;
      }
      pts.push_back(base + ((lo + hi) / 2) * dir);
    }
    return pts;
  }

  /// Deterministic interior samples by rejection from the bounding ball.
  virtual std::vector<Vector> sample_interior(int n, uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Vector base = interior_point();
    const Scalar reach = bounding_radius();
    std::vector<Vector> pts;
    pts.reserve(static_cast<size_t>(n));
    int guard = 0;
    while (static_cast<int>(pts.size()) < n && guard < 1000 * n) {
      ++guard;
      Vector dir(dim());
      for (int i = 0; i < dim(); ++i) dir(i) = Scalar(gauss(rng));
      const Scalar nrm = dir.norm();
      if (nrm < Scalar(1e-12)) continue;
      const Scalar r =
          reach * Scalar(std::pow(unif(rng), 1.0 / std::max(dim(), 1)));
      const Vector cand = base + (r / nrm) * dir;
      if (signed_distance(cand) <= Scalar(0)) pts.push_back(cand);
    }
    if (static_cast<int>(pts.size()) < n)
      throw NumericalError("interior sampling rejection rate too high");
    return pts;
  }
};

template <typename Scalar = double>
class Ball : public ConvexRegion<Scalar> {
 public:
  using Vector = typename ConvexRegion<Scalar>::Vector;

  Ball(Vector center, Scalar radius)
      : center_(std::move(center)), radius_(radius) {
    if (!(radius_ > Scalar(0)))
      throw ConfigError("constraint.radius: must be positive");
  }

  int dim() const override { return static_cast<int>(center_.size()); }

  Vector project(const Vector& x) const override {
    const Vector d = x - center_;
    const Scalar n = d.norm();
    if (n <= radius_) return x;
    return center_ + (radius_ / n) * d;
  }

  Scalar signed_distance(const Vector& x) const override {
    return (x - center_).norm() - radius_;
  }

  Scalar curvature_bound() const override { return Scalar(1) / radius_; }
  Vector interior_point() const override { return center_; }
  Scalar bounding_radius() const override { return radius_; }

  const Vector& center() const { return center_; }
  Scalar radius() const { return radius_; }

  std::vector<Vector> sample_boundary(int n, uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vector> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      Vector dir(dim());
      do {
        for (int i = 0; i < dim(); ++i) dir(i) = Scalar(gauss(rng));
      } while (dir.norm() < Scalar(1e-12));
      pts.push_back(center_ + (radius_ / dir.norm()) * dir);
    }
    return pts;
  }

 private:
  Vector center_;
  Scalar radius_;
};

template <typename Scalar = double>
class Box : public ConvexRegion<Scalar> {
 public:
  using Vector = typename ConvexRegion<Scalar>::Vector;

  Box(Vector lower, Vector upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.size() == 0)
      throw ConfigError("constraint.box: lower/upper dimension mismatch");
    if (!((upper_ - lower_).array() > Scalar(0)).all())
      throw ConfigError("constraint.box: lower must be strictly below upper");
  }

  int dim() const override { return static_cast<int>(lower_.size()); }

  Vector project(const Vector& x) const override {
    return x.cwiseMax(lower_).cwiseMin(upper_);
  }

  Scalar signed_distance(const Vector& x) const override {
    const Vector d = (lower_ - x).cwiseMax(x - upper_);
    if ((d.array() <= Scalar(0)).all()) return d.maxCoeff();
    return d.cwiseMax(Scalar(0)).norm();
  }

  Scalar curvature_bound() const override { return Scalar(0); }  // flat faces
  Vector interior_point() const override {
    return ((lower_ + upper_) / Scalar(2)).eval();
  }
  Scalar bounding_radius() const override {
    return ((upper_ - lower_) / Scalar(2)).norm();
  }

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  std::vector<Vector> sample_boundary(int n, uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> face(0, 2 * dim() - 1);
    std::vector<Vector> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      Vector x(dim());
      for (int i = 0; i < dim(); ++i)
        x(i) = lower_(i) + Scalar(unif(rng)) * (upper_(i) - lower_(i));
      const int f = face(rng);
      x(f / 2) = (f % 2 == 0) ? lower_(f / 2) : upper_(f / 2);
      pts.push_back(std::move(x));
    }
    return pts;
  }

  std::vector<Vector> sample_interior(int n, uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Vector> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      Vector x(dim());
      for (int i = 0; i < dim(); ++i)
        x(i) = lower_(i) + Scalar(unif(rng)) * (upper_(i) - lower_(i));
      pts.push_back(std::move(x));
    }
    return pts;
  }

 private:
  Vector lower_, upper_;
};

/// Intersection of halfspaces a_k' x <= b_k with unit normals. Projection by
/// Dykstra's alternating projections, tolerance 1e-10, iteration cap 1e4.
template <typename Scalar = double>
class HalfspaceIntersection : public ConvexRegion<Scalar> {
 public:
  using Vector = typename ConvexRegion<Scalar>::Vector;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  HalfspaceIntersection(Matrix normals, Vector offsets,
                        std::optional<Vector> interior = std::nullopt)
      : normals_(std::move(normals)), offsets_(std::move(offsets)) {
    if (normals_.rows() != offsets_.size() || normals_.rows() == 0)
      throw ConfigError("constraint.halfspaces: normals/offsets mismatch");
    for (Eigen::Index k = 0; k < normals_.rows(); ++k) {
      const Scalar n = normals_.row(k).norm();
      if (n < Scalar(1e-12))
        throw ConfigError("constraint.halfspaces: zero normal");
      normals_.row(k) /= n;
      offsets_(k) /= n;
    }
    interior_ = interior ? *interior : find_interior();
    if (min_slack(interior_) <= Scalar(0))
      throw ConfigError(
          "constraint.halfspaces: no strictly interior point (empty "
          "interior)");
    bounding_radius_ = compute_bounding_radius();
  }

  int dim() const override { return static_cast<int>(normals_.cols()); }

  Vector project(const Vector& x) const override {
    if (signed_distance_inside(x) <= Scalar(0)) return x;
    // Dykstra with one correction vector per halfspace.
    const int m = static_cast<int>(normals_.rows());
    Vector y = x;
    Matrix corr = Matrix::Zero(m, dim());
    const Scalar tol = Scalar(1e-10) * std::max(Scalar(1), x.norm());
    for (int it = 0; it < 10000; ++it) {
      const Vector prev = y;
      for (int k = 0; k < m; ++k) {
        const Vector w = y + corr.row(k).transpose();
        const Scalar viol = normals_.row(k).dot(w) - offsets_(k);
        const Vector proj =
            viol > Scalar(0) ? (w - viol * normals_.row(k).transpose()).eval()
                             : w;
        corr.row(k) = (w - proj).transpose();
        y = proj;
      }
      if ((y - prev).norm() <= tol && max_violation(y) <= tol) return y;
    }
    throw NumericalError(
        "halfspace projection: Dykstra failed to converge in 10000 "
        "iterations");
  }

  Scalar signed_distance(const Vector& x) const override {
    const Scalar inside = signed_distance_inside(x);
    if (inside <= Scalar(0)) return inside;
    return (x - project(x)).norm();
  }

  Scalar curvature_bound() const override { return Scalar(0); }  // flat faces
  Vector interior_point() const override { return interior_; }
  Scalar bounding_radius() const override { return bounding_radius_; }

  const Matrix& normals() const { return normals_; }
  const Vector& offsets() const { return offsets_; }

 private:
  Scalar min_slack(const Vector& x) const {
    return (offsets_ - normals_ * x).minCoeff();
  }
  Scalar max_violation(const Vector& x) const { return -min_slack(x); }
  // max_k(a'x - b) is the exact distance to the nearest face plane when
  // inside; outside it underestimates, so the caller falls back to Dykstra.
  Scalar signed_distance_inside(const Vector& x) const {
    return max_violation(x);
  }

  // Subgradient ascent on the minimum slack; adequate for the small polytopes
  // used here.
  Vector find_interior() const {
    Vector x = Vector::Zero(dim());
    Scalar step = Scalar(1);
    for (int it = 0; it < 20000; ++it) {
      Eigen::Index worst;
      (offsets_ - normals_ * x).minCoeff(&worst);
      x -= step * normals_.row(worst).transpose();
      step *= Scalar(0.9995);
      if (min_slack(x) > Scalar(0.1)) break;
    }
    return x;
  }

  Scalar compute_bounding_radius() const {
    // Walk boundary rays in +-coordinate directions and random diagonals.
    Scalar best = Scalar(0);
    std::mt19937_64 rng(0x5eedbeefULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 16 * dim(); ++k) {
      Vector dir(dim());
      if (k < 2 * dim()) {
        dir.setZero();
        dir(k / 2) = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
      } else {
        for (int i = 0; i < dim(); ++i) dir(i) = Scalar(gauss(rng));
        if (dir.norm() < Scalar(1e-12)) continue;
        dir.normalize();
      }
      // largest t with interior_ + t*dir feasible
      Scalar t = Scalar(1e300);
      for (Eigen::Index r = 0; r < normals_.rows(); ++r) {
        const Scalar a = normals_.row(r).dot(dir);
        if (a > Scalar(1e-14))
          t = std::min(t, (offsets_(r) - normals_.row(r).dot(interior_)) / a);
      }
      if (t > Scalar(1e12))
        throw ConfigError(
            "constraint.halfspaces: region appears unbounded (compactness "
            "required)");
      best = std::max(best, t);
    }
    return best;
  }

  Matrix normals_;
  Vector offsets_;
  Vector interior_;
  Scalar bounding_radius_;
};

using ConvexRegiond = ConvexRegion<double>;
using Balld = Ball<double>;
using Boxd = Box<double>;
using HalfspaceIntersectiond = HalfspaceIntersection<double>;

}  // namespace dsoc
