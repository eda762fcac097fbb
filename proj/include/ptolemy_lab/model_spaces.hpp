#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/norms.hpp"
#include "ptolemy_lab/random.hpp"

namespace ptolemy_lab {

/// Points of R^d under one norm.
struct PointCloud {
  std::size_t dim = 0;
  Norm norm = Norm::euclidean();
  std::vector<Point> points;
};

/// The induced metric space, labelled p0, p1, ...
inline MetricSpace<double> cloud_space(const PointCloud& c) {
  const std::size_t n = c.points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = c.norm.distance(c.points[i], c.points[j]);
  return {indexed_labels(n), std::move(d)};
}

struct GeneratedSpace {
  MetricSpace<double> space;
  PointCloud cloud;
};

/// X = {x, y, m1, m2} with |xy| = 2 and every other distance 1, in exact arithmetic.
inline MetricSpace<Rational> gen_paper_four_point() {
  const Rational one(1), two(2), zero(0);
  return build_space<Rational>({"x", "y", "m1", "m2"}, std::vector<std::vector<Rational>>{
                                                           {zero, two, one, one},
                                                           {two, zero, one, one},
                                                           {one, one, zero, one},
                                                           {one, one, one, zero},
                                                       });
}

/// Chord-length space of points at the given angles on a circle of the given radius.
inline GeneratedSpace gen_concyclic(const std::vector<double>& angles, double radius = 1.0) {
  if (angles.size() < 3) throw std::invalid_argument("gen_concyclic needs at least 3 angles");
  if (!(radius > 0)) throw std::invalid_argument("gen_concyclic needs a positive radius");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!(angles[i] >= 0 && angles[i] < 2 * std::numbers::pi))
      throw std::invalid_argument("concyclic angles must lie in [0, 2pi)");
    if (i > 0 && !(angles[i] > angles[i - 1])) throw std::invalid_argument("concyclic angles must increase strictly");
  }
  PointCloud c{2, Norm::euclidean(), {}};
  for (double a : angles) c.points.push_back(point2(radius * std::cos(a), radius * std::sin(a)));
  auto s = cloud_space(c);
  return {std::move(s), std::move(c)};
}

/// n seeded uniform points in [-1, 1]^dim with the given norm.
inline GeneratedSpace gen_cloud(std::size_t n, std::size_t dim, const Norm& norm, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw std::invalid_argument("gen_cloud needs n >= 1 and dim >= 1");
  if (norm.kind() == Norm::Kind::polygon && dim != 2) throw NormError("polygon norms need dim = 2");
  Rng rng(seed);
  PointCloud c{dim, norm, {}};
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) p[static_cast<Eigen::Index>(k)] = rng.uniform(-1.0, 1.0);
    c.points.push_back(std::move(p));
  }
  auto s = cloud_space(c);
  return {std::move(s), std::move(c)};
}

/// Corners (0,0), (1,0), (1,1), (0,1) of the unit square under `norm`.
inline GeneratedSpace gen_unit_square(const Norm& norm) {
  PointCloud c{2, norm, {point2(0, 0), point2(1, 0), point2(1, 1), point2(0, 1)}};
  auto s = cloud_space(c);
  return {std::move(s), std::move(c)};
}

/// Sphere inversion v -> center + (v - center) / |v - center|^2 of a Euclidean cloud.
inline PointCloud apply_inversion(const PointCloud& cloud, const Point& center) {
  if (!cloud.norm.inner_product()) throw NormError("inversion is defined for Euclidean clouds only");
  if (static_cast<std::size_t>(center.size()) != cloud.dim) throw std::invalid_argument("center has wrong dimension");
  PointCloud out{cloud.dim, cloud.norm, {}};
  out.points.reserve(cloud.points.size());
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    Point v = cloud.points[i] - center;
    double r2 = v.squaredNorm();
    if (r2 == 0) throw std::invalid_argument("point " + std::to_string(i) + " coincides with the inversion center");
    out.points.push_back(center + v / r2);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Busemann convexity of t -> |alpha(t) beta(t)| along two linear segments

struct Segment {
  Point from, to;
  Point at(double t) const { return NormedPlane::segment_point(from, to, t); }
};

struct BusemannReport {
  std::size_t grid = 0;
  std::uint64_t checked = 0;
  double max_violation = 0;  // max of f(mid) - (f(t1) + f(t2))/2, clipped at 0
  std::pair<double, double> witness{0, 0};
  bool passed = true;
};

/// Midpoint convexity of f(t) = |segA(t) segB(t)| over all pairs of grid parameters
/// t_i = i / (grid - 1).
inline BusemannReport check_busemann_sample(const NormedPlane& plane, const Segment& a, const Segment& b,
                                            std::size_t grid, const Tolerance& tol = {}) {
  if (grid < 3) throw std::invalid_argument("busemann grid needs at least 3 points");
  auto f = [&](double t) { return plane.distance(a.at(t), b.at(t)); };
  BusemannReport rep;
  rep.grid = grid;
  std::vector<double> ts(grid), fs(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    ts[i] = static_cast<double>(i) / static_cast<double>(grid - 1);
    fs[i] = f(ts[i]);
  }
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i + 1; j < grid; ++j) {
      ++rep.checked;
      double mid = f(0.5 * (ts[i] + ts[j]));
      double avg = 0.5 * (fs[i] + fs[j]);
      double excess = mid - avg;
      if (excess > rep.max_violation) {
        rep.max_violation = excess;
        rep.witness = {ts[i], ts[j]};
      }
      if (!NumericTraits<double>::leq(mid, avg, tol)) rep.passed = false;
    }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Euclidean embedding by double centering

struct EmbedResult {
  bool success = false;
  Eigen::MatrixXd coordinates;  // n x dimension, rows follow the space's point order
  std::size_t dimension = 0;    // numerical rank of the centered Gram form
  double max_residual = 0;      // max |d_ij - |x_i - x_j||, on success
  double min_eigenvalue = 0;
  double max_abs_eigenvalue = 0;
  std::string reason;
};

/// Isometric embedding into R^maxDim, if the doubly centered form -1/2 J D^2 J is
/// positive semidefinite (eigenvalues below -tau * max|lambda| count as negative) and has
/// rank <= maxDim.
template <MetricScalar T>
EmbedResult flatness_embed(const MetricSpace<T>& s, std::size_t max_dim, const Tolerance& tol = {}) {
  using tr = NumericTraits<T>;
  if (max_dim < 1) throw std::invalid_argument("flatness_embed needs maxDim >= 1");
  const auto n = static_cast<Eigen::Index>(s.size());
  EmbedResult res;
  if (n == 0) {
    res.success = true;
    return res;
  }
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = tr::to_double(s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      d2(i, j) = v * v;
    }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd gram = -0.5 * centering * d2 * centering;
  gram = 0.5 * (gram + gram.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
  res.min_eigenvalue = lambda.minCoeff();
  res.max_abs_eigenvalue = lambda.cwiseAbs().maxCoeff();
  const double cutoff = tol.tau * res.max_abs_eigenvalue;
  if (res.min_eigenvalue < -cutoff) {
    res.reason = "centered squared-distance form has a negative eigenvalue";
    return res;
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n; k-- > 0;)
    if (lambda[k] > cutoff) kept.push_back(k);
  res.dimension = kept.size();
  if (kept.size() > max_dim) {
    res.reason = "needs dimension " + std::to_string(kept.size()) + " > " + std::to_string(max_dim);
    return res;
  }
  res.coordinates = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c)
    res.coordinates.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]) * std::sqrt(lambda[kept[c]]);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double want = tr::to_double(s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      double got = (res.coordinates.row(i) - res.coordinates.row(j)).norm();
      res.max_residual = std::max(res.max_residual, std::abs(want - got));
    }
  res.success = true;
  return res;
}

}  // namespace ptolemy_lab
