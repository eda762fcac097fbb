#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptolemy_lab {

using Point = Eigen::VectorXd;

class NormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A norm on R^d: Euclidean, p-norm (p >= 1), max-norm, or the gauge of a centrally
/// symmetric convex polygon (planar only).
class Norm {
 public:
  enum class Kind { euclidean, p, max, polygon };

  static Norm euclidean() { return Norm(Kind::euclidean, 2.0); }
  static Norm max() { return Norm(Kind::max, std::numeric_limits<double>::infinity()); }

  /// p = 2 is reported as euclidean, p = inf as max.
  static Norm p_norm(double p) {
    if (std::isnan(p) || p < 1.0) throw NormError("p-norm needs p >= 1, got " + std::to_string(p));
    if (std::isinf(p)) return max();
    if (p == 2.0) return euclidean();
    return Norm(Kind::p, p);
  }

  /// Unit ball given by its vertices in order (either orientation).
  static Norm polygon(std::vector<std::array<double, 2>> vertices) {
    const std::size_t n = vertices.size();
    if (n < 4 || n % 2 != 0) throw NormError("polygon unit ball needs an even number (>= 4) of vertices");
    double scale = 0;
    for (auto& v : vertices) scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
    const double eps = 1e-12 * std::max(1.0, scale);
    for (std::size_t i = 0; i < n / 2; ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[i + n / 2];
      if (std::abs(a[0] + b[0]) > eps || std::abs(a[1] + b[1]) > eps)
        throw NormError("polygon unit ball is not centrally symmetric");
    }
    double orient = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % n];
      orient += a[0] * b[1] - a[1] * b[0];
    }
    if (orient < 0) std::reverse(vertices.begin(), vertices.end());
    Norm out(Kind::polygon, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % n];
      const auto& c = vertices[(i + 2) % n];
      double turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
      if (turn <= eps * eps) throw NormError("polygon unit ball is not convex (or has a collinear vertex)");
      // outward normal of edge a->b, scaled so that normal . a = 1
      double nx = b[1] - a[1], ny = a[0] - b[0];
      double off = nx * a[0] + ny * a[1];
      if (off <= eps * eps) throw NormError("polygon unit ball does not contain the origin in its interior");
      out.facets_.push_back({nx / off, ny / off});
    }
    out.vertices_ = std::move(vertices);
    return out;
  }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const std::vector<std::array<double, 2>>& vertices() const { return vertices_; }
  bool inner_product() const { return kind_ == Kind::euclidean; }

  double operator()(const Point& v) const {
    switch (kind_) {
      case Kind::euclidean: return v.norm();
      case Kind::max: return v.cwiseAbs().maxCoeff();
      case Kind::p: {
        // scaled to avoid overflow for large p
        double m = v.cwiseAbs().maxCoeff();
        if (m == 0) return 0;
        double acc = 0;
        for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, p_);
        return m * std::pow(acc, 1.0 / p_);
      }
      case Kind::polygon: {
        if (v.size() != 2) throw NormError("polygon norms are planar");
        double g = 0;
        for (const auto& f : facets_) g = std::max(g, f[0] * v[0] + f[1] * v[1]);
        return g;
      }
    }
    return 0;
  }

  double distance(const Point& a, const Point& b) const { return (*this)(a - b); }

  std::string describe() const {
    switch (kind_) {
      case Kind::euclidean: return "euclidean";
      case Kind::max: return "p=inf";
      case Kind::p: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "p=%.17g", p_);
        return buf;
      }
      case Kind::polygon: return "polygon(" + std::to_string(vertices_.size()) + ")";
    }
    return "?";
  }

 private:
  Norm(Kind k, double p) : kind_(k), p_(p) {}

  Kind kind_;
  double p_;
  std::vector<std::array<double, 2>> vertices_;
  std::vector<std::array<double, 2>> facets_;
};

/// A two-dimensional normed space; geodesics are the linear segments t -> (1-t)a + tb.
struct NormedPlane {
  Norm norm = Norm::euclidean();

  double distance(const Point& a, const Point& b) const { return norm.distance(a, b); }
  static Point segment_point(const Point& a, const Point& b, double t) { return (1.0 - t) * a + t * b; }
};

inline Point point2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

}  // namespace ptolemy_lab
