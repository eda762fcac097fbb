#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptolemy_lab/norms.hpp"
#include "ptolemy_lab/scalar.hpp"

namespace ptolemy_lab {

class AngleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Angular tolerance in radians, kept apart from the distance tolerance.
struct AngleTolerance {
  double radians = 1e-9;
};

/// Euclidean comparison angle at p for a triangle with side lengths |px|, |py|, |xy|.
inline double comparison_angle(double dpx, double dpy, double dxy, const Tolerance& tol = {}) {
  if (!(dpx > 0) || !(dpy > 0)) throw AngleError("comparison angle needs positive sides at p");
  using tr = NumericTraits<double>;
  if (!tr::leq(dxy, dpx + dpy, tol) || !tr::leq(dpx, dpy + dxy, tol) || !tr::leq(dpy, dpx + dxy, tol))
    throw AngleError("comparison angle: side lengths violate the triangle inequality");
  // acos is ill-conditioned at 0 and pi; triangles degenerate up to rounding snap to the ends
  const double ulps = 8 * std::numeric_limits<double>::epsilon() * (dpx + dpy);
  if (dxy <= std::abs(dpx - dpy) + ulps) return 0.0;
  if (dxy >= dpx + dpy - ulps) return std::numbers::pi;
  double c = (dpx * dpx + dpy * dpy - dxy * dxy) / (2 * dpx * dpy);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// The angle at scale (a, b) between the rays t -> t u and t -> t v of a normed plane.
/// Homogeneity makes every s in the defining limit give the same value, so s = 1 is used.
inline double generalized_angle(const NormedPlane& plane, const Point& u, const Point& v, double a, double b,
                                const Tolerance& tol = {}) {
  if (!(a > 0) || !(b > 0)) throw AngleError("generalized angle needs positive scales");
  for (const Point* d : {&u, &v}) {
    double len = plane.norm(*d);
    if (!NumericTraits<double>::equal(len, 1.0, tol)) throw AngleError("direction is not a unit vector in the plane's norm");
  }
  return comparison_angle(a, b, plane.norm(a * u - b * v), tol);
}

/// Scale ratios a:b sampled as (r, 1).
inline std::vector<double> default_scale_grid() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

struct AngleSample {
  double ratio;  // a / b with b = 1
  double angle;
};

/// Outcome of sampling generalized angles over a finite grid: a weak angle means no
/// disagreement was found on the grid, which is all a finite sample can certify.
struct AngleProfile {
  std::vector<AngleSample> samples;
  double reference = 0;  // angle at ratio 1:1, the weak angle when one exists
  double max_gap = 0;    // max pairwise difference over the grid (and the 1:1 reference)
  bool exists = false;
  double value = 0;      // mean of the samples, when exists
  // Witness when !exists: the 1:1 reference against the disagreeing ratio closest to 1
  // (in |log r|, smaller r first).
  std::optional<std::pair<double, double>> witness_ratios;
  double witness_gap = 0;
};

inline AngleProfile weak_angle_profile(const NormedPlane& plane, const Point& u, const Point& v,
                                       const std::vector<double>& grid = default_scale_grid(),
                                       const AngleTolerance& atol = {}, const Tolerance& tol = {}) {
  if (grid.empty()) throw AngleError("scale grid is empty");
  AngleProfile prof;
  for (double r : grid) {
    if (!(r > 0)) throw AngleError("scale ratios must be positive");
    prof.samples.push_back({r, generalized_angle(plane, u, v, r, 1.0, tol)});
  }
  prof.reference = generalized_angle(plane, u, v, 1.0, 1.0, tol);
  double lo = prof.reference, hi = prof.reference, sum = 0;
  for (const auto& s : prof.samples) {
    lo = std::min(lo, s.angle);
    hi = std::max(hi, s.angle);
    sum += s.angle;
  }
  prof.max_gap = hi - lo;
  prof.exists = prof.max_gap <= atol.radians;
  if (prof.exists) {
    prof.value = sum / static_cast<double>(prof.samples.size());
    return prof;
  }
  std::vector<AngleSample> order = prof.samples;
  std::stable_sort(order.begin(), order.end(), [](const AngleSample& x, const AngleSample& y) {
    double lx = std::abs(std::log(x.ratio)), ly = std::abs(std::log(y.ratio));
    if (lx != ly) return lx < ly;
    return x.ratio < y.ratio;
  });
  for (const auto& s : order) {
    double gap = std::abs(s.angle - prof.reference);
    if (gap > atol.radians) {
      prof.witness_ratios = std::pair{1.0, s.ratio};
      prof.witness_gap = gap;
      return prof;
    }
  }
  // every sample agrees with 1:1 individually but not with each other
  auto [mn, mx] = std::minmax_element(prof.samples.begin(), prof.samples.end(),
                                      [](const AngleSample& x, const AngleSample& y) { return x.angle < y.angle; });
  prof.witness_ratios = std::pair{mn->ratio, mx->ratio};
  prof.witness_gap = mx->angle - mn->angle;
  return prof;
}

// ---------------------------------------------------------------------------------------------
// Angle axioms

struct AxiomResult {
  std::string name;
  bool passed = true;
  double worst = 0;  // largest deviation found
  std::vector<std::size_t> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;  // A1..A4
  std::vector<std::vector<double>> weak_angles;
  bool passed = true;
};

/// Thrown when some direction pair has no weak angle on the grid.
class NoWeakAngle : public AngleError {
 public:
  NoWeakAngle(std::size_t i, std::size_t j, double gap)
      : AngleError("directions " + std::to_string(i) + " and " + std::to_string(j) +
                   " have no weak angle (scale gap " + std::to_string(gap) + " rad)"),
        i_(i),
        j_(j),
        gap_(gap) {}
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }
  double gap() const { return gap_; }

 private:
  std::size_t i_, j_;
  double gap_;
};

/// Checks (A1) symmetry, (A2) the triangle inequality over all triples, (A3) zero angle for
/// a direction with itself and (A4) angle pi with its opposite, on weak angles.
inline AxiomReport angle_axiom_suite(const NormedPlane& plane, const std::vector<Point>& directions,
                                     const std::vector<double>& grid = default_scale_grid(),
                                     const AngleTolerance& atol = {}, const Tolerance& tol = {}) {
  const std::size_t n = directions.size();
  AxiomReport rep;
  rep.weak_angles.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto prof = weak_angle_profile(plane, directions[i], directions[j], grid, atol, tol);
      if (!prof.exists) throw NoWeakAngle(i, j, prof.max_gap);
      rep.weak_angles[i][j] = prof.reference;
    }
  const auto& W = rep.weak_angles;
  auto note = [](AxiomResult& r, double dev, std::vector<std::size_t> w, double limit) {
    if (dev > r.worst) {
      r.worst = dev;
      r.witness = std::move(w);
    }
    if (dev > limit) r.passed = false;
  };

  AxiomResult a1{"A1", true, 0, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) note(a1, std::abs(W[i][j] - W[j][i]), {i, j}, atol.radians);

  AxiomResult a2{"A2", true, 0, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) note(a2, W[i][k] - (W[i][j] + W[j][k]), {i, j, k}, atol.radians);

  AxiomResult a3{"A3", true, 0, {}};
  for (std::size_t i = 0; i < n; ++i) note(a3, std::abs(W[i][i]), {i}, atol.radians);

  // (A4) each direction against its exact opposite
  AxiomResult a4{"A4", true, 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Point neg = -directions[i];
    double opp = generalized_angle(plane, directions[i], neg, 1.0, 1.0, tol);
    auto prof = weak_angle_profile(plane, directions[i], neg, grid, atol, tol);
    if (!prof.exists) throw NoWeakAngle(i, i, prof.max_gap);
    note(a4, std::abs(opp - std::numbers::pi), {i}, atol.radians);
  }

  rep.axioms = {a1, a2, a3, a4};
  rep.passed = a1.passed && a2.passed && a3.passed && a4.passed;
  return rep;
}

/// Unit vector at angle theta, rescaled to unit length in the plane's norm.
inline Point unit_direction(const NormedPlane& plane, double theta) {
  Point d = point2(std::cos(theta), std::sin(theta));
  return d / plane.norm(d);
}

}  // namespace ptolemy_lab
