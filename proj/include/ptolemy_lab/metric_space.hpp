#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptolemy_lab/scalar.hpp"

namespace ptolemy_lab {

class SpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite set of labelled points with a dense distance matrix. Immutable once built; no
/// metric axiom is assumed (see validate_metric).
template <MetricScalar T>
class MetricSpace {
 public:
  using scalar_type = T;
  using traits = NumericTraits<T>;

  MetricSpace() = default;

  /// `dist` is row-major n*n. Throws SpaceError on size mismatch or duplicate labels.
  MetricSpace(std::vector<std::string> labels, std::vector<T> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (dist_.size() != n * n)
      throw SpaceError("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                       std::to_string(n * n));
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], i).second) throw SpaceError("duplicate label '" + labels_[i] + "'");
    }
  }

  static constexpr Mode mode() { return traits::mode; }
  std::size_t size() const { return labels_.size(); }

  const T& operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw std::out_of_range("point index out of range");
    return (*this)(i, j);
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(std::string_view label) const {
    if (auto i = index_of(label)) return *i;
    throw SpaceError("unknown label '" + std::string(label) + "'");
  }

  std::span<const T> row(std::size_t i) const { return {dist_.data() + i * size(), size()}; }
  const std::vector<T>& data() const { return dist_; }

  /// The space with every distance multiplied by lambda.
  MetricSpace scaled(const T& lambda) const {
    std::vector<T> d(dist_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = dist_[k] * lambda;
    return {labels_, std::move(d)};
  }

  /// Induced subspace on the given indices, in the given order.
  MetricSpace subspace(std::span<const std::size_t> indices) const {
    std::vector<std::string> lab;
    lab.reserve(indices.size());
    for (auto i : indices) lab.push_back(label(i));
    std::vector<T> d;
    d.reserve(indices.size() * indices.size());
    for (auto i : indices)
      for (auto j : indices) d.push_back(at(i, j));
    return {std::move(lab), std::move(d)};
  }

 private:
  std::vector<std::string> labels_;
  std::vector<T> dist_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Builds a space from textual entries, parsed in the scalar's mode.
template <MetricScalar T>
MetricSpace<T> build_space(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& matrix) {
  const std::size_t n = labels.size();
  if (matrix.size() != n) throw SpaceError("matrix has " + std::to_string(matrix.size()) + " rows for " +
                                           std::to_string(n) + " labels");
  std::vector<T> d;
  d.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n)
      throw SpaceError("row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      try {
        d.push_back(NumericTraits<T>::parse(matrix[i][j]));
      } catch (const ParseError& e) {
        throw SpaceError("entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
    }
  }
  return {std::move(labels), std::move(d)};
}

template <MetricScalar T>
MetricSpace<T> build_space(std::vector<std::string> labels, const std::vector<std::vector<T>>& matrix) {
  const std::size_t n = labels.size();
  if (matrix.size() != n) throw SpaceError("matrix row count does not match label count");
  std::vector<T> d;
  d.reserve(n * n);
  for (const auto& r : matrix) {
    if (r.size() != n) throw SpaceError("matrix is not square");
    d.insert(d.end(), r.begin(), r.end());
  }
  return {std::move(labels), std::move(d)};
}

/// Labels "p0", "p1", ... for generated spaces.
inline std::vector<std::string> indexed_labels(std::size_t n, std::string_view prefix = "p") {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

template <MetricScalar To, MetricScalar From>
MetricSpace<To> convert_space(const MetricSpace<From>& s) {
  std::vector<To> d;
  d.reserve(s.data().size());
  for (const auto& v : s.data()) {
    if constexpr (std::is_same_v<To, From>)
      d.push_back(v);
    else
      d.push_back(NumericTraits<To>::from_double(NumericTraits<From>::to_double(v)));
  }
  return {s.labels(), std::move(d)};
}

// ---------------------------------------------------------------------------------------------
// Validation

enum class ViolationKind { symmetry, diagonal, positivity, triangle };

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::symmetry: return "symmetry";
    case ViolationKind::diagonal: return "diagonal";
    case ViolationKind::positivity: return "positivity";
    case ViolationKind::triangle: return "triangle";
  }
  return "?";
}

/// One failed axiom. For triangle violations the witness (i, j, k) means d(i,k) > d(i,j) + d(j,k)
/// and the magnitude is the excess.
template <MetricScalar T>
struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> witness;
  T magnitude;
};

template <MetricScalar T>
struct ValidationReport {
  bool passed = true;
  std::vector<Violation<T>> violations;
  std::size_t total_violations = 0;
};

/// Checks symmetry, zero diagonal, positive off-diagonal entries and every ordered triangle.
/// Violations come out grouped by kind, each group in lexicographic witness order; at most
/// `max_listed` are kept but all are counted.
template <MetricScalar T>
ValidationReport<T> validate_metric(const MetricSpace<T>& s, const Tolerance& tol = {},
                                    std::size_t max_listed = 1000) {
  using tr = NumericTraits<T>;
  ValidationReport<T> rep;
  const std::size_t n = s.size();
  auto add = [&](ViolationKind k, std::vector<std::size_t> w, T mag) {
    ++rep.total_violations;
    if (rep.violations.size() < max_listed) rep.violations.push_back({k, std::move(w), std::move(mag)});
  };
  const T zero = tr::zero();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!tr::equal(s(i, j), s(j, i), tol)) {
        T diff = s(i, j) - s(j, i);
        add(ViolationKind::symmetry, {i, j}, diff < zero ? T(-diff) : diff);
      }
  for (std::size_t i = 0; i < n; ++i)
    if (!tr::equal(s(i, i), zero, tol)) add(ViolationKind::diagonal, {i}, s(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(s(i, j) > zero)) add(ViolationKind::positivity, {i, j}, s(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        T bound = s(i, j) + s(j, k);
        if (!tr::leq(s(i, k), bound, tol)) add(ViolationKind::triangle, {i, j, k}, T(s(i, k) - bound));
      }
    }
  rep.passed = rep.total_violations == 0;
  return rep;
}

}  // namespace ptolemy_lab
