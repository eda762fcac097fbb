#pragma once

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptolemy_lab/angles.hpp"
#include "ptolemy_lab/completion.hpp"
#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/model_spaces.hpp"
#include "ptolemy_lab/ptolemy.hpp"

namespace ptolemy_lab {

using Json = nlohmann::ordered_json;

/// A space whose numeric mode was decided at load time.
using AnySpace = std::variant<MetricSpace<Rational>, MetricSpace<double>>;

inline Mode mode_of(const AnySpace& s) { return s.index() == 0 ? Mode::exact : Mode::floating; }

/// Exact values serialize as "p/q" strings, floats as JSON numbers.
template <MetricScalar T>
Json scalar_json(const T& v) {
  if constexpr (NumericTraits<T>::exact)
    return NumericTraits<T>::format(v);
  else
    return v;
}

namespace detail {

inline std::string json_cell_text(const Json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_number_unsigned()) return std::to_string(cell.get<unsigned long long>());
  if (cell.is_number_float()) {
    // shortest round-trip text, which parses back exactly in either mode
    return Json(cell.get<double>()).dump();
  }
  throw SpaceError("matrix entry is neither a number nor a string: " + cell.dump());
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Minimal RFC 4180 splitting: quoted fields may contain commas and doubled quotes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw SpaceError("unterminated quote in CSV line");
  out.push_back(trim(cur));
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  return q + "\"";
}

template <MetricScalar T>
AnySpace make_any(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& cells) {
  return AnySpace(std::in_place_type<MetricSpace<T>>, build_space<T>(std::move(labels), cells));
}

inline AnySpace make_any(Mode mode, std::vector<std::string> labels,
                         const std::vector<std::vector<std::string>>& cells) {
  return mode == Mode::exact ? make_any<Rational>(std::move(labels), cells)
                             : make_any<double>(std::move(labels), cells);
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Space documents

/// { "labels": [...], "matrix": [[...]], "mode": "exact"|"float" }. `mode_override` wins over
/// the document's own mode; a document without one defaults to float.
inline AnySpace space_from_json(const Json& doc, std::optional<Mode> mode_override = std::nullopt) {
  if (!doc.is_object() || !doc.contains("labels") || !doc.contains("matrix"))
    throw SpaceError("space document needs \"labels\" and \"matrix\"");
  Mode mode = Mode::floating;
  if (doc.contains("mode")) mode = parse_mode(doc.at("mode").get<std::string>());
  if (mode_override) mode = *mode_override;
  std::vector<std::string> labels;
  for (const auto& l : doc.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : doc.at("matrix")) {
    if (!row.is_array()) throw SpaceError("matrix rows must be arrays");
    auto& r = cells.emplace_back();
    for (const auto& c : row) r.push_back(detail::json_cell_text(c));
  }
  return detail::make_any(mode, std::move(labels), cells);
}

template <MetricScalar T>
Json space_to_json(const MetricSpace<T>& s) {
  Json doc;
  doc["labels"] = s.labels();
  Json m = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < s.size(); ++j) row.push_back(scalar_json(s(i, j)));
    m.push_back(std::move(row));
  }
  doc["matrix"] = std::move(m);
  doc["mode"] = std::string(to_string(NumericTraits<T>::mode));
  return doc;
}

inline Json space_to_json(const AnySpace& s) {
  return std::visit([](const auto& sp) { return space_to_json(sp); }, s);
}

/// First row and column are labels. Without an explicit mode the file is exact when any cell
/// is written as a fraction.
inline AnySpace space_from_csv(std::string_view text, std::optional<Mode> mode = std::nullopt) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    rows.push_back(detail::split_csv_line(line));
  }
  if (rows.empty()) throw SpaceError("empty CSV");
  std::vector<std::string> labels(rows[0].begin() + 1, rows[0].end());
  if (rows.size() != labels.size() + 1)
    throw SpaceError("CSV has " + std::to_string(rows.size() - 1) + " data rows for " + std::to_string(labels.size()) +
                     " labels");
  std::vector<std::vector<std::string>> cells;
  bool fractions = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.empty() || r[0] != labels[i - 1])
      throw SpaceError("CSV row " + std::to_string(i) + " label does not match header");
    cells.emplace_back(r.begin() + 1, r.end());
    for (const auto& c : cells.back()) fractions = fractions || c.find('/') != std::string::npos;
  }
  Mode m = mode.value_or(fractions ? Mode::exact : Mode::floating);
  return detail::make_any(m, std::move(labels), cells);
}

template <MetricScalar T>
std::string space_to_csv(const MetricSpace<T>& s) {
  std::ostringstream out;
  for (const auto& l : s.labels()) out << ',' << detail::csv_field(l);
  out << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << detail::csv_field(s.label(i));
    for (std::size_t j = 0; j < s.size(); ++j) {
      if constexpr (NumericTraits<T>::exact)
        out << ',' << NumericTraits<T>::format(s(i, j));
      else
        out << ',' << Json(s(i, j)).dump();
    }
    out << '\n';
  }
  return out.str();
}

inline std::string space_to_csv(const AnySpace& s) {
  return std::visit([](const auto& sp) { return space_to_csv(sp); }, s);
}

/// Reads a .csv matrix or a JSON space document (anything else).
inline AnySpace load_space(const std::string& path, std::optional<Mode> mode = std::nullopt) {
  std::string text = detail::read_file(path);
  bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv) return space_from_csv(text, mode);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpaceError("'" + path + "' is not valid JSON: " + e.what());
  }
  return space_from_json(doc, mode);
}

template <MetricScalar To>
MetricSpace<To> as_mode(const AnySpace& s) {
  return std::visit([](const auto& sp) { return convert_space<To>(sp); }, s);
}

// ---------------------------------------------------------------------------------------------
// Point clouds

inline Json norm_to_json(const Norm& n) {
  Json j;
  switch (n.kind()) {
    case Norm::Kind::euclidean: j["kind"] = "euclidean"; break;
    case Norm::Kind::max: j["kind"] = "max"; break;
    case Norm::Kind::p:
      j["kind"] = "p";
      j["p"] = n.p();
      break;
    case Norm::Kind::polygon:
      j["kind"] = "polygon";
      j["vertices"] = n.vertices();
      break;
  }
  return j;
}

inline Norm norm_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return Norm::euclidean();
  if (kind == "max" || kind == "inf") return Norm::max();
  if (kind == "p") {
    const auto& p = j.at("p");
    if (p.is_string()) return Norm::p_norm(p.get<std::string>() == "inf" ? INFINITY : std::stod(p.get<std::string>()));
    return Norm::p_norm(p.get<double>());
  }
  if (kind == "polygon") return Norm::polygon(j.at("vertices").get<std::vector<std::array<double, 2>>>());
  throw NormError("unknown norm kind '" + kind + "'");
}

/// euclidean | p=<v> (v may be inf) | max | polygon=<file with a JSON vertex list>
inline Norm parse_norm_spec(const std::string& spec) {
  if (spec == "euclidean" || spec == "l2") return Norm::euclidean();
  if (spec == "max" || spec == "inf" || spec == "p=inf") return Norm::max();
  if (spec.rfind("p=", 0) == 0) {
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(spec.substr(2), &used);
    } catch (const std::exception&) {
      throw NormError("bad norm '" + spec + "'");
    }
    if (used != spec.size() - 2) throw NormError("bad norm '" + spec + "'");
    return Norm::p_norm(p);
  }
  if (spec.rfind("polygon=", 0) == 0) {
    Json j = Json::parse(detail::read_file(spec.substr(8)));
    if (j.is_object()) return norm_from_json(j.contains("norm") ? j.at("norm") : j);
    return Norm::polygon(j.get<std::vector<std::array<double, 2>>>());
  }
  throw NormError("unknown norm '" + spec + "' (euclidean | p=<v> | max | polygon=<file>)");
}

inline Json cloud_to_json(const PointCloud& c) {
  Json j;
  j["dim"] = c.dim;
  j["norm"] = norm_to_json(c.norm);
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  j["points"] = std::move(pts);
  return j;
}

inline PointCloud cloud_from_json(const Json& j) {
  PointCloud c;
  c.dim = j.at("dim").get<std::size_t>();
  c.norm = norm_from_json(j.at("norm"));
  for (const auto& p : j.at("points")) {
    auto v = p.get<std::vector<double>>();
    if (v.size() != c.dim) throw SpaceError("point has wrong dimension");
    c.points.push_back(Eigen::Map<const Point>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  return c;
}

// ---------------------------------------------------------------------------------------------
// Reports

template <MetricScalar T>
Json to_json(const ValidationReport<T>& r, const MetricSpace<T>& s) {
  Json j;
  j["check"] = "validate";
  j["passed"] = r.passed;
  j["points"] = s.size();
  j["total_violations"] = r.total_violations;
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e;
    e["kind"] = std::string(to_string(x.kind));
    e["indices"] = x.witness;
    std::vector<std::string> labels;
    for (auto i : x.witness) labels.push_back(s.label(i));
    e["labels"] = labels;
    e["magnitude"] = scalar_json(x.magnitude);
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

template <MetricScalar T>
Json to_json(const QuadrupleVerdict<T>& v, const MetricSpace<T>& s) {
  Json j;
  j["indices"] = v.quadruple.idx;
  std::vector<std::string> labels;
  for (auto i : v.quadruple.idx) labels.push_back(s.label(i));
  j["labels"] = labels;
  j["products"] = Json::array({scalar_json(v.products[0]), scalar_json(v.products[1]), scalar_json(v.products[2])});
  j["defect"] = scalar_json(v.defect);
  j["satisfied"] = v.satisfied;
  return j;
}

template <MetricScalar T>
Json to_json(const PtolemyReport<T>& r, const MetricSpace<T>& s, const Tolerance& tol) {
  Json j;
  j["check"] = "ptolemy";
  j["passed"] = r.passed;
  j["mode"] = std::string(to_string(NumericTraits<T>::mode));
  if (const auto* smp = std::get_if<Sampled>(&r.strategy)) {
    j["strategy"] = "sampled";
    j["sample"] = smp->count;
  } else {
    j["strategy"] = "exhaustive";
  }
  j["points"] = s.size();
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  j["worst"] = r.worst ? to_json(*r.worst, s) : Json(nullptr);
  j["tolerance"] = tol.tau;
  if (const auto* smp = std::get_if<Sampled>(&r.strategy))
    j["seed"] = smp->seed;
  else
    j["seed"] = nullptr;
  return j;
}

template <MetricScalar T>
Json to_json(const MobiusReport<T>& r, const MetricSpace<T>& s, const Tolerance& tol) {
  Json j;
  j["check"] = "mobius";
  j["passed"] = r.passed;
  j["mode"] = std::string(to_string(NumericTraits<T>::mode));
  j["strategy"] = "exhaustive";
  j["points"] = s.size();
  j["checked"] = r.checked;
  j["violations"] = r.mismatches;
  if (r.worst) {
    Json w;
    w["indices"] = r.worst->quadruple.idx;
    std::vector<std::string> labels;
    for (auto i : r.worst->quadruple.idx) labels.push_back(s.label(i));
    w["labels"] = labels;
    auto trip = [](const std::array<T, 3>& t) {
      return Json::array({scalar_json(t[0]), scalar_json(t[1]), scalar_json(t[2])});
    };
    w["triple_a"] = trip(r.worst->triple_a);
    w["triple_b"] = trip(r.worst->triple_b);
    w["defect"] = scalar_json(r.worst->discrepancy);
    j["worst"] = std::move(w);
  } else {
    j["worst"] = nullptr;
  }
  j["tolerance"] = tol.tau;
  j["seed"] = nullptr;
  return j;
}

template <MetricScalar T>
Json to_json(const TraceReport<T>& r) {
  Json j;
  j["check"] = "trace";
  j["passed"] = r.passed;
  j["s"] = scalar_json(r.s);
  j["t"] = scalar_json(r.t);
  Json ineq = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["inequality"] = c.name;
    e["lhs"] = scalar_json(c.lhs);
    e["rhs"] = scalar_json(c.rhs);
    e["slack"] = scalar_json(c.slack);
    e["holds"] = c.holds;
    ineq.push_back(std::move(e));
  }
  j["inequalities"] = std::move(ineq);
  return j;
}

template <MetricScalar T>
Json to_json(const DyadicChain<T>& c) {
  Json j;
  j["level"] = c.level;
  j["points"] = c.points;
  j["labels"] = c.labels;
  j["step"] = scalar_json(c.step);
  j["isometric"] = c.isometric;
  return j;
}

/// Completion output: a space document plus, per label, its children one level down and the
/// base labels at its leaves.
template <MetricScalar T>
Json tower_to_json(const Tower<T>& t) {
  const unsigned k = t.depth();
  Json doc = space_to_json(t.top());
  doc["levels"] = k;
  Json prov;
  for (std::size_t i = 0; i < t.top().size(); ++i) {
    Json e;
    if (k > 0) {
      auto p = t.children(k, i);
      e["children"] = {t.level(k - 1).label(p.a), t.level(k - 1).label(p.b)};
    }
    e["base"] = t.leaves(k, i);
    prov[t.top().label(i)] = std::move(e);
  }
  doc["provenance"] = std::move(prov);
  return doc;
}

inline Json to_json(const EmbedResult& r, std::size_t max_dim) {
  Json j;
  j["check"] = "embed";
  j["passed"] = r.success;
  j["max_dim"] = max_dim;
  j["dimension"] = r.dimension;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["max_abs_eigenvalue"] = r.max_abs_eigenvalue;
  if (r.success) {
    j["max_residual"] = r.max_residual;
    Json coords = Json::array();
    for (Eigen::Index i = 0; i < r.coordinates.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(r.coordinates.cols()));
      for (Eigen::Index c = 0; c < r.coordinates.cols(); ++c) row[static_cast<std::size_t>(c)] = r.coordinates(i, c);
      coords.push_back(row);
    }
    j["coordinates"] = std::move(coords);
  } else {
    j["reason"] = r.reason;
  }
  return j;
}

inline Json to_json(const AngleProfile& p, const AngleTolerance& atol) {
  Json j;
  j["check"] = "angles";
  j["passed"] = p.exists;
  j["verdict"] = p.exists ? "exists" : "fails";
  // finite grids can only fail to find a counterexample
  j["note"] = "exists means no scale disagreement on the sampled grid";
  Json s = Json::array();
  for (const auto& x : p.samples) s.push_back(Json{{"ratio", x.ratio}, {"angle", x.angle}});
  j["samples"] = std::move(s);
  j["reference"] = p.reference;
  j["max_gap"] = p.max_gap;
  j["angular_tolerance"] = atol.radians;
  if (p.exists) {
    j["value"] = p.value;
  } else {
    j["witness"] = Json{{"ratios", {p.witness_ratios->first, p.witness_ratios->second}}, {"gap", p.witness_gap}};
  }
  return j;
}

inline Json to_json(const AxiomReport& r) {
  Json j;
  j["check"] = "angle_axioms";
  j["passed"] = r.passed;
  Json ax = Json::array();
  for (const auto& a : r.axioms)
    ax.push_back(Json{{"axiom", a.name}, {"passed", a.passed}, {"worst", a.worst}, {"witness", a.witness}});
  j["axioms"] = std::move(ax);
  return j;
}

inline Json to_json(const BusemannReport& r, const Tolerance& tol) {
  Json j;
  j["check"] = "busemann";
  j["passed"] = r.passed;
  j["grid"] = r.grid;
  j["checked"] = r.checked;
  j["max_violation"] = r.max_violation;
  j["witness"] = {r.witness.first, r.witness.second};
  j["tolerance"] = tol.tau;
  return j;
}

}  // namespace ptolemy_lab
