// ptolemy-lab: command-line front end for the ptolemy_lab headers.
//
// Exit status: 0 when the requested check passes (or a generator/transform succeeds),
// 1 when a check fails, 2 on usage or input errors.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptolemy_lab/ptolemy_lab.hpp"

namespace pl = ptolemy_lab;
using pl::Json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string mode;  // empty: decided by the input / command default
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;  // 0: exhaustive
  bool exhaustive = false;
  std::size_t cap = pl::kDefaultLabelCap;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";
  Json params = Json::object();

  pl::Tolerance tolerance() const { return {tol}; }
  pl::Execution execution() const { return {threads == 0 ? pl::default_thread_count() : threads}; }
  std::optional<pl::Mode> mode_flag() const {
    if (mode.empty()) return std::nullopt;
    return pl::parse_mode(mode);
  }
};

// Thread count and output path are left out so reports compare byte for byte.
Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["inputs"] = c.inputs;
  j["mode"] = c.mode.empty() ? Json(nullptr) : Json(c.mode);
  j["tolerance"] = c.tol;
  j["seed"] = c.seed;
  j["sample"] = c.sample == 0 ? Json(nullptr) : Json(c.sample);
  j["cap"] = c.cap;
  j["format"] = c.format;
  j["params"] = c.params;
  return j;
}

void emit_text(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

void emit(const RunConfig& c, Json doc) {
  doc["config"] = config_json(c);
  emit_text(c, doc.dump(2) + "\n");
}

pl::AnySpace load(const RunConfig& c, const std::string& path, std::optional<pl::Mode> fallback = std::nullopt) {
  auto m = c.mode_flag();
  if (!m) m = fallback;
  return pl::load_space(path, m);
}

template <pl::MetricScalar T>
std::size_t label_index(const pl::MetricSpace<T>& s, const std::string& label) {
  return s.require_index(label);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = pl::detail::trim(item);
    if (item.empty()) continue;
    if (auto slash = item.find('/'); slash != std::string::npos)
      out.push_back(pl::NumericTraits<pl::Rational>::parse(item).get_d());
    else
      out.push_back(pl::NumericTraits<double>::parse(item));
  }
  return out;
}

pl::Point parse_vec(const std::string& text) {
  auto v = parse_list(text);
  if (v.size() != 2) throw UsageError("expected a planar vector 'x,y', got '" + text + "'");
  return pl::point2(v[0], v[1]);
}

// ---------------------------------------------------------------------------------------------

int cmd_validate(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0));
  return std::visit(
      [&](const auto& s) {
        auto rep = pl::validate_metric(s, c.tolerance());
        Json j = pl::to_json(rep, s);
        j["mode"] = std::string(pl::to_string(s.mode()));
        j["tolerance"] = c.tol;
        emit(c, std::move(j));
        return rep.passed ? kPass : kFail;
      },
      sp);
}

int cmd_check_ptolemy(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0));
  pl::ScanStrategy strat = pl::Exhaustive{};
  if (c.sample > 0 && !c.exhaustive) strat = pl::Sampled{c.sample, c.seed};
  return std::visit(
      [&](const auto& s) {
        auto rep = pl::check_ptolemy(s, strat, c.tolerance(), c.execution());
        emit(c, pl::to_json(rep, s, c.tolerance()));
        return rep.passed ? kPass : kFail;
      },
      sp);
}

int cmd_check_mobius(const RunConfig& c) {
  auto a = load(c, c.inputs.at(0));
  auto b = load(c, c.inputs.at(1), pl::mode_of(a));
  if (a.index() != b.index()) throw UsageError("both spaces must be loaded in the same mode (use --mode)");
  return std::visit(
      [&](const auto& sa) {
        using S = std::decay_t<decltype(sa)>;
        const auto& sb = std::get<S>(b);
        auto rep = pl::check_mobius_equivalence(sa, sb, c.tolerance(), c.execution());
        emit(c, pl::to_json(rep, sa, c.tolerance()));
        return rep.passed ? kPass : kFail;
      },
      a);
}

int cmd_check_convexity(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0));
  const auto& p = c.params;
  return std::visit(
      [&](const auto& s) {
        std::size_t x = label_index(s, p.at("x")), y = label_index(s, p.at("y")), m = label_index(s, p.at("m"));
        std::vector<std::size_t> zs;
        if (p.contains("z") && !p.at("z").is_null()) {
          zs.push_back(label_index(s, p.at("z")));
        } else {
          for (std::size_t z = 0; z < s.size(); ++z) zs.push_back(z);
        }
        Json j;
        j["check"] = "convexity";
        bool all = true;
        Json rows = Json::array();
        for (auto z : zs) {
          bool ok = pl::check_distance_convexity(s, x, y, m, z, c.tolerance());
          all = all && ok;
          using T = typename std::decay_t<decltype(s)>::scalar_type;
          T rhs = (s(x, z) + s(y, z)) / pl::NumericTraits<T>::from_int(2);
          rows.push_back(Json{{"z", s.label(z)},
                              {"lhs", pl::scalar_json(s(m, z))},
                              {"rhs", pl::scalar_json(rhs)},
                              {"holds", ok}});
        }
        j["passed"] = all;
        j["mode"] = std::string(pl::to_string(s.mode()));
        j["results"] = std::move(rows);
        j["tolerance"] = c.tol;
        emit(c, std::move(j));
        return all ? kPass : kFail;
      },
      sp);
}

template <pl::MetricScalar T>
int run_trace(const RunConfig& c, const Json& cfg, const pl::MetricSpace<T>& base) {
  using tr = pl::NumericTraits<T>;
  unsigned levels = cfg.value("levels", 0u);
  auto tower = pl::complete_k(base, levels, c.cap, c.execution());
  auto resolve = [&](const Json& label) {
    auto l = label.get<std::string>();
    if (auto i = pl::resolve_label(tower, levels, l)) return *i;
    throw pl::SpaceError("unknown label '" + l + "'");
  };
  auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  pl::Theorem2Config<T> config{tower.top(), resolve(cfg.at("p_minus")), resolve(cfg.at("p_plus")), {}};
  for (const auto& smp : cfg.at("samples"))
    config.samples.push_back(
        {tr::parse(text(smp.at("s"))), resolve(smp.at("x")), resolve(smp.at("y")), resolve(smp.at("m"))});
  T s = tr::parse(c.params.contains("s") ? c.params.at("s").get<std::string>() : text(cfg.at("s")));
  T t = tr::parse(c.params.contains("t") ? c.params.at("t").get<std::string>() : text(cfg.at("t")));
  auto rep = pl::theorem2_trace(config, s, t, c.tolerance());
  Json j = pl::to_json(rep);
  j["mode"] = std::string(pl::to_string(tr::mode));
  j["tolerance"] = c.tol;
  emit(c, std::move(j));
  return rep.passed ? kPass : kFail;
}

int cmd_check_trace(const RunConfig& c) {
  Json cfg = Json::parse(pl::detail::read_file(c.inputs.at(0)));
  std::optional<pl::Mode> mode = c.mode_flag();
  if (!mode) mode = pl::Mode::exact;
  pl::AnySpace sp;
  if (cfg.at("space").is_string()) {
    // relative paths are taken from the config file's directory
    std::filesystem::path path = cfg.at("space").get<std::string>();
    if (path.is_relative()) path = std::filesystem::path(c.inputs.at(0)).parent_path() / path;
    sp = pl::load_space(path.string(), mode);
  } else {
    sp = pl::space_from_json(cfg.at("space"), mode);
  }
  return std::visit([&](const auto& s) { return run_trace(c, cfg, s); }, sp);
}

int cmd_complete(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0), pl::Mode::exact);
  unsigned levels = c.params.at("levels").get<unsigned>();
  return std::visit(
      [&](const auto& s) {
        auto tower = pl::complete_k(s, levels, c.cap, c.execution());
        if (c.format == "csv") {
          emit_text(c, pl::space_to_csv(tower.top()));
        } else {
          emit(c, pl::tower_to_json(tower));
        }
        return kPass;
      },
      sp);
}

int cmd_midpoints(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0), pl::Mode::exact);
  unsigned levels = c.params.value("levels", 0u);
  return std::visit(
      [&](const auto& s) {
        auto tower = pl::complete_k(s, levels, c.cap, c.execution());
        auto resolve = [&](const std::string& l) {
          if (auto i = pl::resolve_label(tower, levels, l)) return *i;
          throw pl::SpaceError("unknown label '" + l + "'");
        };
        std::size_t x = resolve(c.params.at("x")), y = resolve(c.params.at("y"));
        auto ms = pl::midpoint_set(tower.top(), x, y, c.tolerance());
        std::vector<std::string> labels;
        for (auto m : ms) labels.push_back(tower.top().label(m));
        Json j;
        j["check"] = "midpoints";
        j["passed"] = !ms.empty();
        j["level"] = levels;
        j["x"] = tower.top().label(x);
        j["y"] = tower.top().label(y);
        j["midpoints"] = labels;
        j["count"] = ms.size();
        emit(c, std::move(j));
        return ms.empty() ? kFail : kPass;
      },
      sp);
}

int cmd_geodesic(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0), pl::Mode::exact);
  unsigned levels = c.params.at("levels").get<unsigned>();
  pl::MidpointSelector sel = pl::CanonicalMidpoint{};
  if (c.params.contains("via")) sel = pl::NamedMidpoint{c.params.at("via").get<std::string>()};
  if (c.params.contains("index")) sel = pl::IndexedMidpoint{c.params.at("index").get<std::size_t>()};
  return std::visit(
      [&](const auto& s) {
        auto tower = pl::complete_k(s, levels, c.cap, c.execution());
        auto chain = pl::dyadic_chain(tower, s.require_index(c.params.at("x").get<std::string>()),
                                      s.require_index(c.params.at("y").get<std::string>()), levels, sel,
                                      c.tolerance());
        Json j;
        j["check"] = "geodesic";
        j["passed"] = chain.isometric;
        j["chain"] = pl::to_json(chain);
        emit(c, std::move(j));
        return chain.isometric ? kPass : kFail;
      },
      sp);
}

int cmd_embed(const RunConfig& c) {
  auto sp = load(c, c.inputs.at(0));
  std::size_t max_dim = c.params.at("max_dim").get<std::size_t>();
  return std::visit(
      [&](const auto& s) {
        auto res = pl::flatness_embed(s, max_dim, c.tolerance());
        Json j = pl::to_json(res, max_dim);
        j["tolerance"] = c.tol;
        emit(c, std::move(j));
        return res.success ? kPass : kFail;
      },
      sp);
}

int cmd_angles(const RunConfig& c) {
  pl::NormedPlane plane{pl::parse_norm_spec(c.params.at("norm"))};
  pl::AngleTolerance atol{c.params.value("angle_tol", 1e-9)};
  std::vector<double> grid = c.params.contains("scales") ? parse_list(c.params.at("scales").get<std::string>())
                                                         : pl::default_scale_grid();
  auto normalize = [&](pl::Point v) {
    double len = plane.norm(v);
    if (!(len > 0)) throw UsageError("direction must be nonzero");
    return pl::Point(v / len);
  };
  if (c.params.contains("axioms")) {
    std::size_t k = c.params.at("axioms").get<std::size_t>();
    std::vector<pl::Point> dirs;
    for (std::size_t i = 0; i < k; ++i)
      dirs.push_back(pl::unit_direction(plane, 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k)));
    try {
      auto rep = pl::angle_axiom_suite(plane, dirs, grid, atol, c.tolerance());
      Json j = pl::to_json(rep);
      j["norm"] = plane.norm.describe();
      emit(c, std::move(j));
      return rep.passed ? kPass : kFail;
    } catch (const pl::NoWeakAngle& e) {
      Json j;
      j["check"] = "angle_axioms";
      j["passed"] = false;
      j["norm"] = plane.norm.describe();
      j["no_weak_angle"] = Json{{"directions", {e.first(), e.second()}}, {"gap", e.gap()}};
      emit(c, std::move(j));
      return kFail;
    }
  }
  pl::Point u = normalize(parse_vec(c.params.at("u")));
  pl::Point v = normalize(parse_vec(c.params.at("v")));
  auto prof = pl::weak_angle_profile(plane, u, v, grid, atol, c.tolerance());
  Json j = pl::to_json(prof, atol);
  j["norm"] = plane.norm.describe();
  j["u"] = {u[0], u[1]};
  j["v"] = {v[0], v[1]};
  emit(c, std::move(j));
  return prof.exists ? kPass : kFail;
}

int cmd_gen(const RunConfig& c, const std::string& what) {
  Json doc;
  if (what == "paper4") {
    doc = pl::space_to_json(pl::gen_paper_four_point());
  } else {
    pl::GeneratedSpace g = [&] {
      if (what == "cloud")
        return pl::gen_cloud(c.params.at("n").get<std::size_t>(), c.params.at("dim").get<std::size_t>(),
                             pl::parse_norm_spec(c.params.at("norm")), c.seed);
      if (what == "concyclic")
        return pl::gen_concyclic(parse_list(c.params.at("angles").get<std::string>()),
                                 c.params.value("radius", 1.0));
      if (what == "square") return pl::gen_unit_square(pl::parse_norm_spec(c.params.at("norm")));
      throw UsageError("unknown generator '" + what + "'");
    }();
    if (c.format == "csv") {
      emit_text(c, pl::space_to_csv(g.space));
      return kPass;
    }
    doc = pl::space_to_json(g.space);
    doc["cloud"] = pl::cloud_to_json(g.cloud);
  }
  if (c.format == "csv") {
    emit_text(c, pl::space_to_csv(pl::space_from_json(doc)));
    return kPass;
  }
  emit(c, std::move(doc));
  return kPass;
}

int cmd_report(const RunConfig& c) {
  Json r = Json::parse(pl::detail::read_file(c.inputs.at(0)));
  std::ostringstream out;
  auto str = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  out << "check:     " << r.value("check", std::string("?")) << "\n";
  if (r.contains("passed")) out << "result:    " << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  if (r.contains("mode")) out << "mode:      " << str(r.at("mode")) << "\n";
  if (r.contains("strategy")) out << "strategy:  " << str(r.at("strategy")) << "\n";
  if (r.contains("checked")) out << "checked:   " << str(r.at("checked")) << "\n";
  if (r.contains("violations")) out << "violations: " << str(r.at("violations")) << "\n";
  if (r.contains("worst") && r.at("worst").is_object()) {
    const auto& w = r.at("worst");
    out << "worst:     ";
    if (w.contains("labels")) {
      for (const auto& l : w.at("labels")) out << str(l) << ' ';
    }
    if (w.contains("defect")) out << "defect=" << str(w.at("defect"));
    out << "\n";
    if (w.contains("products")) {
      out << "products:  ";
      for (const auto& p : w.at("products")) out << str(p) << ' ';
      out << "\n";
    }
  }
  if (r.contains("inequalities"))
    for (const auto& i : r.at("inequalities"))
      out << "  (" << str(i.at("inequality")) << ") lhs=" << str(i.at("lhs")) << " rhs=" << str(i.at("rhs"))
          << " slack=" << str(i.at("slack")) << (i.at("holds").get<bool>() ? "  ok" : "  VIOLATED") << "\n";
  if (r.contains("tolerance")) out << "tolerance: " << str(r.at("tolerance")) << "\n";
  if (r.contains("seed") && !r.at("seed").is_null()) out << "seed:      " << str(r.at("seed")) << "\n";
  if (r.contains("config")) out << "config:    " << r.at("config").dump() << "\n";
  std::cout << out.str();
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptolemy-lab: Ptolemy inequality checks, midpoint completion and normed-plane probes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "Numeric mode: exact|float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tol", cfg.tol, "Relative tolerance for float comparisons");
    sub->add_option("--seed", cfg.seed, "Seed for sampling and generators");
    sub->add_option("--cap", cfg.cap, "Maximum labels in a completion level");
    sub->add_option("--threads", cfg.threads, "Worker threads (default: $PTOLEMY_LAB_THREADS or all cores)");
    sub->add_option("--out", cfg.out, "Write the result here instead of stdout");
  };

  std::string input, input2, sx, sy, sm, sz, via, norm = "euclidean", su, sv, scales, angles_list, ss, st;
  std::size_t index = 0, n = 20, dim = 2, max_dim = 2, axioms = 0;
  unsigned levels = 1;
  double radius = 1.0, angle_tol = 1e-9;

  auto* validate = app.add_subcommand("validate", "Check the metric axioms");
  validate->add_option("input", input, "Space (.json or .csv)")->required();
  add_common(validate);

  auto* check = app.add_subcommand("check", "Run a check");
  check->require_subcommand(1);
  auto* ptolemy = check->add_subcommand("ptolemy", "Ptolemy inequality over quadruples");
  ptolemy->add_option("input", input)->required();
  ptolemy->add_flag("--exhaustive", cfg.exhaustive, "Scan all quadruples (default)");
  ptolemy->add_option("--sample", cfg.sample, "Scan this many seeded random quadruples");
  add_common(ptolemy);
  auto* mobius = check->add_subcommand("mobius", "Moebius equivalence of two metrics on the same points");
  mobius->add_option("a", input)->required();
  mobius->add_option("b", input2)->required();
  add_common(mobius);
  auto* convexity = check->add_subcommand("convexity", "Distance convexity at a midpoint");
  convexity->add_option("input", input)->required();
  convexity->add_option("--x", sx)->required();
  convexity->add_option("--y", sy)->required();
  convexity->add_option("--m", sm, "Midpoint of x and y")->required();
  convexity->add_option("--z", sz, "Test point (default: every point)");
  add_common(convexity);
  auto* trace = check->add_subcommand("trace", "Proof-trace inequalities along two geodesics");
  trace->add_option("config", input, "Trace configuration (.json)")->required();
  trace->add_option("--s", ss);
  trace->add_option("--t", st);
  add_common(trace);

  auto* complete = app.add_subcommand("complete", "Midpoint completion M^k");
  complete->add_option("input", input)->required();
  complete->add_option("--levels", levels, "k")->required();
  complete->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  add_common(complete);

  auto* midpoints = app.add_subcommand("midpoints", "Midpoint set of two points");
  midpoints->add_option("input", input)->required();
  midpoints->add_option("--x", sx)->required();
  midpoints->add_option("--y", sy)->required();
  midpoints->add_option("--levels", levels, "Search in M^k (default 0)")->default_val(0);
  add_common(midpoints);

  auto* geodesic = app.add_subcommand("geodesic", "Dyadic chain from x to y in M^k");
  geodesic->add_option("input", input)->required();
  geodesic->add_option("--x", sx)->required();
  geodesic->add_option("--y", sy)->required();
  geodesic->add_option("--levels", levels)->required();
  auto* via_opt = geodesic->add_option("--via", via, "Prefer this labelled midpoint");
  auto* index_opt = geodesic->add_option("--index", index, "Prefer the i-th midpoint");
  via_opt->excludes(index_opt);
  add_common(geodesic);

  auto* embed = app.add_subcommand("embed", "Isometric embedding into Euclidean space");
  embed->add_option("input", input)->required();
  embed->add_option("--max-dim", max_dim)->required();
  add_common(embed);

  auto* angles_cmd = app.add_subcommand("angles", "Generalized and weak angles in a normed plane");
  angles_cmd->add_option("--norm", norm, "euclidean | p=<v> | max | polygon=<file>");
  auto* u_opt = angles_cmd->add_option("--u", su, "Direction x,y");
  auto* v_opt = angles_cmd->add_option("--v", sv, "Direction x,y");
  angles_cmd->add_option("--scales", scales, "Comma-separated ratios a:b (b = 1)");
  angles_cmd->add_option("--angle-tol", angle_tol, "Angular tolerance in radians");
  auto* ax_opt = angles_cmd->add_option("--axioms", axioms, "Run the angle axioms on k evenly spaced directions");
  u_opt->excludes(ax_opt);
  v_opt->excludes(ax_opt);
  add_common(angles_cmd);

  auto* gen = app.add_subcommand("gen", "Generate a space document");
  gen->require_subcommand(1);
  auto* g_paper = gen->add_subcommand("paper4", "The four-point space {x, y, m1, m2}");
  auto* g_cloud = gen->add_subcommand("cloud", "Seeded uniform points in [-1,1]^dim");
  g_cloud->add_option("--n", n, "Number of points");
  g_cloud->add_option("--dim", dim, "Ambient dimension");
  g_cloud->add_option("--norm", norm, "euclidean | p=<v> | max | polygon=<file>");
  auto* g_conc = gen->add_subcommand("concyclic", "Points on a circle");
  g_conc->add_option("--angles", angles_list, "Comma-separated increasing angles in [0, 2pi)")->required();
  g_conc->add_option("--radius", radius, "Circle radius");
  auto* g_square = gen->add_subcommand("square", "Unit square corners under a norm");
  g_square->add_option("--norm", norm, "euclidean | p=<v> | max | polygon=<file>");
  for (auto* g : {g_paper, g_cloud, g_conc, g_square}) {
    g->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    add_common(g);
  }

  auto* report = app.add_subcommand("report", "Pretty-print a JSON report");
  report->add_option("input", input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (validate->parsed()) {
      cfg.command = "validate";
      cfg.inputs = {input};
      return cmd_validate(cfg);
    }
    if (check->parsed()) {
      if (ptolemy->parsed()) {
        cfg.command = "check ptolemy";
        cfg.inputs = {input};
        cfg.params["strategy"] = cfg.sample > 0 && !cfg.exhaustive ? "sampled" : "exhaustive";
        return cmd_check_ptolemy(cfg);
      }
      if (mobius->parsed()) {
        cfg.command = "check mobius";
        cfg.inputs = {input, input2};
        return cmd_check_mobius(cfg);
      }
      if (convexity->parsed()) {
        cfg.command = "check convexity";
        cfg.inputs = {input};
        cfg.params = Json{{"x", sx}, {"y", sy}, {"m", sm}, {"z", sz.empty() ? Json(nullptr) : Json(sz)}};
        return cmd_check_convexity(cfg);
      }
      cfg.command = "check trace";
      cfg.inputs = {input};
      if (!ss.empty()) cfg.params["s"] = ss;
      if (!st.empty()) cfg.params["t"] = st;
      return cmd_check_trace(cfg);
    }
    if (complete->parsed()) {
      cfg.command = "complete";
      cfg.inputs = {input};
      cfg.params["levels"] = levels;
      return cmd_complete(cfg);
    }
    if (midpoints->parsed()) {
      cfg.command = "midpoints";
      cfg.inputs = {input};
      cfg.params = Json{{"x", sx}, {"y", sy}, {"levels", levels}};
      return cmd_midpoints(cfg);
    }
    if (geodesic->parsed()) {
      cfg.command = "geodesic";
      cfg.inputs = {input};
      cfg.params = Json{{"x", sx}, {"y", sy}, {"levels", levels}};
      if (!via.empty()) cfg.params["via"] = via;
      if (index_opt->count() > 0) cfg.params["index"] = index;
      return cmd_geodesic(cfg);
    }
    if (embed->parsed()) {
      cfg.command = "embed";
      cfg.inputs = {input};
      cfg.params["max_dim"] = max_dim;
      return cmd_embed(cfg);
    }
    if (angles_cmd->parsed()) {
      cfg.command = "angles";
      cfg.params["norm"] = norm;
      cfg.params["angle_tol"] = angle_tol;
      if (!scales.empty()) cfg.params["scales"] = scales;
      if (ax_opt->count() > 0) {
        cfg.params["axioms"] = axioms;
      } else {
        if (su.empty() || sv.empty()) throw UsageError("angles needs --u and --v (or --axioms k)");
        cfg.params["u"] = su;
        cfg.params["v"] = sv;
      }
      return cmd_angles(cfg);
    }
    if (gen->parsed()) {
      std::string what = g_paper->parsed() ? "paper4" : g_cloud->parsed() ? "cloud" : g_conc->parsed() ? "concyclic" : "square";
      cfg.command = "gen " + what;
      if (what == "cloud") cfg.params = Json{{"n", n}, {"dim", dim}, {"norm", norm}};
      if (what == "concyclic") cfg.params = Json{{"angles", angles_list}, {"radius", radius}};
      if (what == "square") cfg.params = Json{{"norm", norm}};
      return cmd_gen(cfg, what);
    }
    if (report->parsed()) {
      cfg.command = "report";
      cfg.inputs = {input};
      return cmd_report(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "ptolemy-lab: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
