#include <srvbv/srvbv.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace srvbv;
using nlohmann::json;

struct Loaded {
  std::string path;
  std::string text;
  SbvCurve curve;
};

Loaded load(const std::string& path) {
  Loaded in;
  in.path = path;
  in.text = read_file(path);
  json j;
  try {
    j = json::parse(in.text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("json: parse error in " + path + ": " + e.what());
  }
  in.curve = curve_from_json(j);
  return in;
}

json input_summary(const Loaded& in) {
  json j;
  j["path"] = in.path;
  j["digest"] = digest_hex(in.text);
  j["length"] = length(in.curve);
  j["nodes"] = in.curve.nodes.size();
  j["jumps"] = jump_set(in.curve).size();
  return j;
}

json knots_json(const Reparam& r) {
  json j = json::array();
  for (const auto& k : r.knots) j.push_back(json::array({k.x, k.y}));
  return j;
}

json vec_json(const Vec& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

json pairs_json(const std::vector<std::pair<Vec, Vec>>& pairs) {
  json j = json::array();
  for (const auto& [p, q] : pairs) j.push_back(json::array({vec_json(p), vec_json(q)}));
  return j;
}

// Result files go to --out when given, otherwise to stdout.
void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_file(out_path, j.dump(2) + "\n");
}

int run_validate(const std::string& path) {
  const SbvCurve c = curve_from_json_unchecked(load_json(path));
  const auto violations = validate(c);
  for (const auto& v : violations) std::cout << v << "\n";
  if (!violations.empty()) return 1;
  std::cout << "ok: dimension " << c.dimension << ", " << c.nodes.size() << " nodes, "
            << jump_set(c).size() << " jumps, length " << length(c) << "\n";
  return 0;
}

int run_distance(const std::string& path1, const std::string& path2, const std::string& mode,
                 const std::string& out) {
  const Loaded in1 = load(path1), in2 = load(path2);
  const double l1 = length(in1.curve), l2 = length(in2.curve);
  json res;
  res["command"] = "distance";
  res["mode"] = mode;
  res["inputs"] = json::array({input_summary(in1), input_summary(in2)});
  if (mode == "relaxed") {
    const double s = s_hat(in1.curve, in2.curve);
    res["s_hat"] = s;
    res["d_hat"] = l1 + l2 - 2.0 * s;
    res["d_hat_rooted"] = d_hat_rooted(in1.curve, in2.curve);
  } else {
    for (const Loaded* in : {&in1, &in2})
      if (has_jumps(in->curve))
        throw std::invalid_argument(in->path + ": curve has jumps; use relaxed mode");
    const AcCurve a = to_ac(in1.curve), b = to_ac(in2.curve);
    if (mode == "param") {
      const double s = s_functional(a, b);
      res["s"] = s;
      res["d_squared"] = l1 + l2 - 2.0 * s;
      res["d"] = distance(a, b);
    } else {
      res["d_scale"] = scale_invariant_distance(a, b);
    }
  }
  emit(res, out);
  return 0;
}

int run_shape(const std::string& path1, const std::string& path2, const GridConfig& cfg,
              const std::string& out) {
  const Loaded in1 = load(path1), in2 = load(path2);
  const MatchResult m = shape_distance(in1.curve, in2.curve, cfg);
  // pull the matched parametrisations back through the jump embeddings
  const Reparam phi1 =
      length(in1.curve) > 0.0 ? compose(zeta(in1.curve), m.psi1) : m.psi1;
  const Reparam phi2 =
      length(in2.curve) > 0.0 ? compose(zeta(in2.curve), m.psi2) : m.psi2;
  json res;
  res["command"] = "shape";
  res["inputs"] = json::array({input_summary(in1), input_summary(in2)});
  res["grid"] = json::array({m.grid_n1, m.grid_n2});
  res["window"] = cfg.window;
  res["s_star"] = m.s_star;
  res["d_shape"] = m.d_shape;
  res["d_shape_rooted"] = detail::root_clamped(m.d_shape, "shape distance");
  res["rounds"] = m.rounds;
  res["degenerate_speed"] = m.degenerate_speed;
  res["psi1"] = knots_json(m.psi1);
  res["psi2"] = knots_json(m.psi2);
  res["phi1"] = knots_json(phi1);
  res["phi2"] = knots_json(phi2);
  res["correspondences"] = pairs_json(correspondences(m, 9));
  emit(res, out);
  return 0;
}

int run_gtransform(const std::string& path, const std::string& out) {
  const Loaded in = load(path);
  const auto [xi_curve, alpha] = xi(in.curve);
  // the root object doubles as a curve file of G(c); the extra keys ride along
  json res = curve_to_json(g_transform(in.curve));
  res["command"] = "gtransform";
  res["input"] = input_summary(in);
  res["alpha"] = alpha;
  res["xi"] = curve_to_json(xi_curve);
  res["zeta"] = knots_json(zeta(in.curve));
  emit(res, out);
  return 0;
}

int run_approx_check(const std::string& path1, const std::string& path2,
                     const std::vector<double>& eps, const std::string& out) {
  const Loaded in1 = load(path1), in2 = load(path2);
  const ApproxReport rep = verify_relaxation(in1.curve, in2.curve, eps);
  const bool pass = rep.max_overshoot <= 1e-8;
  json res;
  res["command"] = "approx-check";
  res["inputs"] = json::array({input_summary(in1), input_summary(in2)});
  res["epsilons"] = rep.epsilons;
  res["s_values"] = rep.s_values;
  res["s_hat_target"] = rep.s_hat_target;
  res["max_overshoot"] = rep.max_overshoot;
  res["final_gap"] = rep.final_gap;
  res["pass"] = pass;
  emit(res, out);
  return pass ? 0 : 1;
}

int run_plot(const std::string& path1, const std::string& path2, const std::string& match_path,
             const std::string& svg_path, bool profile) {
  std::vector<SbvCurve> curves{load(path1).curve};
  if (!path2.empty()) curves.push_back(load(path2).curve);
  if (!profile)
    for (const SbvCurve& c : curves)
      if (c.dimension < 2)
        throw std::invalid_argument("one-dimensional curves plot as graphs; pass --profile");
  std::vector<std::pair<Vec, Vec>> pairs;
  if (!match_path.empty()) {
    const json mj = load_json(match_path);
    if (!mj.contains("correspondences") || !mj["correspondences"].is_array())
      throw std::invalid_argument(match_path + ": no correspondences array");
    for (const auto& p : mj["correspondences"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_array() || !p[1].is_array())
        throw std::invalid_argument(match_path + ": correspondences must be pairs of points");
      auto vec_of = [](const json& a) {
        Vec v(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
        return v;
      };
      pairs.emplace_back(vec_of(p[0]), vec_of(p[1]));
    }
  }
  write_file(svg_path, render_svg(curves, pairs, profile));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"square-root-velocity distances for curves with jumps"};
  app.require_subcommand(1);

  std::string path1, path2, out, svg_path, match_path;
  std::string mode = "relaxed";
  GridConfig cfg;
  std::vector<double> eps;
  bool profile = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a curve file and report violations");
  validate_cmd->add_option("path", path1, "curve file")->required();

  CLI::App* distance_cmd = app.add_subcommand("distance", "velocity correlation distance between two curves");
  distance_cmd->add_option("path1", path1, "first curve file")->required();
  distance_cmd->add_option("path2", path2, "second curve file")->required();
  distance_cmd->add_option("--mode", mode, "param (continuous only), relaxed, or scale")
      ->check(CLI::IsMember({"param", "relaxed", "scale"}));
  distance_cmd->add_option("--out", out, "write the result json here instead of stdout");

  CLI::App* shape_cmd = app.add_subcommand("shape", "quotient shape distance via reparametrisation search");
  shape_cmd->add_option("path1", path1, "first curve file")->required();
  shape_cmd->add_option("path2", path2, "second curve file")->required();
  shape_cmd->add_option("--grid", cfg.n1, "initial grid size per axis");
  shape_cmd->add_option("--window", cfg.window, "max index span per matching move");
  shape_cmd->add_option("--refine", cfg.refine_rounds, "refinement rounds");
  shape_cmd->add_option("--out", out, "write the result json here instead of stdout");

  CLI::App* gtransform_cmd = app.add_subcommand("gtransform", "jump-embedding transform of a curve");
  gtransform_cmd->add_option("path", path1, "curve file")->required();
  gtransform_cmd->add_option("--out", out, "write the result json here instead of stdout");

  CLI::App* approx_cmd = app.add_subcommand("approx-check", "verify the relaxed value is approached from below");
  approx_cmd->add_option("path1", path1, "first curve file")->required();
  approx_cmd->add_option("path2", path2, "second curve file")->required();
  approx_cmd->add_option("--eps", eps, "strictly decreasing spread widths")
      ->required()
      ->delimiter(',');
  approx_cmd->add_option("--out", out, "write the report json here instead of stdout");

  CLI::App* plot_cmd = app.add_subcommand("plot", "render one or two curves to svg");
  plot_cmd->add_option("path1", path1, "first curve file")->required();
  plot_cmd->add_option("path2", path2, "second curve file");
  plot_cmd->add_option("--match", match_path, "shape result json whose correspondences are drawn");
  plot_cmd->add_option("--svg", svg_path, "output svg path")->required();
  plot_cmd->add_flag("--profile", profile, "plot parameter-value graphs instead of the plane");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(path1);
    if (distance_cmd->parsed()) return run_distance(path1, path2, mode, out);
    if (shape_cmd->parsed()) {
      cfg.n2 = cfg.n1;
      return run_shape(path1, path2, cfg, out);
    }
    if (gtransform_cmd->parsed()) return run_gtransform(path1, out);
    if (approx_cmd->parsed()) return run_approx_check(path1, path2, eps, out);
    if (plot_cmd->parsed()) return run_plot(path1, path2, match_path, svg_path, profile);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
