#include "commands.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <variant>
#include <sstream>

#include "ebloch/flattening_solver.hpp"
#include "ebloch/gluing_solver.hpp"
#include "ebloch/identity_suites.hpp"
#include "ebloch/triangulation.hpp"

namespace ebloch::cli {

using ojson = nlohmann::ordered_json;

namespace {

Outcome failure(const std::string& stage, int code, const std::string& message) {
  Outcome o;
  o.exit_code = code;
  o.report["error"] = {{"stage", stage}, {"message", message}};
  return o;
}

ojson complex_pair(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

ojson path_reports(const std::vector<PathReport>& reports) {
  ojson out = ojson::array();
  for (const auto& r : reports) {
    out.push_back({{"label", r.label},
                   {"log_parameter", complex_pair(r.log_parameter)},
                   {"pi_multiple", r.pi_multiple},
                   {"parity", r.parity},
                   {"vertex_link", r.vertex_link}});
  }
  return out;
}

ojson shapes_json(const std::vector<std::complex<double>>& shapes) {
  ojson out = ojson::array();
  for (auto z : shapes) out.push_back(complex_pair(z));
  return out;
}

ojson flattenings_json(const FlatteningAssignment& a) {
  ojson out = ojson::array();
  for (const auto& p : a.params) out.push_back(ojson::array({p.p, p.q}));
  return out;
}

// Parse plus shape solve; shared by cvol and flatten.
struct Solved {
  Triangulation tri;
  ShapeSolution shapes;
  double gluing_residual = 0.0;
};

std::variant<Solved, Outcome> parse_and_solve(const std::string& file, const Options& o) {
  Solved s;
  try {
    s.tri = load_triangulation(file);
  } catch (const Error& e) {
    return failure("parse", kInputError, e.what());
  }
  try {
    SolveOptions so;
    so.max_iter = o.max_iter;
    std::optional<std::vector<std::complex<double>>> init;
    if (!s.tri.shapes.empty()) init = s.tri.shapes;
    s.shapes = solve_shapes(s.tri, init, so);
    s.gluing_residual = gluing_equations(s.tri).max_residual(s.shapes.shapes);
  } catch (const Error& e) {
    return failure("shapes", kShapeError, e.what());
  }
  return s;
}

void render_text(const ojson& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !(value.is_array() && !value.empty() && !value[0].is_structured())) {
        out << prefix << key << ":\n";
        render_text(value, out, prefix + "  ");
      } else {
        out << prefix << key << ": " << value.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object()) {
        out << prefix << "-\n";
        render_text(value, out, prefix + "  ");
      } else {
        out << prefix << "- " << value.dump() << "\n";
      }
    }
  } else {
    out << prefix << j.dump() << "\n";
  }
}

}  // namespace

Outcome cmd_cvol(const std::string& file, const Options& o) {
  if (o.mode == "eep") {
    return failure("mode", kUnsupported,
                   "unsupported: the triangulation pipeline computes in the EP version only");
  }
  if (o.mode != "ep") return failure("mode", kInputError, "unknown mode '" + o.mode + "'");

  auto solved = parse_and_solve(file, o);
  if (auto* f = std::get_if<Outcome>(&solved)) return *f;
  auto& s = std::get<Solved>(solved);

  FlatteningAssignment a;
  try {
    a = solve_flattenings(s.tri, s.shapes.shapes);
  } catch (const Error& e) {
    return failure("flattening", kFlatteningError, e.what());
  }

  ComplexVolume cv;
  try {
    cv = complex_volume(fundamental_element(a));
  } catch (const Error& e) {
    return failure("evaluation", kEvaluationError, e.what());
  }

  Outcome out;
  const bool ok = a.conditions_hold(o.tolerance);
  ojson warnings = ojson::array();
  for (const auto& w : s.shapes.warnings) warnings.push_back(w);
  for (const auto& w : a.warnings) warnings.push_back(w);
  if (!ok) warnings.push_back("flattening conditions fail within tolerance");

  out.report["volume"] = cv.volume;
  out.report["cs_mod_pi2"] = cv.cs;
  out.report["cs_status"] = a.edge_flattened_only ? "edge-flattened only, unverified" : "verified";
  out.report["flattenings"] = flattenings_json(a);
  out.report["shapes"] = shapes_json(s.shapes.shapes);
  out.report["geometric_shapes"] = shapes_json(geometric_shapes(s.tri, s.shapes.shapes));
  out.report["residuals"] = {{"gluing", s.gluing_residual},
                             {"newton_iterations", s.shapes.iterations},
                             {"edges", path_reports(a.edges)},
                             {"paths", path_reports(a.paths)}};
  out.report["mode"] = o.mode;
  out.report["warnings"] = warnings;
  out.exit_code = ok ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_verify(int count, unsigned long long seed, const Options& o) {
  if (count < 0) return failure("verify", kInputError, "--count must be non-negative");
  VerifyOptions vo;
  vo.count = count;
  vo.seed = seed;
  vo.tolerance = o.tolerance;
  const auto results = run_identity_suites(vo);

  Outcome out;
  ojson suites = ojson::array();
  bool all = true;
  double max_r = 0.0;
  for (const auto& r : results) {
    all = all && r.passed();
    max_r = std::max(max_r, r.max_r_residual);
    ojson entry = {{"name", r.name},
                   {"instances", r.instances},
                   {"failures", r.failures},
                   {"max_r_residual", r.max_r_residual},
                   {"nu_exact", r.nu_exact},
                   {"passed", r.passed()}};
    if (!r.counterexamples.empty()) entry["counterexamples"] = r.counterexamples;
    suites.push_back(entry);
  }
  out.report["count"] = count;
  out.report["seed"] = seed;
  out.report["passed"] = all;
  out.report["max_r_residual"] = max_r;
  out.report["suites"] = suites;
  out.exit_code = all ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_homology(const std::string& file, const Options& o) {
  Triangulation t;
  try {
    t = load_triangulation(file);
  } catch (const Error& e) {
    return failure("parse", kInputError, e.what());
  }
  Outcome out;
  const JComplex jc = build_j_complex(t);
  const auto h = homology_of_j(jc);
  const bool composites = jc.composites_vanish();
  out.report["H5"] = h[0].to_string();
  out.report["H4"] = h[1].to_string();
  out.report["H3"] = h[2].to_string();
  out.report["H2"] = h[3].to_string();
  out.report["H1"] = h[4].to_string();
  out.report["h1_k_z2_dimension"] = h1_mod2_dimension(t);
  out.report["composites_vanish"] = composites;
  out.report["valences"] = jc.valences;

  bool even = true;
  ojson warnings = ojson::array();
  try {
    SolveOptions so;
    so.max_iter = o.max_iter;
    std::optional<std::vector<std::complex<double>>> init;
    if (!t.shapes.empty()) init = t.shapes;
    const auto shapes = solve_shapes(t, init, so);
    const IntVector c = integral_defect(jc, shapes.shapes, o.tolerance);
    ojson defect = ojson::array();
    for (Eigen::Index e = 0; e < c.size(); ++e) {
      defect.push_back(c(e));
      even = even && c(e) % 2 == 0;
    }
    out.report["integral_defect"] = defect;
    out.report["integral_defect_even"] = even;
  } catch (const Error& e) {
    warnings.push_back(std::string("integral defect not computed: ") + e.what());
  }
  out.report["warnings"] = warnings;
  out.exit_code = composites && even ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_edges(const std::string& file, const Options&) {
  Triangulation t;
  try {
    t = load_triangulation(file);
  } catch (const Error& e) {
    return failure("parse", kInputError, e.what());
  }
  Outcome out;
  const auto classes = edge_classes(t);
  int nv = 0;
  vertex_classes(t, &nv);
  ojson list = ojson::array();
  for (const auto& c : classes) {
    ojson inc = ojson::array();
    for (const auto& i : c.incidences) inc.push_back(ojson::array({i.tet, i.a, i.b}));
    list.push_back({{"valence", c.valence()}, {"incidences", inc}});
  }
  out.report["name"] = t.name;
  out.report["tetrahedra"] = t.size();
  out.report["edge_class_count"] = classes.size();
  out.report["vertex_class_count"] = nv;
  out.report["orientation_signs"] = orientation_signs(t);
  out.report["edge_classes"] = list;
  return out;
}

Outcome cmd_flatten(const std::string& file, const Options& o) {
  auto solved = parse_and_solve(file, o);
  if (auto* f = std::get_if<Outcome>(&solved)) return *f;
  auto& s = std::get<Solved>(solved);
  FlatteningAssignment a;
  try {
    a = solve_flattenings(s.tri, s.shapes.shapes);
  } catch (const Error& e) {
    return failure("flattening", kFlatteningError, e.what());
  }
  Outcome out;
  const bool ok = a.conditions_hold(o.tolerance);
  ojson kernel = ojson::array();
  for (Eigen::Index c = 0; c < a.kernel.cols(); ++c) {
    ojson col = ojson::array();
    for (Eigen::Index r = 0; r < a.kernel.rows(); ++r) col.push_back(a.kernel(r, c));
    kernel.push_back(col);
  }
  out.report["flattenings"] = flattenings_json(a);
  out.report["shapes"] = shapes_json(s.shapes.shapes);
  out.report["orientation_signs"] = a.signs;
  out.report["edges"] = path_reports(a.edges);
  out.report["paths"] = path_reports(a.paths);
  out.report["kernel"] = kernel;
  out.report["conditions_hold"] = ok;
  out.report["edge_flattened_only"] = a.edge_flattened_only;
  out.report["warnings"] = a.warnings;
  out.exit_code = ok ? kOk : kCheckFailed;
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex volumes of ideal triangulations via the extended Bloch group", "ebloch"};
  app.require_subcommand(1);
  Options o;
  std::string file;
  int count = 100;
  unsigned long long seed = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", o.tolerance, "check tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--max-iter", o.max_iter, "Newton iteration limit")->capture_default_str();
  };

  auto* cvol = app.add_subcommand("cvol", "complex volume of a triangulation");
  cvol->add_option("file", file, "triangulation JSON")->required();
  cvol->add_option("--mode", o.mode, "ep or eep")->check(CLI::IsMember({"ep", "eep"}))->capture_default_str();
  add_common(cvol);

  auto* verify = app.add_subcommand("verify", "randomized identity suites");
  verify->add_option("--count", count, "instances per suite")->capture_default_str();
  verify->add_option("--seed", seed, "random seed")->capture_default_str();
  add_common(verify);

  auto* homology = app.add_subcommand("homology", "homology of the J complex");
  homology->add_option("file", file, "triangulation JSON")->required();
  add_common(homology);

  auto* edges = app.add_subcommand("edges", "edge classes");
  edges->add_option("file", file, "triangulation JSON")->required();
  add_common(edges);

  auto* flat = app.add_subcommand("flatten", "integer flattening solve");
  flat->add_option("file", file, "triangulation JSON")->required();
  add_common(flat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;  // --help is not an error
  }

  Outcome result;
  try {
    if (cvol->parsed()) result = cmd_cvol(file, o);
    else if (verify->parsed()) result = cmd_verify(count, seed, o);
    else if (homology->parsed()) result = cmd_homology(file, o);
    else if (edges->parsed()) result = cmd_edges(file, o);
    else result = cmd_flatten(file, o);
  } catch (const std::exception& e) {
    result = failure("internal", kEvaluationError, e.what());
  }

  if (o.format == "text") render_text(result.report, out);
  else out << result.report.dump(2) << "\n";
  if (result.report.contains("error")) {
    err << "error [" << result.report["error"]["stage"].get<std::string>()
        << "]: " << result.report["error"]["message"].get<std::string>() << "\n";
  }
  return result.exit_code;
}

}  // namespace ebloch::cli
