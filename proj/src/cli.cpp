#include "circpoly/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>

#include "circpoly/io.hpp"
#include "circpoly/svg.hpp"

namespace circpoly {

namespace {

struct Options {
  double tol = kDefaultTol;
  double certify_tol = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  int trials = 0;  // 0: each suite's default
  std::optional<double> threshold;
  std::string out;
  std::string svg;
  std::string file;
  std::vector<std::string> inputs;  // commands taking two files
  std::string vertex;
  std::string dual;
  std::string kind;
  std::optional<double> param;
  bool cpoly = false;
  std::optional<std::uint64_t> transform;
  std::vector<std::string> only;
  bool serial = false;
};

class Emitter {
 public:
  Emitter(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void report(const std::string& text) const {
    if (opt_.out.empty()) out_ << text;
    else write_file(opt_.out, text);
  }
  void figure(const std::string& text) const {
    if (!opt_.svg.empty()) write_file(opt_.svg, text);
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

Json error_json(const Error& e) { return Json{{"code", error_name(e.code())}, {"message", e.what()}}; }

// Validated c-polyhedron of a file, or the validation report as a failure.
struct Loaded {
  Validation validation;
  const CPolyhedron* cp() const { return validation.passed ? &*validation.cp : nullptr; }
};

Loaded load_validated(const std::string& path, double tol) { return Loaded{validate(load_cpoly(path), tol)}; }

int cmd_validate(const Options& opt, const Emitter& emit) {
  Validation v = validate(load_cpoly(opt.file), opt.tol);
  emit.report(to_text(v.report));
  return v.passed ? kExitPass : kExitGeometricFailure;
}

Json validation_failure(const char* side, const Validation& v) {
  return Json{{"format_version", kFormatVersion},
              {"report", "congruence"},
              {"verdict", "validation_failed"},
              {"side", side},
              {"validation", v.report}};
}

int cmd_congruence(const Options& opt, const Emitter& emit) {
  Loaded a = load_validated(opt.inputs.at(0), opt.tol);
  if (!a.cp()) return emit.report(to_text(validation_failure("a", a.validation))), kExitGeometricFailure;
  Loaded b = load_validated(opt.inputs.at(1), opt.tol);
  if (!b.cp()) return emit.report(to_text(validation_failure("b", b.validation))), kExitGeometricFailure;
  CongruenceVerdict v;
  try {
    v = certify_congruence(*a.cp(), *b.cp(), opt.certify_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ValidationMissing) throw;
    Json report{{"format_version", kFormatVersion},
                {"report", "congruence"},
                {"verdict", "incompatible"},
                {"error", error_json(e)}};
    emit.report(to_text(report));
    return kExitGeometricFailure;
  }
  emit.report(to_text(congruence_report(*a.cp(), v)));
  return v.congruent ? kExitPass : kExitGeometricFailure;
}

int cmd_link(const Options& opt, const Emitter& emit) {
  CPolyFile file = load_cpoly(opt.file);
  int v = file.poly.index_of(opt.vertex);
  if (v < 0) throw Error(ErrorCode::UnknownVertex, "no vertex named '" + opt.vertex + "'");
  Validation val = validate(file, opt.tol);
  if (!val.cp) {
    emit.report(to_text(val.report));
    return kExitGeometricFailure;
  }
  CLink link = c_link(*val.cp, v);
  emit.report(to_text(link_report(*val.cp, link)));
  emit.figure(link_svg(*val.cp, link));
  return link.ok() ? kExitPass : kExitGeometricFailure;
}

int cmd_label(const Options& opt, const Emitter& emit) {
  Loaded a = load_validated(opt.inputs.at(0), opt.tol);
  if (!a.cp()) return emit.report(to_text(validation_failure("a", a.validation))), kExitGeometricFailure;
  Loaded b = load_validated(opt.inputs.at(1), opt.tol);
  if (!b.cp()) return emit.report(to_text(validation_failure("b", b.validation))), kExitGeometricFailure;
  if (a.cp()->poly.names() != b.cp()->poly.names() || a.cp()->poly.faces() != b.cp()->poly.faces())
    throw Error(ErrorCode::ValidationFailed, "the two files have different combinatorics");
  emit.report(to_text(labeling_report(*a.cp(), edge_labels(*a.cp(), *b.cp(), opt.tol))));
  return kExitPass;
}

int cmd_import(const Options& opt, const Emitter& emit, std::ostream& err) {
  ConvexPolyhedron3 p = load_polyhedron(opt.file);
  HyperidealClass cls = classify_strictly_hyperideal(p, opt.tol);
  Json report = classification_report(p, cls);
  if (!cls.strictly_hyperideal || !cls.non_unitary) {
    emit.report(to_text(report));
    return kExitGeometricFailure;
  }
  DualResult dual = dual_cpolyhedron(p, opt.tol);
  report["dual_tangency_residual"] = dual.tangency_residual;
  emit.report(to_text(report));
  if (!opt.svg.empty()) emit.figure(overview_svg(dual.cp.poly, dual.cp.circles));
  if (!opt.dual.empty()) write_file(opt.dual, to_text(cpoly_to_json(dual.cp.poly, dual.cp.circles)));
  else err << "dual c-polyhedron not written: no output path given\n";
  return kExitPass;
}

double default_param(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Cube: return 0.8;
    case FixtureKind::Octahedron: return 1.5;
    case FixtureKind::Dodecahedron: return 0.65;
    case FixtureKind::Icosahedron: return 0.6;
    case FixtureKind::RandomHull: return 8.0;
  }
  return 0.0;
}

int cmd_gen(const Options& opt, const Emitter& emit) {
  FixtureKind kind = parse_fixture_kind(opt.kind);
  if (opt.transform && !opt.cpoly) throw Error(ErrorCode::ParseError, "--transform needs --cpoly");
  ConvexPolyhedron3 p = generate_fixture(kind, opt.param.value_or(default_param(kind)), opt.seed);
  if (!opt.cpoly) {
    emit.report(to_text(polyhedron_to_json(p)));
    return kExitPass;
  }
  CPolyhedron cp = dual_cpolyhedron(p).cp;
  std::vector<OrientedCircle> circles = cp.circles;
  if (opt.transform) {
    Rng rng(trial_seed(opt.seed, "transform", *opt.transform));
    MoebiusMap t = rng.moebius(1.5);
    for (auto& c : circles) c = moebius_apply_circle(t, c);
  }
  emit.report(to_text(cpoly_to_json(cp.poly, circles)));
  emit.figure(overview_svg(cp.poly, circles));
  return kExitPass;
}

int cmd_suite(const Options& opt, const Emitter& emit) {
  std::vector<SuiteResult> results;
  for (const std::string& name : opt.only) find_suite(name);
  for (const SuiteDef& s : all_suites()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), s.name) == opt.only.end()) continue;
    int trials = opt.trials > 0 ? opt.trials : s.default_trials;
    double threshold = opt.threshold.value_or(s.threshold);
    results.push_back(run_suite(s, opt.seed, trials, threshold, opt.serial ? Schedule::Serial : Schedule::Parallel));
  }
  Json report = suite_report(results, opt.seed);
  emit.report(to_text(report));
  return report["passed"].get<bool>() ? kExitPass : kExitGeometricFailure;
}

int cmd_render(const Options& opt, const Emitter& emit) {
  CPolyFile file = load_cpoly(opt.file);
  std::string svg = overview_svg(file.poly, file.circles);
  if (!opt.svg.empty()) emit.figure(svg);
  else emit.report(svg);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Moebius rigidity toolkit for circle polyhedra", "circpoly"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "circpoly 1.0");

  auto add_out = [&](CLI::App* c) { c->add_option("--out", opt.out, "Write the report to this file"); };
  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", opt.tol, "Predicate tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check every c-polyhedron hypothesis of a file");
  validate_cmd->add_option("file", opt.file, "c-polyhedron JSON")->required();
  add_tol(validate_cmd);
  add_out(validate_cmd);

  CLI::App* congruence_cmd = app.add_subcommand("congruence", "Certify Moebius congruence of two c-polyhedra");
  congruence_cmd->add_option("files", opt.inputs, "two c-polyhedron JSON files")->required()->expected(2);
  add_tol(congruence_cmd);
  congruence_cmd->add_option("--certify-tol", opt.certify_tol, "Congruence tolerance")->check(CLI::PositiveNumber);
  add_out(congruence_cmd);

  CLI::App* link_cmd = app.add_subcommand("link", "Report the c-link at a vertex");
  link_cmd->add_option("file", opt.file, "c-polyhedron JSON")->required();
  link_cmd->add_option("vertex", opt.vertex, "vertex name")->required();
  add_tol(link_cmd);
  add_out(link_cmd);
  link_cmd->add_option("--svg", opt.svg, "Write the link figure to this file");

  CLI::App* label_cmd = app.add_subcommand("label", "Dihedral sign labeling between two c-polyhedra");
  label_cmd->add_option("files", opt.inputs, "two c-polyhedron JSON files")->required()->expected(2);
  add_tol(label_cmd);
  add_out(label_cmd);

  CLI::App* import_cmd = app.add_subcommand("import-hyperideal", "Classify a polyhedron and build its dual");
  import_cmd->add_option("file", opt.file, "polyhedron JSON")->required();
  import_cmd->add_option("dual", opt.dual, "Write the dual c-polyhedron to this file");
  add_tol(import_cmd);
  add_out(import_cmd);
  import_cmd->add_option("--svg", opt.svg, "Write an overview of the dual circles to this file");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a fixture polyhedron or its dual");
  gen_cmd->add_option("kind", opt.kind, "cube, octahedron, dodecahedron, icosahedron or random_hull")->required();
  gen_cmd->add_option("--param", opt.param, "Fixture parameter");
  gen_cmd->add_option("--seed", opt.seed, "Seed for random fixtures and transforms");
  gen_cmd->add_flag("--cpoly", opt.cpoly, "Emit the dual c-polyhedron");
  gen_cmd->add_option("--transform", opt.transform, "Apply the random Moebius map with this index");
  add_out(gen_cmd);
  gen_cmd->add_option("--svg", opt.svg, "Write an overview of the circles to this file");

  CLI::App* suite_cmd = app.add_subcommand("suite", "Run the seeded randomized property suites");
  suite_cmd->add_option("--seed", opt.seed, "Base seed");
  suite_cmd->add_option("--trials", opt.trials, "Trials per suite (default: per-suite)")->check(CLI::PositiveNumber);
  suite_cmd->add_option("--tol", opt.threshold, "Override every suite threshold")->check(CLI::NonNegativeNumber);
  suite_cmd->add_option("--only", opt.only, "Run only these suites");
  suite_cmd->add_flag("--serial", opt.serial, "Run trials on one thread");
  add_out(suite_cmd);

  CLI::App* render_cmd = app.add_subcommand("render", "Draw every circle of a c-polyhedron");
  render_cmd->add_option("file", opt.file, "c-polyhedron JSON")->required();
  render_cmd->add_option("--svg", opt.svg, "Write the figure to this file instead of the report stream");
  add_out(render_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  Emitter emit(opt, out);
  try {
    if (*validate_cmd) return cmd_validate(opt, emit);
    if (*congruence_cmd) return cmd_congruence(opt, emit);
    if (*link_cmd) return cmd_link(opt, emit);
    if (*label_cmd) return cmd_label(opt, emit);
    if (*import_cmd) return cmd_import(opt, emit, err);
    if (*gen_cmd) return cmd_gen(opt, emit);
    if (*suite_cmd) return cmd_suite(opt, emit);
    if (*render_cmd) return cmd_render(opt, emit);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::UnknownVertex:
      case ErrorCode::ParamsOutOfRange:
        return kExitInputError;
      default:
        return kExitGeometricFailure;
    }
  }
  return kExitInputError;
}

}  // namespace circpoly
