#include "spacebound/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "spacebound/error.hpp"
#include "spacebound/scenarios.hpp"
#include "spacebound/smt.hpp"
#include "spacebound/svg.hpp"
#include "workspace.hpp"

namespace spacebound {

namespace {

using cli::Backend;
using cli::CheckConfig;
using cli::Workspace;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
}

std::vector<Document> load(const std::vector<std::string>& files) {
  std::vector<Document> docs;
  for (const auto& path : files) {
    try {
      docs.push_back(parse_document(read_file(path)));
    } catch (const SyntaxError& e) {
      throw Error(ErrorCode::SyntaxError, path + ":" + e.detail());
    }
  }
  return docs;
}

bool mentions_nodes(const Workspace& ws) {
  bool found = false;
  for (const auto& c : ws.components()) {
    for_each_atom(ws.term_of(c), [&](const Atom& a) { found = found || a.unowned().is<OccupyNode>(); });
  }
  return found;
}

bool mentions_relative(const Workspace& ws) {
  bool found = false;
  for (const auto& c : ws.components()) {
    for_each_atom(ws.term_of(c), [&](const Atom& a) {
      if (const auto* tp = a.get_if<TimePoint>()) found = found || tp->label.relative;
      if (const auto* ti = a.get_if<TimeInterval>()) found = found || ti->from.relative || ti->to.relative;
    });
  }
  return found;
}

struct InputOptions {
  std::vector<std::string> files;
  std::vector<std::string> ranges;
  std::string geometry;
  std::string trace;

  void add_to(CLI::App* app) {
    app->add_option("inputs", files, ".besd input files")->required()->check(CLI::ExistingFile);
    app->add_option("--range", ranges, "Component to treat as an under-approximated range");
    app->add_option("--geometry", geometry, "Node geometry used to geometrize node atoms");
    app->add_option("--trace", trace, "Event trace used to resolve events");
  }

  Workspace workspace() const {
    return Workspace(load(files), std::set<std::string>(ranges.begin(), ranges.end()));
  }

  // Geometry and trace are applied when named, or when the input holds
  // exactly one and the components need it.
  std::vector<cli::PassSpec> implicit_passes(const Workspace& ws) const {
    std::vector<cli::PassSpec> passes;
    auto named = [](const std::string& pass, const std::string& arg) {
      cli::PassSpec p{pass, {}};
      if (!arg.empty()) {
        SExpr e;
        e.kind = SExpr::Kind::String;
        e.text = arg;
        p.args.push_back(e);
      }
      return p;
    };
    const bool has_trace = !trace.empty() || ws.single<EventTrace>();
    if (has_trace && mentions_relative(ws)) passes.push_back(named("resolve-relative", trace));
    if (!geometry.empty() || (ws.single<NodeGeometry>() && mentions_nodes(ws))) {
      passes.push_back(named("geometrize", geometry));
    }
    if (has_trace) passes.push_back(named("resolve-events", trace));
    return passes;
  }
};

struct CheckFlags {
  std::string backend = "boxes";
  std::string property = "collision";
  Coord step = 1;
  Coord margin = 0;
  bool early_exit = false;
  unsigned jobs = 0;
  std::string solver_cmd;
  long long solver_timeout_ms = 10000;
  std::string smt_dir = "smt-vc";

  void add_solver_options(CLI::App* app) {
    app->add_option("--solver-cmd", solver_cmd, "SMT solver command, e.g. \"z3 -in\" (default: $SPACEBOUND_SOLVER)");
    app->add_option("--solver-timeout", solver_timeout_ms, "Solver timeout per document in milliseconds");
    app->add_option("--jobs", jobs, "Parallel workers (default: processor count)");
    app->add_option("--smt-dir", smt_dir, "Directory for emitted .smt2 files");
  }

  void add_to(CLI::App* app) {
    app->add_option("--backend", backend, "boxes, points, smt-per-t or smt-mono")
        ->check(CLI::IsMember({"boxes", "points", "smt-per-t", "smt-mono"}));
    app->add_option("--property", property, "collision or coverage")->check(CLI::IsMember({"collision", "coverage"}));
    app->add_option("--step", step, "Grid step of the points backend");
    app->add_option("--margin", margin, "Safety margin added around the first component of each pair");
    app->add_flag("--early-exit", early_exit, "Stop each pair at the first failing time point");
    add_solver_options(app);
  }

  CheckConfig config() const {
    CheckConfig c;
    c.backend = *cli::parse_backend(backend);
    c.property = property == "coverage" ? Property::Coverage : Property::CollisionFree;
    c.step = step;
    c.margin = margin;
    c.early_exit = early_exit;
    c.jobs = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
    c.solver_cmd = solver_cmd;
    if (c.solver_cmd.empty()) {
      if (const char* env = std::getenv("SPACEBOUND_SOLVER")) c.solver_cmd = env;
    }
    c.solver_timeout = std::chrono::milliseconds(solver_timeout_ms);
    c.smt_dir = smt_dir;
    return c;
  }
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

int emit_reports(const std::vector<CheckReport>& reports, const std::string& out_path, const std::string& json_path,
                 std::ostream& out) {
  write_output(out_path, report_text(reports), out);
  if (!json_path.empty()) write_output(json_path, report_json(reports), out);
  return exit_for(overall_verdict(reports));
}

Document scenario_document(const Scenario& s, const std::string& name) {
  Document doc;
  doc.definitions.push_back({"order", s.order});
  if (s.geometry) doc.definitions.push_back({"demo_geometry", *s.geometry});
  doc.definitions.push_back({name, s.term});
  return doc;
}

Document benchmark_document(const Benchmark& b) {
  Document doc;
  doc.definitions.push_back({"order", b.order});
  for (const auto& ts : b.spaces) doc.definitions.push_back({ts.component, to_term(ts)});
  return doc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial-temporal invariant checker"};
  app.name("spacebound");
  app.require_subcommand(1);

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "Parse .besd files and print them in canonical form");
  std::vector<std::string> parse_files;
  std::string parse_out;
  parse_cmd->add_option("inputs", parse_files, ".besd input files")->required()->check(CLI::ExistingFile);
  parse_cmd->add_option("-o,--out", parse_out, "Output file (default: standard output)");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a scenario as a .besd document");
  std::string scenario;
  std::string gen_out;
  std::int64_t speed_milli = 1000, stop = 300;
  Coord cx = 0, cy = 0, radius = 100, arm = 20, tool = 5;
  int steps = 8, components = 2, timepoints = 1000, boxes = 1;
  std::uint64_t seed = 42;
  std::optional<int> overlap_at;
  gen_cmd->add_option("scenario", scenario, "forklift, lifting, robot, benchmark or points")
      ->required()
      ->check(CLI::IsMember({"forklift", "lifting", "robot", "benchmark", "points"}));
  gen_cmd->add_option("-o,--out", gen_out, "Output file (default: standard output)");
  gen_cmd->add_option("--speed-milli", speed_milli, "lifting: speed in thousandths of a unit per step");
  gen_cmd->add_option("--stop", stop, "lifting: step at which lowering stops");
  gen_cmd->add_option("--cx", cx, "robot: centre x");
  gen_cmd->add_option("--cy", cy, "robot: centre y");
  gen_cmd->add_option("--radius", radius, "robot: body radius");
  gen_cmd->add_option("--arm", arm, "robot: arm length");
  gen_cmd->add_option("--tool", tool, "robot: tool half-width");
  gen_cmd->add_option("--steps", steps, "robot: steps per revolution");
  gen_cmd->add_option("--components", components, "benchmark: number of components");
  gen_cmd->add_option("--timepoints", timepoints, "benchmark, points: number of time points");
  gen_cmd->add_option("--boxes", boxes, "benchmark: boxes per entry");
  gen_cmd->add_option("--seed", seed, "benchmark: random seed");
  gen_cmd->add_option("--overlap-at", overlap_at, "benchmark, points: plant an overlap at this time index");

  // transform
  auto* transform_cmd = app.add_subcommand("transform", "Apply passes and print the resulting document");
  InputOptions transform_in;
  std::vector<std::string> transform_passes;
  std::string transform_out;
  transform_in.add_to(transform_cmd);
  transform_cmd->add_option("--pass", transform_passes, "Pass to apply, e.g. \"merge-intervals (t0 t3)\"");
  transform_cmd->add_option("-o,--out", transform_out, "Output file (default: standard output)");

  // check
  auto* check_cmd = app.add_subcommand("check", "Check every pair of components");
  InputOptions check_in;
  CheckFlags check_flags;
  std::string check_out, check_json;
  check_in.add_to(check_cmd);
  check_flags.add_to(check_cmd);
  check_cmd->add_option("-o,--out", check_out, "Text report file (default: standard output)");
  check_cmd->add_option("--json", check_json, "JSON report file");

  // emit-smt
  auto* emit_cmd = app.add_subcommand("emit-smt", "Write SMT-LIB2 verification conditions for every pair");
  InputOptions emit_in;
  std::string emit_mode = "smt-per-t";
  std::string emit_dir = "smt-vc";
  emit_in.add_to(emit_cmd);
  emit_cmd->add_option("--backend", emit_mode, "smt-per-t or smt-mono")->check(CLI::IsMember({"smt-per-t", "smt-mono"}));
  emit_cmd->add_option("-o,--out", emit_dir, "Output directory");

  // render-svg
  auto* svg_cmd = app.add_subcommand("render-svg", "Plot the components per time index");
  InputOptions svg_in;
  std::string svg_out;
  svg_in.add_to(svg_cmd);
  svg_cmd->add_option("-o,--out", svg_out, "SVG file (default: standard output)");

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run the passes listed in a pipeline file");
  std::string pipe_file;
  InputOptions pipe_in;
  CheckFlags pipe_flags;
  std::string pipe_out, pipe_json, dump_dir;
  pipe_cmd->add_option("pipeline", pipe_file, "Pipeline description")->required()->check(CLI::ExistingFile);
  pipe_in.add_to(pipe_cmd);
  pipe_flags.add_solver_options(pipe_cmd);
  pipe_cmd->add_option("-o,--out", pipe_out, "Report or document output (default: standard output)");
  pipe_cmd->add_option("--json", pipe_json, "JSON report file");
  pipe_cmd->add_option("--dump-dir", dump_dir, "Write the document after every stage here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) {
      Document merged;
      for (auto& d : load(parse_files)) {
        if (d.unit && !merged.unit) merged.unit = d.unit;
        for (auto& def : d.definitions) merged.definitions.push_back(std::move(def));
      }
      std::set<std::string> names;
      for (const auto& d : merged.definitions) {
        if (!names.insert(d.name).second) throw Error(ErrorCode::DuplicateName, d.name);
      }
      write_output(parse_out, print_document(merged), out);
      return kExitPass;
    }

    if (gen_cmd->parsed()) {
      Document doc;
      if (scenario == "forklift") {
        doc = scenario_document(gen_forklift_topological(), "forklift");
      } else if (scenario == "lifting") {
        doc = scenario_document(gen_lifting_arm(speed_milli, stop), "lifting_arm");
      } else if (scenario == "robot") {
        doc = scenario_document(gen_rotating_robot(cx, cy, radius, arm, tool, steps), "robot");
      } else if (scenario == "benchmark") {
        doc = benchmark_document(gen_benchmark(components, timepoints, boxes, seed, overlap_at));
      } else {
        const int n = gen_cmd->count("--timepoints") ? timepoints : 100;
        doc = benchmark_document(gen_point_benchmark(n, overlap_at));
      }
      write_output(gen_out, print_document(doc), out);
      return kExitPass;
    }

    if (transform_cmd->parsed()) {
      Workspace ws = transform_in.workspace();
      std::vector<cli::PassSpec> passes;
      for (const auto& p : transform_passes) passes.push_back(cli::parse_pass_arg(p));
      for (const auto& p : passes) {
        if (p.name.rfind("check", 0) == 0) throw Error(ErrorCode::InvalidArgument, "transform does not run checks");
      }
      cli::run_pipeline(ws, passes, {}, std::nullopt);
      write_output(transform_out, print_document(ws.to_document()), out);
      return kExitPass;
    }

    if (check_cmd->parsed()) {
      const CheckConfig cfg = check_flags.config();
      Workspace ws = check_in.workspace();
      cli::run_pipeline(ws, check_in.implicit_passes(ws), cfg, std::nullopt);
      return emit_reports(cli::run_check(ws, cfg), check_out, check_json, out);
    }

    if (emit_cmd->parsed()) {
      Workspace ws = emit_in.workspace();
      cli::run_pipeline(ws, emit_in.implicit_passes(ws), {}, std::nullopt);
      auto spaces = ws.spaces();
      std::filesystem::create_directories(emit_dir);
      for (std::size_t i = 0; i < spaces.size(); ++i) {
        for (std::size_t j = i + 1; j < spaces.size(); ++j) {
          std::vector<SmtDocument> docs;
          if (emit_mode == "smt-mono") {
            docs.push_back(emit_monolithic(spaces[i], spaces[j], ws.order()));
          } else {
            docs = emit_per_timepoint(spaces[i], spaces[j], ws.order());
          }
          for (const auto& d : docs) {
            const auto path = (std::filesystem::path(emit_dir) / d.file_name()).string();
            write_output(path, d.text, out);
            out << path << '\n';
          }
        }
      }
      return kExitPass;
    }

    if (svg_cmd->parsed()) {
      Workspace ws = svg_in.workspace();
      cli::run_pipeline(ws, svg_in.implicit_passes(ws), {}, std::nullopt);
      write_output(svg_out, render_svg(ws.spaces(), ws.order()), out);
      return kExitPass;
    }

    if (pipe_cmd->parsed()) {
      const auto passes = cli::parse_pipeline(read_file(pipe_file));
      Workspace ws = pipe_in.workspace();
      auto run = cli::run_pipeline(ws, passes, pipe_flags.config(),
                                   dump_dir.empty() ? std::nullopt : std::optional<std::string>(dump_dir));
      if (run.reports) return emit_reports(*run.reports, pipe_out, pipe_json, out);
      write_output(pipe_out, print_document(ws.to_document()), out);
      return kExitPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spacebound
