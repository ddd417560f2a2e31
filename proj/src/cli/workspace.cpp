#include "workspace.hpp"

#include <filesystem>
#include <fstream>

#include "spacebound/error.hpp"
#include "spacebound/smt.hpp"

namespace spacebound::cli {

namespace {

const std::set<std::string> kPasses = {
    "geometrize", "resolve-events", "resolve-relative", "merge-intervals", "box-abstract",
    "normalize",  "ground",         "aggregate",        "unfold",          "check",
    "check-boxes", "check-points",  "check-smt-per-t",  "check-smt-mono",  "check-coverage"};

[[noreturn]] void bad_args(const PassSpec& p, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, p.name + " expects " + what);
}

std::string word(const PassSpec& p, std::size_t i, const std::string& what) {
  if (i >= p.args.size() || p.args[i].is_list()) bad_args(p, what);
  return p.args[i].text;
}

std::int64_t integer(const SExpr& e, const PassSpec& p, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(e.text, &used);
    if (e.is_list() || used != e.text.size()) bad_args(p, what);
    return v;
  } catch (const std::logic_error&) {
    bad_args(p, what);
  }
}

}  // namespace

Workspace::Workspace(const std::vector<Document>& docs, std::set<std::string> ranges)
    : ranges_(std::move(ranges)) {
  std::set<std::string> names;
  for (const auto& doc : docs) {
    if (doc.unit && !extras_.unit) extras_.unit = doc.unit;
    for (const auto& d : doc.definitions) {
      if (!names.insert(d.name).second) throw Error(ErrorCode::DuplicateName, d.name);
      if (const auto* t = std::get_if<Term>(&d.body)) {
        components_.push_back({d.name, *t});
        continue;
      }
      if (const auto* o = std::get_if<TimeOrder>(&d.body); o && !order_) {
        order_ = *o;
        order_name_ = d.name;
      }
      extras_.definitions.push_back(d);
    }
  }
  for (const auto& r : ranges_) component(r);
}

const TimeOrder& Workspace::order() const {
  if (!order_) throw Error(ErrorCode::InvalidArgument, "no timeorder definition in the input");
  return *order_;
}

void Workspace::set_order(std::string name, TimeOrder order) {
  if (order_) {
    if (!(*order_ == order)) throw Error(ErrorCode::InvalidArgument, "conflicting time orders");
    return;
  }
  order_ = order;
  order_name_ = name;
  extras_.definitions.push_back({std::move(name), std::move(order)});
}

Component& Workspace::component(const std::string& name) {
  for (auto& c : components_) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::UnknownDefinition, "no component named " + name);
}

IndexOptions Workspace::options_for(const std::string& name) const {
  IndexOptions o;
  o.component = name;
  if (is_range(name)) {
    o.classification = Classification::CommRange;
    o.mode = Mode::Under;
  }
  return o;
}

Term Workspace::term_of(const Component& c) const {
  if (const auto* t = std::get_if<Term>(&c.value)) return *t;
  return to_term(std::get<TimedSpace>(c.value));
}

TimedSpace& Workspace::space_of(Component& c) {
  if (const auto* t = std::get_if<Term>(&c.value)) c.value = index_by_time(*t, order(), options_for(c.name));
  return std::get<TimedSpace>(c.value);
}

std::vector<TimedSpace> Workspace::spaces() {
  std::vector<TimedSpace> out;
  for (auto& c : components_) out.push_back(space_of(c));
  return out;
}

const NodeGeometry& Workspace::geometry(const std::string& name) const {
  for (const auto& d : extras_.definitions) {
    if (d.name == name) {
      if (const auto* g = std::get_if<NodeGeometry>(&d.body)) return *g;
    }
  }
  throw Error(ErrorCode::UnknownDefinition, "no geometry named " + name);
}

const EventTrace& Workspace::trace(const std::string& name) const {
  for (const auto& d : extras_.definitions) {
    if (d.name == name) {
      if (const auto* t = std::get_if<EventTrace>(&d.body)) return *t;
    }
  }
  throw Error(ErrorCode::UnknownDefinition, "no trace named " + name);
}

const Automaton& Workspace::automaton(const std::string& name) const {
  for (const auto& d : extras_.definitions) {
    if (d.name == name) {
      if (const auto* a = std::get_if<Automaton>(&d.body)) return *a;
    }
  }
  throw Error(ErrorCode::UnknownDefinition, "no automaton named " + name);
}

Document Workspace::to_document() const {
  Document doc = extras_;
  for (const auto& c : components_) doc.definitions.push_back({c.name, term_of(c)});
  return doc;
}

std::optional<Backend> parse_backend(std::string_view s) {
  if (s == "boxes") return Backend::Boxes;
  if (s == "points") return Backend::Points;
  if (s == "smt-per-t") return Backend::SmtPerT;
  if (s == "smt-mono") return Backend::SmtMono;
  return std::nullopt;
}

std::vector<CheckReport> run_check(Workspace& ws, const CheckConfig& cfg) {
  const auto spaces = ws.spaces();
  const TimeOrder& order = ws.order();
  if (cfg.property == Property::Coverage) {
    if (cfg.backend != Backend::Boxes) {
      throw Error(ErrorCode::InvalidArgument, "coverage is only checked by the boxes backend");
    }
    PairwiseOptions o;
    o.check = {cfg.margin, cfg.early_exit, cfg.jobs};
    return run_pairwise(spaces, order, Property::Coverage, o);
  }
  if (cfg.backend == Backend::Boxes || cfg.backend == Backend::Points) {
    PairwiseOptions o;
    o.backend = cfg.backend == Backend::Points ? NativeBackend::Points : NativeBackend::Boxes;
    o.step = cfg.step;
    o.check = {cfg.margin, cfg.early_exit, cfg.jobs};
    if (o.backend == NativeBackend::Points && cfg.step < 1) {
      throw Error(ErrorCode::StepNonPositive, std::to_string(cfg.step));
    }
    return run_pairwise(spaces, order, Property::CollisionFree, o);
  }
  if (cfg.margin != 0) throw Error(ErrorCode::InvalidArgument, "--margin is not supported by SMT backends");
  SmtOptions so;
  so.monolithic = cfg.backend == Backend::SmtMono;
  so.solver_cmd = cfg.solver_cmd;
  so.timeout = cfg.solver_timeout;
  so.jobs = cfg.jobs;
  so.out_dir = cfg.smt_dir;
  return run_pairwise(spaces, order, Property::CollisionFree,
                      [&](const TimedSpace& a, const TimedSpace& b) { return check_collision_smt(a, b, order, so); });
}

std::vector<PassSpec> parse_pipeline(std::string_view text) {
  const auto exprs = read_sexprs(text);
  if (exprs.size() != 1 || !exprs.front().has_head("pipeline")) {
    const SExpr* at = exprs.empty() ? nullptr : &exprs.front();
    throw SyntaxError(at ? at->line : 1, at ? at->col : 1, "(pipeline pass...)");
  }
  std::vector<PassSpec> out;
  const auto& items = exprs.front().items;
  for (std::size_t i = 1; i < items.size(); ++i) {
    const SExpr& e = items[i];
    const SExpr* head = e.is_list() ? (e.items.empty() ? nullptr : &e.items.front()) : &e;
    if (!head || !head->is_symbol()) throw SyntaxError(e.line, e.col, "(pass args...)");
    if (!kPasses.count(head->text)) {
      throw Error(ErrorCode::UnknownPass, std::to_string(head->line) + ":" + std::to_string(head->col) + ": " +
                                              head->text);
    }
    PassSpec p{head->text, {}};
    if (e.is_list()) p.args.assign(e.items.begin() + 1, e.items.end());
    out.push_back(std::move(p));
  }
  return out;
}

PassSpec parse_pass_arg(const std::string& text) {
  auto passes = parse_pipeline("(pipeline (" + text + "))");
  return passes.front();
}

namespace {

void apply_check_options(const PassSpec& p, CheckConfig& cfg) {
  if (p.name == "check-boxes") cfg.backend = Backend::Boxes;
  if (p.name == "check-points") cfg.backend = Backend::Points;
  if (p.name == "check-smt-per-t") cfg.backend = Backend::SmtPerT;
  if (p.name == "check-smt-mono") cfg.backend = Backend::SmtMono;
  if (p.name == "check-coverage") cfg.property = Property::Coverage;
  for (const auto& a : p.args) {
    if (!a.is_list() || a.items.empty() || !a.items[0].is_symbol()) bad_args(p, "(option value) lists");
    const std::string& key = a.items[0].text;
    auto value = [&]() -> const SExpr& {
      if (a.items.size() != 2) bad_args(p, "(" + key + " value)");
      return a.items[1];
    };
    if (key == "backend") {
      auto b = parse_backend(value().text);
      if (!b) bad_args(p, "backend boxes, points, smt-per-t or smt-mono");
      cfg.backend = *b;
    } else if (key == "step") {
      cfg.step = integer(value(), p, "an integer step");
    } else if (key == "margin") {
      cfg.margin = integer(value(), p, "an integer margin");
    } else if (key == "property") {
      const auto& v = value().text;
      if (v == "collision") {
        cfg.property = Property::CollisionFree;
      } else if (v == "coverage") {
        cfg.property = Property::Coverage;
      } else {
        bad_args(p, "property collision or coverage");
      }
    } else if (key == "early-exit") {
      cfg.early_exit = true;
    } else {
      bad_args(p, "backend, step, margin, property or early-exit options");
    }
  }
}

EventTrace saturated(Workspace& ws, const EventTrace& trace) {
  std::vector<EventRule> rules;
  for (auto& c : ws.components()) {
    const auto& ts = ws.space_of(c);
    rules.insert(rules.end(), ts.event_rules.begin(), ts.event_rules.end());
  }
  return saturate_trace(trace, rules, ws.order());
}

const EventTrace& pick_trace(const Workspace& ws, const PassSpec& p) {
  if (!p.args.empty()) return ws.trace(word(p, 0, "a trace name"));
  if (const auto* t = ws.single<EventTrace>()) return *t;
  bad_args(p, "a trace name (the input has none or several)");
}

void apply_pass(Workspace& ws, const PassSpec& p, CheckConfig& cfg, PipelineRun& run) {
  if (p.name == "geometrize") {
    const NodeGeometry* geo = nullptr;
    if (!p.args.empty()) {
      geo = &ws.geometry(word(p, 0, "a geometry name"));
    } else {
      geo = ws.single<NodeGeometry>();
      if (!geo) bad_args(p, "a geometry name (the input has none or several)");
    }
    for (auto& c : ws.components()) {
      if (auto* t = std::get_if<Term>(&c.value)) {
        ws.put_term(c, geometrize(*t, *geo));
      } else {
        c.value = geometrize(std::get<TimedSpace>(c.value), *geo);
      }
    }
  } else if (p.name == "resolve-relative") {
    const EventTrace& trace = pick_trace(ws, p);
    for (auto& c : ws.components()) {
      Term t = ws.term_of(c);
      ws.put_term(c, resolve_event_relative(t, trace, ws.order()));
    }
  } else if (p.name == "resolve-events") {
    const EventTrace full = saturated(ws, pick_trace(ws, p));
    for (auto& c : ws.components()) c.value = resolve_events(ws.space_of(c), full, ws.order());
  } else if (p.name == "merge-intervals") {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& a : p.args) {
      if (!a.is_list() || a.items.size() != 2 || a.items[0].is_list() || a.items[1].is_list()) {
        bad_args(p, "(FROM TO) pairs");
      }
      pairs.emplace_back(a.items[0].text, a.items[1].text);
    }
    for (auto& c : ws.components()) c.value = merge_intervals(ws.space_of(c), ws.order(), pairs);
  } else if (p.name == "box-abstract") {
    std::set<std::string> only;
    for (std::size_t i = 0; i < p.args.size(); ++i) only.insert(word(p, i, "component names"));
    for (auto& c : ws.components()) {
      if (only.empty() ? ws.is_range(c.name) : !only.count(c.name)) continue;
      c.value = box_abstract(ws.space_of(c));
    }
  } else if (p.name == "normalize") {
    for (auto& c : ws.components()) ws.put_term(c, normalize(ws.term_of(c)));
  } else if (p.name == "ground") {
    Env env;
    for (const auto& a : p.args) {
      if (!a.is_list() || a.items.size() != 2 || a.items[0].is_list()) bad_args(p, "(NAME VALUE) bindings");
      env[a.items[0].text] = integer(a.items[1], p, "integer values");
    }
    for (auto& c : ws.components()) ws.put_term(c, ground(ws.term_of(c), env));
  } else if (p.name == "aggregate") {
    const std::string name = word(p, 0, "a name and component names");
    std::vector<TimedSpace> parts;
    std::set<std::string> members;
    for (std::size_t i = 1; i < p.args.size(); ++i) members.insert(word(p, i, "component names"));
    if (members.empty()) bad_args(p, "at least one component");
    for (auto& c : ws.components()) {
      if (!members.count(c.name)) continue;
      TimedSpace ts = ws.space_of(c);
      for (auto& [idx, f] : ts.entries) f = assign_owner(f, c.name);
      for (auto& g : ts.pending) g.consequent = assign_owner(g.consequent, c.name);
      parts.push_back(std::move(ts));
    }
    if (parts.size() != members.size()) {
      throw Error(ErrorCode::UnknownDefinition, "aggregate names an unknown component");
    }
    auto& comps = ws.components();
    std::erase_if(comps, [&](const Component& c) { return members.count(c.name) > 0; });
    comps.push_back({name, aggregate(parts, name)});
  } else if (p.name == "unfold") {
    const std::string name = word(p, 0, "an automaton name and a horizon");
    if (p.args.size() != 2) bad_args(p, "an automaton name and a horizon");
    const auto horizon = integer(p.args[1], p, "an integer horizon");
    if (horizon < 1 || horizon > 1000000) throw Error(ErrorCode::ParameterOutOfRange, "horizon must be >= 1");
    Unfolding u = unfold_automaton(ws.automaton(name), static_cast<int>(horizon));
    ws.set_order(name + "_time", u.order);
    for (const auto& c : ws.components()) {
      if (c.name == name) throw Error(ErrorCode::DuplicateName, name);
    }
    ws.components().push_back({name, u.term});
  } else {
    apply_check_options(p, cfg);
    run.reports = run_check(ws, cfg);
  }
}

}  // namespace

PipelineRun run_pipeline(Workspace& ws, const std::vector<PassSpec>& passes, CheckConfig cfg,
                         const std::optional<std::string>& dump_dir) {
  PipelineRun run;
  for (std::size_t i = 0; i < passes.size(); ++i) {
    const auto& p = passes[i];
    try {
      apply_pass(ws, p, cfg, run);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw Error(e.code(), "stage " + std::to_string(i + 1) + " (" + p.name + "): " + e.detail());
    }
    if (dump_dir) {
      std::filesystem::create_directories(*dump_dir);
      const auto path = std::filesystem::path(*dump_dir) / ("stage" + std::to_string(i + 1) + "_" + p.name + ".besd");
      std::ofstream f(path, std::ios::binary);
      f << print_document(ws.to_document());
      if (!f) throw Error(ErrorCode::Io, path.string());
    }
  }
  return run;
}

}  // namespace spacebound::cli
