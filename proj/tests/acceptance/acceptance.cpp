// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Time limits and case counts are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "docgen.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "solver.hpp"
#include "spacebound/checkers.hpp"
#include "spacebound/dsl.hpp"
#include "spacebound/error.hpp"
#include "spacebound/scenarios.hpp"
#include "spacebound/sexpr.hpp"
#include "spacebound/smt.hpp"

using namespace spacebound;
namespace fs = std::filesystem;

namespace {

constexpr double kForkliftLimitMs = 1000;
constexpr double kLiftingLimitMs = 1000;
constexpr int kOracleCases = 500;
constexpr double kOracleLimitMs = 30000;
constexpr double kBenchmarkLimitMs = 1000;
constexpr double kPointLimitMs = 20000;
constexpr double kPointEarlyLimitMs = 1000;
constexpr int kSmtCases = 50;
constexpr int kGoldenCount = 10;
constexpr int kPropertyCases = 500;
constexpr int kRoundTripCases = 500;
constexpr int kAutomataCases = 100;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

void require_time(Outcome& o, double took, double limit) {
  o.require(took < limit, "took " + fmt_ms(took) + ", limit " + fmt_ms(limit));
  if (o.ok) o.detail = fmt_ms(took) + " < " + fmt_ms(limit);
}

const Term* entry(const TimedSpace& ts, const std::string& p) {
  auto it = ts.entries.find(TimeIndex::at(p));
  return it == ts.entries.end() ? nullptr : &it->second;
}

std::set<std::string> failing_points(const CheckReport& r) {
  std::set<std::string> out;
  for (const auto& w : r.witnesses) out.insert(w.index.from);
  return out;
}

// ---------------------------------------------------------------------------

Outcome forklift() {
  Outcome o;
  const auto start = Clock::now();
  auto s = gen_forklift_topological();
  auto ts = index_by_time(s.term, s.order);
  const double took = ms_since(start);
  const std::map<TimeIndex, Term> expected = {
      {TimeIndex::at("pt1"), node("n2")},
      {TimeIndex::at("pt2"), make_or(node("n3"), node("n4"))},
      {TimeIndex::at("pt3"), make_or(node("n6"), node("n7"))},
      {TimeIndex::at("pt4"), node("n7")},
  };
  o.require(ts.entries == expected, "indexed entries differ from {pt1:n2, pt2:n3|n4, pt3:n6|n7, pt4:n7}");
  o.require(ts.pending.empty() && ts.event_rules.empty(), "unexpected guarded entries");
  if (o.ok) require_time(o, took, kForkliftLimitMs);
  return o;
}

Outcome lifting() {
  Outcome o;
  const auto start = Clock::now();
  auto s = gen_lifting_arm(1000, 300);
  auto ts = index_by_time(s.term, s.order);
  const double took = ms_since(start);
  const std::vector<std::pair<int, Coord>> expected = {{0, 200}, {50, 250}, {100, 300}, {101, 300}, {201, 200}};
  for (auto [t, y] : expected) {
    const Term* f = entry(ts, "t" + std::to_string(t));
    o.require(f && *f == segment2d(300, y, 320, y, 3), "t" + std::to_string(t) + " is not seg(300," +
                                                            std::to_string(y) + ",320," + std::to_string(y) + ",3)");
  }
  o.require(ts.entries.size() == 202, "expected 202 stamps");
  if (o.ok) require_time(o, took, kLiftingLimitMs);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  sbtest::Gen g(3003);
  auto order = TimeOrder::chain(5);
  sbtest::SpaceOptions so;
  so.disjunctions = true;
  int fails = 0;
  const auto start = Clock::now();
  for (int i = 0; i < kOracleCases; ++i) {
    auto a = sbtest::random_space(g, "a", so);
    auto b = sbtest::random_space(g, "b", so);
    const bool oracle_fail = !sbtest::oracle_collision_points(a, b, order).empty();
    const auto boxes = check_collision_boxes(a, b, order).verdict;
    const auto points = check_collision_points(a, b, order, 1).verdict;
    fails += oracle_fail;
    o.require(boxes == (oracle_fail ? Verdict::Fail : Verdict::Pass), "boxes disagree on case " + std::to_string(i));
    o.require(points == boxes, "points disagree on case " + std::to_string(i));
  }
  const double took = ms_since(start);
  o.require(fails > 0 && fails < kOracleCases, "degenerate instance mix");
  if (o.ok) {
    require_time(o, took, kOracleLimitMs);
    o.detail = std::to_string(kOracleCases) + " cases, " + std::to_string(fails) + " colliding, " + o.detail;
  }
  return o;
}

Outcome benchmark_scale() {
  Outcome o;
  auto bench = gen_benchmark(2, 1000, 1, 42);
  const auto start = Clock::now();
  auto r = check_collision_boxes(bench.spaces[0], bench.spaces[1], bench.order);
  const double took = ms_since(start);
  o.require(r.verdict == Verdict::Pass, "expected Pass on the non-overlapping benchmark");
  o.require(r.stats.time_points_examined == 1000, "expected 1000 examined time points");
  if (o.ok) require_time(o, took, kBenchmarkLimitMs);
  return o;
}

Outcome point_scale() {
  Outcome o;
  auto bench = gen_point_benchmark(100);
  auto start = Clock::now();
  auto r = check_collision_points(bench.spaces[0], bench.spaces[1], bench.order, 1);
  const double full = ms_since(start);
  o.require(r.verdict == Verdict::Pass && r.stats.time_points_examined == 100, "full run: expected Pass over 100 points");

  auto hit = gen_point_benchmark(100, 2);
  start = Clock::now();
  auto e = check_collision_points(hit.spaces[0], hit.spaces[1], hit.order, 1, {.early_exit = true});
  const double early = ms_since(start);
  o.require(e.verdict == Verdict::Fail && failing_points(e) == std::set<std::string>{"t2"},
            "early run: expected a single witness at t2");
  o.require(full < kPointLimitMs, "full run took " + fmt_ms(full));
  o.require(early < kPointEarlyLimitMs, "early-exit run took " + fmt_ms(early));
  if (o.ok) {
    o.detail = "full " + fmt_ms(full) + " < " + fmt_ms(kPointLimitMs) + ", early exit " + fmt_ms(early) + " < " +
               fmt_ms(kPointEarlyLimitMs);
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome smt_agreement() {
  Outcome o;
  // The checked-in scripts are compared in every run.
  const fs::path dir = fs::path(SPACEBOUND_TEST_DATA) / "golden";
  auto cases = sbtest::golden_cases();
  o.require(static_cast<int>(cases.size()) == kGoldenCount, "golden case count");
  for (const auto& c : cases) {
    o.require(fs::exists(dir / c.file), "missing golden file " + c.file);
    const auto text = slurp(dir / c.file);
    o.require(text == c.doc.text, "golden mismatch " + c.file);
    try {
      read_sexprs(text);
    } catch (const Error&) {
      o.require(false, "unbalanced golden file " + c.file);
    }
  }
  std::string mode = std::to_string(kGoldenCount) + " golden scripts identical";

  const auto cmd = sbtest::solver_command();
  if (!cmd.empty()) {
    sbtest::Gen g(6006);
    auto order = TimeOrder::chain(5);
    sbtest::SpaceOptions so;
    so.disjunctions = true;
    int sat_cases = 0;
    for (int i = 0; i < kSmtCases && o.ok; ++i) {
      auto a = sbtest::random_space(g, "a", so);
      auto b = sbtest::random_space(g, "b", so);
      const auto native = check_collision_boxes(a, b, order);
      const auto native_points = failing_points(native);
      bool any = false;
      for (const auto& d : emit_per_timepoint(a, b, order)) {
        auto r = run_solver(d, cmd, std::chrono::seconds(20));
        o.require(r.status == SolverStatus::Sat || r.status == SolverStatus::Unsat, "solver: " + r.detail);
        const bool sat = r.status == SolverStatus::Sat;
        any = any || sat;
        o.require(sat == (native_points.count(d.time_points.front()) > 0),
                  "per-time-point verdict differs on case " + std::to_string(i));
      }
      auto mono = run_solver(emit_monolithic(a, b, order), cmd, std::chrono::seconds(20));
      o.require(mono.status == (any ? SolverStatus::Sat : SolverStatus::Unsat),
                "monolithic differs from OR of per-time-point on case " + std::to_string(i));
      o.require(any == (native.verdict == Verdict::Fail), "verdict differs from boxes on case " + std::to_string(i));
      sat_cases += any;
    }
    mode += "; solver agreement on " + std::to_string(kSmtCases) + " cases (" + std::to_string(sat_cases) + " sat)";
  } else {
    mode += "; no solver found, agreement not run";
  }
  if (o.ok) o.detail = mode;
  return o;
}

Outcome soundness() {
  Outcome o;
  auto order = TimeOrder::chain(6);
  sbtest::Gen g(7007);
  sbtest::SpaceOptions so;
  so.timepoints = 6;
  so.disjunctions = true;

  // Interval merge contains every endpoint region.
  for (int i = 0; i < kPropertyCases; ++i) {
    auto ts = sbtest::random_space(g, "c", so);
    auto a = g.range(0, 4);
    auto b = g.range(a + 1, 5);
    const std::string from = "t" + std::to_string(a), to = "t" + std::to_string(b);
    std::vector<std::pair<std::string, std::string>> pairs = {{from, to}};
    auto merged = merge_intervals(ts, order, pairs);
    auto it = merged.entries.find(TimeIndex::between(from, to));
    for (const auto& p : {from, to}) {
      const Term* f = entry(ts, p);
      if (!f) continue;
      o.require(it != merged.entries.end() &&
                    region_contains(spatial_region(it->second, Mode::Over, 2), spatial_region(*f, Mode::Over, 2))
                        .contained,
                "merge misses endpoint " + p + " on case " + std::to_string(i));
    }
  }

  // box_abstract only grows regions.
  for (int i = 0; i < kPropertyCases; ++i) {
    auto ts = sbtest::random_space(g, "c", so);
    auto abs = box_abstract(ts);
    for (const auto& [idx, f] : ts.entries) {
      auto it = abs.entries.find(idx);
      o.require(it != abs.entries.end() &&
                    region_contains(spatial_region(it->second, Mode::Over, 2), spatial_region(f, Mode::Over, 2))
                        .contained,
                "box_abstract shrinks case " + std::to_string(i));
    }
  }

  // Pass under abstraction implies Pass on the original.
  sbtest::SpaceOptions small = so;
  small.max_extent = 5;
  int abstract_passes = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    auto a = sbtest::random_space(g, "a", small);
    auto b = sbtest::random_space(g, "b", small);
    if (check_collision_boxes(box_abstract(a), box_abstract(b), order).verdict == Verdict::Pass) {
      ++abstract_passes;
      o.require(check_collision_boxes(a, b, order).verdict == Verdict::Pass,
                "abstract Pass but concrete Fail on case " + std::to_string(i));
    }
  }
  o.require(abstract_passes >= 20, "too few abstract passes to be meaningful");

  // Margin monotonicity.
  for (int i = 0; i < kPropertyCases; ++i) {
    auto a = sbtest::random_space(g, "a", so);
    auto b = sbtest::random_space(g, "b", so);
    const Coord m = g.range(0, 3);
    auto base = failing_points(check_collision_boxes(a, b, order, {.margin = m}));
    auto more = failing_points(check_collision_boxes(a, b, order, {.margin = m + g.range(1, 3)}));
    o.require(std::includes(more.begin(), more.end(), base.begin(), base.end()),
              "larger margin lost a failure on case " + std::to_string(i));
  }

  // Coverage anti-monotonicity in the inner component.
  sbtest::SpaceOptions inner_opts;
  inner_opts.timepoints = 6;
  inner_opts.lo = -12;
  inner_opts.hi = 12;
  inner_opts.max_extent = 4;
  auto big_box = [&] { return box2d(g.range(-25, -6), g.range(-25, -6), g.range(6, 25), g.range(6, 25)); };
  int coverage_passes = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    auto inner = sbtest::random_space(g, "in", inner_opts);
    TimedSpace outer;
    outer.component = "out";
    outer.mode = Mode::Under;
    outer.classification = Classification::CommRange;
    for (int t = 0; t < 6; ++t)
      outer.entries.emplace(TimeIndex::at("t" + std::to_string(t)),
                            g.coin() ? big_box() : make_or(big_box(), big_box()));
    TimedSpace smaller = inner;
    for (auto it = smaller.entries.begin(); it != smaller.entries.end();) {
      if (g.coin(0.2)) {
        it = smaller.entries.erase(it);
        continue;
      }
      if (it->second.kind() == TermKind::BigAnd) {
        std::vector<Term> keep;
        for (const auto& c : it->second.children())
          if (keep.empty() || g.coin()) keep.push_back(c);
        it->second = make_big_and(std::move(keep));
      }
      ++it;
    }
    if (check_coverage(inner, outer, order).verdict == Verdict::Pass) {
      ++coverage_passes;
      o.require(check_coverage(smaller, outer, order).verdict == Verdict::Pass,
                "shrunk inner lost coverage on case " + std::to_string(i));
    }
  }
  o.require(coverage_passes >= 20, "too few covered instances to be meaningful");

  if (o.ok) {
    o.detail = "5 properties x " + std::to_string(kPropertyCases) + " cases (" + std::to_string(abstract_passes) +
               " abstract passes, " + std::to_string(coverage_passes) + " covered)";
  }
  return o;
}

Document scenario_document(const Scenario& s, const std::string& name) {
  Document d;
  d.definitions.push_back({"order", s.order});
  if (s.geometry) d.definitions.push_back({"geometry", *s.geometry});
  d.definitions.push_back({name, s.term});
  return d;
}

Document benchmark_document(const Benchmark& b) {
  Document d;
  d.definitions.push_back({"order", b.order});
  for (const auto& ts : b.spaces) d.definitions.push_back({ts.component, to_term(ts)});
  return d;
}

Outcome round_trip() {
  Outcome o;
  sbtest::Gen g(8008);
  for (int i = 0; i < kRoundTripCases; ++i) {
    auto doc = sbtest::random_document(g, 8);
    try {
      o.require(parse_document(print_document(doc)) == doc, "random document " + std::to_string(i));
    } catch (const Error& e) {
      o.require(false, "random document " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<std::pair<std::string, Document>> shipped = {
      {"forklift", scenario_document(gen_forklift_topological(), "forklift")},
      {"lifting", scenario_document(gen_lifting_arm(1000, 50), "lifting_arm")},
      {"lifting-fast", scenario_document(gen_lifting_arm(2750, 300), "lifting_arm")},
      {"robot", scenario_document(gen_rotating_robot(0, 0, 100, 40, 3, 8), "robot")},
      {"benchmark", benchmark_document(gen_benchmark(3, 50, 2, 42, 7))},
      {"points", benchmark_document(gen_point_benchmark(100, 5))},
  };
  int files = 0;
  const fs::path data = fs::path(SPACEBOUND_SOURCE_DIR) / "examples_data";
  if (fs::exists(data)) {
    for (const auto& f : fs::directory_iterator(data)) {
      if (f.path().extension() != ".besd") continue;
      try {
        shipped.emplace_back(f.path().filename().string(), parse_document(slurp(f.path())));
        ++files;
      } catch (const Error& e) {
        o.require(false, f.path().filename().string() + ": " + e.what());
      }
    }
  }
  for (const auto& [name, doc] : shipped) {
    const auto text = print_document(doc);
    o.require(parse_document(text) == doc, "scenario " + name);
    o.require(print_document(parse_document(text)) == text, "printing not stable for " + name);
  }
  if (o.ok) {
    o.detail = std::to_string(kRoundTripCases) + " random documents, " + std::to_string(shipped.size() - files) +
               " scenario outputs, " + std::to_string(files) + " example files";
  }
  return o;
}

std::set<std::string> node_names(const Term& t) {
  std::set<std::string> out;
  for_each_atom(t, [&](const Atom& a) {
    if (const auto* n = a.unowned().get_if<OccupyNode>()) out.insert(n->node);
  });
  return out;
}

Outcome automata() {
  Outcome o;
  sbtest::Gen g(9009);
  for (int i = 0; i < kAutomataCases; ++i) {
    Automaton a = sbtest::random_automaton(g, 10);
    const int h = static_cast<int>(g.range(1, 8));
    const auto expected = sbtest::bfs_frontiers(a, h);
    o.require(automaton_frontiers(a, h) == expected, "frontiers differ on case " + std::to_string(i));
    auto u = unfold_automaton(a, h);
    auto ts = index_by_time(u.term, u.order);
    for (int k = 0; k < h; ++k) {
      std::set<std::string> labels;
      for (const auto& s : expected[static_cast<std::size_t>(k)]) {
        auto more = node_names(a.labels.at(s));
        labels.insert(more.begin(), more.end());
      }
      const Term* f = entry(ts, "t" + std::to_string(k));
      o.require(f && node_names(*f) == labels,
                "unfolded disjuncts differ on case " + std::to_string(i) + " step " + std::to_string(k));
    }
  }
  if (o.ok) o.detail = std::to_string(kAutomataCases) + " automata, up to 10 states, horizon up to 8";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 forklift invariant indexed exactly", forklift},
      {"2 lifting arm spot values", lifting},
      {"3 boxes = points = lattice oracle", oracle_equivalence},
      {"4 benchmark 2x1000 with boxes", benchmark_scale},
      {"5 point benchmark 15000+20000 x 100", point_scale},
      {"6 SMT scripts and solver agreement", smt_agreement},
      {"7 soundness properties", soundness},
      {"8 print/parse round trip", round_trip},
      {"9 automaton unfolding vs BFS", automata},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("%s  %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
