#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "oracles.hpp"
#include "solver.hpp"
#include "spacebound/error.hpp"
#include "spacebound/sexpr.hpp"
#include "spacebound/smt.hpp"

using namespace spacebound;
namespace fs = std::filesystem;

namespace {

TimedSpace at_points(const std::string& name, std::vector<std::pair<std::string, Term>> entries) {
  TimedSpace ts;
  ts.component = name;
  for (auto& [p, f] : entries) ts.entries.emplace(TimeIndex::at(p), f);
  return ts;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Top-level forms of a script, comments dropped.
std::vector<SExpr> forms(const std::string& text) { return read_sexprs(text); }

void expect_well_formed(const SmtDocument& d) {
  auto fs = forms(d.text);
  ASSERT_GE(fs.size(), 3u + static_cast<std::size_t>(d.dim));
  EXPECT_TRUE(fs.front().has_head("set-logic"));
  EXPECT_EQ(fs.front().items.at(1).text, "QF_LIA");
  int declared = 0;
  for (const auto& f : fs) {
    if (f.has_head("declare-const")) {
      ++declared;
      EXPECT_EQ(f.items.at(2).text, "Int");
    }
  }
  EXPECT_EQ(declared, d.dim);
  EXPECT_TRUE(fs.back().has_head("check-sat"));
  EXPECT_EQ(d.text.substr(d.text.size() - 12), "(check-sat)\n");
}

}  // namespace

TEST(EmitSmt, OneDocumentPerSharedPoint) {
  auto order = TimeOrder::chain(5);
  auto a = at_points("a", {{"t0", box2d(0, 0, 1, 1)}, {"t1", box2d(0, 0, 1, 1)}, {"t2", box2d(0, 0, 1, 1)},
                           {"t4", box2d(0, 0, 1, 1)}});
  auto b = at_points("b", {{"t1", box2d(5, 5, 6, 6)}, {"t2", box2d(0, 0, 0, 0)}, {"t3", box2d(0, 0, 0, 0)},
                           {"t4", box2d(9, 9, 9, 9)}});
  auto docs = emit_per_timepoint(a, b, order);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].time_points, (std::vector<std::string>{"t1"}));
  EXPECT_EQ(docs[2].time_points, (std::vector<std::string>{"t4"}));
  EXPECT_EQ(docs[0].file_name(), "vc_a-b_t1.smt2");
  for (const auto& d : docs) expect_well_formed(d);

  auto mono = emit_monolithic(a, b, order);
  EXPECT_EQ(mono.file_name(), "vc_a-b_all.smt2");
  EXPECT_EQ(mono.time_points, (std::vector<std::string>{"t1", "t2", "t4"}));
  expect_well_formed(mono);
}

TEST(EmitSmt, EncodingOfOneTimePoint) {
  auto order = TimeOrder::chain(1);
  auto a = at_points("a", {{"t0", box2d(-3, 0, 4, 4)}});
  auto b = at_points("b", {{"t0", make_or(box2d(5, 5, 9, 9), point2d(0, 0))}});
  auto d = emit_per_timepoint(a, b, order).front();
  EXPECT_EQ(d.text,
            "; pair: a b\n; time: t0\n; sat => collision\n(set-logic QF_LIA)\n(declare-const x Int)\n"
            "(declare-const y Int)\n"
            "(assert (and (and (<= (- 3) x) (<= x 4) (<= 0 y) (<= y 4)) "
            "(or (and (<= 0 x) (<= x 0) (<= 0 y) (<= y 0)) (and (<= 5 x) (<= x 9) (<= 5 y) (<= y 9)))))\n"
            "(check-sat)\n");
}

TEST(EmitSmt, NoSharedPointsAssertsFalse) {
  auto order = TimeOrder::chain(2);
  auto a = at_points("a", {{"t0", box2d(0, 0, 1, 1)}});
  auto b = at_points("b", {{"t1", box2d(0, 0, 1, 1)}});
  EXPECT_TRUE(emit_per_timepoint(a, b, order).empty());
  auto mono = emit_monolithic(a, b, order);
  EXPECT_NE(mono.text.find("(assert false)\n"), std::string::npos);
  expect_well_formed(mono);
}

TEST(EmitSmt, SameOwnerOnlyYieldsFalse) {
  auto order = TimeOrder::chain(1);
  auto a = at_points("a", {{"t0", owned("x", box2d(0, 0, 1, 1))}});
  auto b = at_points("b", {{"t0", owned("x", box2d(0, 0, 1, 1))}});
  auto d = emit_per_timepoint(a, b, order).front();
  EXPECT_NE(d.text.find("(assert false)\n"), std::string::npos);
}

TEST(EmitSmt, ThousandPointScenarioIsOneParseableDocument) {
  auto bench = gen_benchmark(2, 1000, 1, 42);
  auto mono = emit_monolithic(bench.spaces[0], bench.spaces[1], bench.order);
  expect_well_formed(mono);
  auto fs = forms(mono.text);
  const SExpr* assertion = nullptr;
  for (const auto& f : fs)
    if (f.has_head("assert")) assertion = &f;
  ASSERT_NE(assertion, nullptr);
  ASSERT_TRUE(assertion->items.at(1).has_head("or"));
  EXPECT_EQ(assertion->items.at(1).items.size(), 1001u);
  EXPECT_EQ(mono.time_points.size(), 1000u);
}

TEST(EmitSmt, DeterministicAndRejectsBadInputs) {
  auto bench = gen_benchmark(2, 50, 3, 8);
  EXPECT_EQ(emit_monolithic(bench.spaces[0], bench.spaces[1], bench.order).text,
            emit_monolithic(bench.spaces[0], bench.spaces[1], bench.order).text);
  auto under = bench.spaces[1];
  under.mode = Mode::Under;
  EXPECT_THROW(emit_monolithic(bench.spaces[0], under, bench.order), Error);
  auto sym = at_points("s", {{"t0", box_sym(SymInt::var("x"), SymInt::constant(0), SymInt::constant(1), SymInt::constant(1))}});
  try {
    emit_per_timepoint(bench.spaces[0], sym, bench.order);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UngroundedSymbol);
  }
}

TEST(Golden, ScriptsMatchCheckedInFiles) {
  const fs::path dir = fs::path(SPACEBOUND_TEST_DATA) / "golden";
  const bool update = std::getenv("SPACEBOUND_UPDATE_GOLDEN") != nullptr;
  auto cases = sbtest::golden_cases();
  ASSERT_EQ(cases.size(), 10u);
  for (const auto& c : cases) {
    const fs::path file = dir / c.file;
    if (update) {
      fs::create_directories(dir);
      std::ofstream(file, std::ios::binary) << c.doc.text;
    }
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_EQ(slurp(file), c.doc.text) << c.file;
    EXPECT_NO_THROW(forms(slurp(file))) << c.file;
    expect_well_formed(c.doc);
  }
}

TEST(RunSolver, ContractsWithoutARealSolver) {
  auto order = TimeOrder::chain(1);
  auto d = emit_per_timepoint(at_points("a", {{"t0", box2d(0, 0, 1, 1)}}), at_points("b", {{"t0", box2d(0, 0, 1, 1)}}),
                              order)
               .front();
  EXPECT_EQ(run_solver(d, "z3 -in", std::chrono::milliseconds(0)).status, SolverStatus::Unknown);
  EXPECT_EQ(run_solver(d, "/nonexistent/solver", std::chrono::milliseconds(2000)).status, SolverStatus::SolverError);
  EXPECT_EQ(run_solver(d, "", std::chrono::milliseconds(2000)).status, SolverStatus::SolverError);
  EXPECT_EQ(run_solver(d, "echo sat", std::chrono::milliseconds(5000)).status, SolverStatus::Sat);
  EXPECT_EQ(run_solver(d, "echo unsat", std::chrono::milliseconds(5000)).status, SolverStatus::Unsat);
  EXPECT_EQ(run_solver(d, "echo unknown", std::chrono::milliseconds(5000)).status, SolverStatus::Unknown);
  // cat echoes the script back; its first line is not a verdict.
  EXPECT_EQ(run_solver(d, "cat", std::chrono::milliseconds(5000)).status, SolverStatus::SolverError);
  auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(run_solver(d, "sleep 10", std::chrono::milliseconds(200)).status, SolverStatus::Unknown);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(CheckSmt, WithoutSolverEmitsAndIsInconclusive) {
  auto bench = gen_benchmark(2, 5, 1, 1);
  const fs::path dir = fs::temp_directory_path() / "spacebound_smt_test";
  fs::remove_all(dir);
  SmtOptions opts;
  opts.out_dir = dir;
  auto r = check_collision_smt(bench.spaces[0], bench.spaces[1], bench.order, opts);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 5);
  opts.monolithic = true;
  fs::remove_all(dir);
  EXPECT_EQ(check_collision_smt(bench.spaces[0], bench.spaces[1], bench.order, opts).verdict, Verdict::Inconclusive);
  EXPECT_TRUE(fs::exists(dir / "vc_c0-c1_all.smt2"));
  fs::remove_all(dir);
}

// ---------------------------------------------------------------------------
// Agreement with an installed solver

class WithSolver : public ::testing::Test {
 protected:
  void SetUp() override {
    cmd_ = sbtest::solver_command();
    if (cmd_.empty()) GTEST_SKIP() << "no SMT solver found (set SPACEBOUND_SOLVER or install z3)";
  }
  std::string cmd_;
};

TEST_F(WithSolver, Examples) {
  auto order = TimeOrder::chain(1);
  auto a = at_points("a", {{"t0", box2d(0, 0, 4, 4)}});
  auto b = at_points("b", {{"t0", box2d(5, 5, 9, 9)}});
  auto d = emit_per_timepoint(a, b, order).front();
  EXPECT_EQ(run_solver(d, cmd_, std::chrono::seconds(10)).status, SolverStatus::Unsat);

  auto c = at_points("a", {{"t0", box2d(0, 0, 10, 10)}});
  auto e = at_points("b", {{"t0", box2d(5, 5, 15, 15)}});
  auto sat = run_solver(emit_per_timepoint(c, e, order).front(), cmd_, std::chrono::seconds(10), true);
  EXPECT_EQ(sat.status, SolverStatus::Sat);
  ASSERT_TRUE(sat.model.has_value());
  EXPECT_TRUE(Box::make2(5, 5, 10, 10).contains(*sat.model));

  SmtDocument broken = d;
  broken.text = "(assert (and x\n(check-sat)\n";
  EXPECT_EQ(run_solver(broken, cmd_, std::chrono::seconds(10)).status, SolverStatus::SolverError);
}

TEST_F(WithSolver, VerdictsMatchNativeBoxes) {
  sbtest::Gen g(800);
  auto order = TimeOrder::chain(5);
  sbtest::SpaceOptions so;
  so.disjunctions = true;
  for (int i = 0; i < 50; ++i) {
    auto a = sbtest::random_space(g, "a", so);
    auto b = sbtest::random_space(g, "b", so);
    auto native = check_collision_boxes(a, b, order);
    std::set<std::string> native_points;
    for (const auto& w : native.witnesses) native_points.insert(w.index.from);

    bool any_sat = false;
    for (const auto& d : emit_per_timepoint(a, b, order)) {
      auto r = run_solver(d, cmd_, std::chrono::seconds(20), true);
      ASSERT_TRUE(r.status == SolverStatus::Sat || r.status == SolverStatus::Unsat) << r.detail;
      const bool sat = r.status == SolverStatus::Sat;
      any_sat = any_sat || sat;
      EXPECT_EQ(sat, native_points.count(d.time_points.front()) > 0) << "case " << i;
      if (sat) {
        ASSERT_TRUE(r.model.has_value());
        bool inside = false;
        for (const auto& w : native.witnesses)
          if (w.index.from == d.time_points.front()) inside = inside || w.region.contains_point(*r.model);
        EXPECT_TRUE(inside) << "case " << i;
      }
    }
    auto mono = run_solver(emit_monolithic(a, b, order), cmd_, std::chrono::seconds(20));
    EXPECT_EQ(mono.status == SolverStatus::Sat, any_sat) << "case " << i;
    EXPECT_EQ(any_sat, native.verdict == Verdict::Fail) << "case " << i;
  }
}

TEST_F(WithSolver, CheckSmtReportsWitnessTime) {
  auto bench = gen_benchmark(2, 30, 2, 21, 17);
  SmtOptions opts;
  opts.solver_cmd = cmd_;
  opts.jobs = 4;
  auto per = check_collision_smt(bench.spaces[0], bench.spaces[1], bench.order, opts);
  EXPECT_EQ(per.verdict, Verdict::Fail);
  ASSERT_EQ(per.witnesses.size(), 1u);
  EXPECT_EQ(per.witnesses[0].index, TimeIndex::at("t17"));
  opts.monolithic = true;
  auto mono = check_collision_smt(bench.spaces[0], bench.spaces[1], bench.order, opts);
  EXPECT_EQ(mono.verdict, Verdict::Fail);
  ASSERT_EQ(mono.witnesses.size(), 1u);
  EXPECT_EQ(mono.witnesses[0].index, TimeIndex::at("t17"));

  auto clean = gen_benchmark(2, 30, 2, 21);
  EXPECT_EQ(check_collision_smt(clean.spaces[0], clean.spaces[1], clean.order, opts).verdict, Verdict::Pass);
}
