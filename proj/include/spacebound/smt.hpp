#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spacebound/checkers.hpp"

namespace spacebound {

/// One SMT-LIB2 script. Satisfiable means the two components overlap.
struct SmtDocument {
  std::string text;
  std::vector<std::string> time_points;  // points covered by the condition
  std::vector<std::string> components;
  bool monolithic = false;
  int dim = 2;

  /// vc_<pair>_<timeindex>.smt2 or vc_<pair>_all.smt2
  std::string file_name() const;
};

/// One document per shared time point, in order-insertion order.
std::vector<SmtDocument> emit_per_timepoint(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order);

/// Disjunction over every shared time point; asserts false when there is none.
SmtDocument emit_monolithic(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order);

enum class SolverStatus { Sat, Unsat, Unknown, SolverError };

std::string_view to_string(SolverStatus s) noexcept;

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  std::string detail;
  std::optional<LatticePoint> model;  // only when a model was requested and the script is sat
};

/// Runs `command` (split on whitespace, no shell) with the script on
/// standard input. A timeout of zero or less returns Unknown without
/// starting the process.
SolverResult run_solver(const SmtDocument& doc, const std::string& command,
                        std::chrono::milliseconds timeout, bool want_model = false);

struct SmtOptions {
  bool monolithic = false;
  std::string solver_cmd;  // empty: emit only, verdict Inconclusive
  std::chrono::milliseconds timeout{10000};
  unsigned jobs = 1;
  std::optional<std::filesystem::path> out_dir;
};

/// Collision check through emitted conditions. Sat maps to Fail, Unsat to
/// Pass, anything else to Inconclusive.
CheckReport check_collision_smt(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                const SmtOptions& opts);

}  // namespace spacebound
