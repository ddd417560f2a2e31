#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "spacebound/checkers.hpp"
#include "spacebound/dsl.hpp"

namespace spacebound::cli {

/// A component is a term until a pass needs it indexed by time.
struct Component {
  std::string name;
  std::variant<Term, TimedSpace> value;
};

/// Everything loaded from the input documents plus the current components.
class Workspace {
 public:
  Workspace(const std::vector<Document>& docs, std::set<std::string> ranges);

  bool has_order() const { return order_.has_value(); }
  /// Throws InvalidArgument when no time order is defined.
  const TimeOrder& order() const;
  void set_order(std::string name, TimeOrder order);

  std::vector<Component>& components() { return components_; }
  const std::vector<Component>& components() const { return components_; }
  Component& component(const std::string& name);

  Term term_of(const Component& c) const;
  TimedSpace& space_of(Component& c);
  std::vector<TimedSpace> spaces();

  void put_term(Component& c, Term t) { c.value = std::move(t); }

  const NodeGeometry& geometry(const std::string& name) const;
  const EventTrace& trace(const std::string& name) const;
  const Automaton& automaton(const std::string& name) const;
  /// The only definition of that type, or nullptr when there are none or several.
  template <class T>
  const T* single() const {
    const T* found = nullptr;
    int count = 0;
    for (const auto& d : extras_.definitions) {
      if (const auto* v = std::get_if<T>(&d.body)) {
        found = v;
        ++count;
      }
    }
    return count == 1 ? found : nullptr;
  }

  bool is_range(const std::string& name) const { return ranges_.count(name) > 0; }

  /// Current state as a document: header, non-term definitions, then
  /// components in order.
  Document to_document() const;

 private:
  IndexOptions options_for(const std::string& name) const;

  Document extras_;  // every non-term definition, in input order
  std::optional<std::string> order_name_;
  std::optional<TimeOrder> order_;
  std::vector<Component> components_;
  std::set<std::string> ranges_;
};

enum class Backend { Boxes, Points, SmtPerT, SmtMono };

std::optional<Backend> parse_backend(std::string_view s);

struct CheckConfig {
  Backend backend = Backend::Boxes;
  Property property = Property::CollisionFree;
  Coord step = 1;
  Coord margin = 0;
  bool early_exit = false;
  unsigned jobs = 1;
  std::string solver_cmd;
  std::chrono::milliseconds solver_timeout{10000};
  std::string smt_dir = "smt-vc";
};

/// Runs the configured backend over every pair of components.
std::vector<CheckReport> run_check(Workspace& ws, const CheckConfig& cfg);

struct PassSpec {
  std::string name;
  std::vector<SExpr> args;
};

/// Reads `(pipeline (pass args...)...)`. Throws SyntaxError, UnknownPass.
std::vector<PassSpec> parse_pipeline(std::string_view text);

/// A pass written on the command line, e.g. "merge-intervals:t0:t3".
PassSpec parse_pass_arg(const std::string& text);

struct PipelineRun {
  std::optional<std::vector<CheckReport>> reports;
};

/// Applies passes in order. Errors are rethrown with the stage name in the
/// detail. Intermediate documents go to `dump_dir` when given.
PipelineRun run_pipeline(Workspace& ws, const std::vector<PassSpec>& passes, CheckConfig cfg,
                         const std::optional<std::string>& dump_dir);

}  // namespace spacebound::cli
