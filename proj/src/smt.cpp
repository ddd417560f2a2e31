#include "spacebound/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spacebound/error.hpp"
#include "spacebound/sexpr.hpp"

namespace spacebound {

namespace {

constexpr const char* kAxes[3] = {"x", "y", "z"};

std::string lit(Coord v) {
  if (v < 0) return "(- " + std::to_string(v).substr(1) + ")";
  return std::to_string(v);
}

std::string box_formula(const Box& b, int dim) {
  std::string s = "(and";
  for (int k = 0; k < dim; ++k) {
    s += " (<= " + lit(b.lo[k]) + " " + kAxes[k] + ") (<= " + kAxes[k] + " " + lit(b.hi[k]) + ")";
  }
  return s + ")";
}

std::string region_formula(const Region& r) {
  if (r.boxes().size() == 1) return box_formula(r.boxes().front(), r.dim());
  std::string s = "(or";
  for (const auto& b : r.boxes()) s += " " + box_formula(b, r.dim());
  return s + ")";
}

// Overlap of differently owned space at one time point.
std::string overlap_formula(const std::map<std::string, Region>& ra, const std::map<std::string, Region>& rb) {
  std::vector<std::string> cases;
  for (const auto& [oa, regA] : ra) {
    for (const auto& [ob, regB] : rb) {
      if (oa == ob) continue;
      cases.push_back("(and " + region_formula(regA) + " " + region_formula(regB) + ")");
    }
  }
  if (cases.empty()) return "false";
  if (cases.size() == 1) return cases.front();
  std::string s = "(or";
  for (const auto& c : cases) s += " " + c;
  return s + ")";
}

std::string preamble(const TimedSpace& a, const TimedSpace& b, const std::string& time, int dim) {
  std::string s = "; pair: " + a.component + " " + b.component + "\n; time: " + time +
                  "\n; sat => collision\n(set-logic QF_LIA)\n";
  for (int k = 0; k < dim; ++k) s += std::string("(declare-const ") + kAxes[k] + " Int)\n";
  return s;
}

struct Prepared {
  int dim;
  std::vector<std::string> points;
  std::vector<std::string> formulas;
};

Prepared prepare(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order) {
  check_collision_inputs(a, b);
  Prepared p;
  p.dim = common_dim(a, b);
  p.points = shared_points(a, b, order);
  const auto ra = regions_at(a, p.points, order, p.dim);
  const auto rb = regions_at(b, p.points, order, p.dim);
  for (std::size_t i = 0; i < p.points.size(); ++i) p.formulas.push_back(overlap_formula(ra[i], rb[i]));
  return p;
}

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_';
    out += keep ? c : '_';
  }
  return out;
}

}  // namespace

std::string SmtDocument::file_name() const {
  std::string pair = components.size() == 2 ? sanitize(components[0]) + "-" + sanitize(components[1]) : "pair";
  if (monolithic) return "vc_" + pair + "_all.smt2";
  return "vc_" + pair + "_" + (time_points.empty() ? std::string("none") : sanitize(time_points.front())) + ".smt2";
}

std::string_view to_string(SolverStatus s) noexcept {
  switch (s) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::SolverError: return "error";
  }
  return "?";
}

std::vector<SmtDocument> emit_per_timepoint(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order) {
  const Prepared p = prepare(a, b, order);
  std::vector<SmtDocument> docs;
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    SmtDocument d;
    d.dim = p.dim;
    d.components = {a.component, b.component};
    d.time_points = {p.points[i]};
    d.text = preamble(a, b, p.points[i], p.dim) + "(assert " + p.formulas[i] + ")\n(check-sat)\n";
    docs.push_back(std::move(d));
  }
  return docs;
}

SmtDocument emit_monolithic(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order) {
  const Prepared p = prepare(a, b, order);
  SmtDocument d;
  d.dim = p.dim;
  d.monolithic = true;
  d.components = {a.component, b.component};
  d.time_points = p.points;
  d.text = preamble(a, b, "all (" + std::to_string(p.points.size()) + " shared points)", p.dim);
  if (p.formulas.empty()) {
    d.text += "(assert false)\n";
  } else if (p.formulas.size() == 1) {
    d.text += "(assert " + p.formulas.front() + ")\n";
  } else {
    d.text += "(assert (or";
    for (const auto& f : p.formulas) d.text += "\n  " + f;
    d.text += "))\n";
  }
  d.text += "(check-sat)\n";
  return d;
}

namespace {

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream is(cmd);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

struct ProcessOutput {
  bool timed_out = false;
  int exit_status = 0;
  std::string out;
};

ProcessOutput run_process(const std::vector<std::string>& argv, const std::string& input,
                          std::chrono::milliseconds timeout) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) throw Error(ErrorCode::Io, std::string("pipe: ") + std::strerror(errno));
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error(ErrorCode::Io, std::string("pipe: ") + std::strerror(errno));
  }
  std::vector<char*> args;
  for (const auto& s : argv) args.push_back(const_cast<char*>(s.c_str()));
  args.push_back(nullptr);

  const pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::Io, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(out_pipe[1], STDERR_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  int wfd = in_pipe[1];
  const int rfd = out_pipe[0];
  fcntl(wfd, F_SETFL, O_NONBLOCK);
  signal(SIGPIPE, SIG_IGN);

  ProcessOutput result;
  std::size_t written = 0;
  if (input.empty()) {
    close(wfd);
    wfd = -1;
  }
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  char buf[4096];
  bool open_read = true;
  while (open_read) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      result.timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {rfd, POLLIN, 0};
    if (wfd >= 0) fds[n++] = {wfd, POLLOUT, 0};
    const int ready = poll(fds, n, static_cast<int>(std::min<std::int64_t>(left.count(), 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t got = read(rfd, buf, sizeof buf);
      if (got > 0) {
        result.out.append(buf, static_cast<std::size_t>(got));
      } else if (got == 0 || errno != EINTR) {
        open_read = false;
      }
    }
    if (wfd >= 0 && n > 1 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t put = write(wfd, input.data() + written, input.size() - written);
      if (put > 0) written += static_cast<std::size_t>(put);
      if (put < 0 && errno != EAGAIN && errno != EINTR) written = input.size();
      if (written >= input.size()) {
        close(wfd);
        wfd = -1;
      }
    }
  }
  if (wfd >= 0) close(wfd);
  close(rfd);
  int status = 0;
  if (result.timed_out) kill(pid, SIGKILL);
  waitpid(pid, &status, 0);
  result.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

// Reads "((x 5) (y (- 3)))" as printed by get-value.
std::optional<LatticePoint> parse_model(std::string_view text, int dim) {
  try {
    auto exprs = read_sexprs(text);
    LatticePoint p{0, 0, 0};
    int seen = 0;
    for (const auto& e : exprs) {
      if (!e.is_list()) continue;
      for (const auto& binding : e.items) {
        if (!binding.is_list() || binding.items.size() != 2 || !binding.items[0].is_symbol()) continue;
        const auto& v = binding.items[1];
        std::int64_t value = 0;
        if (v.is_symbol()) {
          value = std::stoll(v.text);
        } else if (v.has_head("-") && v.items.size() == 2) {
          value = -std::stoll(v.items[1].text);
        } else {
          continue;
        }
        for (int k = 0; k < dim; ++k) {
          if (binding.items[0].text == kAxes[k]) {
            p[static_cast<std::size_t>(k)] = value;
            ++seen;
          }
        }
      }
    }
    if (seen == dim) return p;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

SolverResult run_solver(const SmtDocument& doc, const std::string& command, std::chrono::milliseconds timeout,
                        bool want_model) {
  SolverResult r;
  if (timeout.count() <= 0) {
    r.detail = "timeout";
    return r;
  }
  const auto argv = split_command(command);
  if (argv.empty()) {
    r.status = SolverStatus::SolverError;
    r.detail = "empty solver command";
    return r;
  }
  std::string script = doc.text;
  if (want_model) {
    script += "(get-value (";
    for (int k = 0; k < doc.dim; ++k) script += std::string(k ? " " : "") + kAxes[k];
    script += "))\n";
  }
  ProcessOutput out;
  try {
    out = run_process(argv, script, timeout);
  } catch (const Error& e) {
    r.status = SolverStatus::SolverError;
    r.detail = e.what();
    return r;
  }
  if (out.timed_out) {
    r.detail = "timeout";
    return r;
  }
  std::istringstream lines(out.out);
  std::string line;
  std::size_t consumed = 0;
  bool have_result = false;
  while (std::getline(lines, line)) {
    consumed += line.size() + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::string tok = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (tok == "sat" || tok == "unsat" || tok == "unknown") {
      r.status = tok == "sat" ? SolverStatus::Sat : tok == "unsat" ? SolverStatus::Unsat : SolverStatus::Unknown;
      have_result = true;
      break;
    }
    r.status = SolverStatus::SolverError;
    r.detail = tok;
    return r;
  }
  if (!have_result) {
    r.status = SolverStatus::SolverError;
    r.detail = out.out.empty() ? "no output, exit status " + std::to_string(out.exit_status) : out.out;
    return r;
  }
  if (want_model && r.status == SolverStatus::Sat && consumed < out.out.size()) {
    r.model = parse_model(std::string_view(out.out).substr(consumed), doc.dim);
  }
  return r;
}

CheckReport check_collision_smt(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                const SmtOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SmtDocument> docs;
  if (opts.monolithic) {
    docs.push_back(emit_monolithic(a, b, order));
  } else {
    docs = emit_per_timepoint(a, b, order);
  }
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    for (const auto& d : docs) {
      std::ofstream f(*opts.out_dir / d.file_name(), std::ios::binary);
      f << d.text;
      if (!f) throw Error(ErrorCode::Io, (*opts.out_dir / d.file_name()).string());
    }
  }
  std::vector<SolverResult> results(docs.size());
  if (!opts.solver_cmd.empty()) {
    parallel_for(docs.size(), opts.jobs, [&](std::size_t i) {
      results[i] = run_solver(docs[i], opts.solver_cmd, opts.timeout, true);
    });
  } else {
    for (auto& r : results) r.detail = "no solver configured";
  }

  CheckReport report;
  report.property = Property::CollisionFree;
  report.components = {a.component, b.component};
  const int dim = docs.empty() ? 2 : docs.front().dim;
  bool unresolved = false;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& r = results[i];
    if (r.status == SolverStatus::Unsat) continue;
    if (r.status != SolverStatus::Sat) {
      unresolved = true;
      continue;
    }
    Witness w;
    w.components = report.components;
    w.region = Region(dim);
    w.point = r.model;
    std::string at = docs[i].time_points.empty() ? std::string() : docs[i].time_points.front();
    if (docs[i].monolithic && r.model) {
      // Locate the first shared point where the model lies in both spaces.
      const auto ra = regions_at(a, docs[i].time_points, order, dim);
      const auto rb = regions_at(b, docs[i].time_points, order, dim);
      for (std::size_t k = 0; k < docs[i].time_points.size(); ++k) {
        bool hit = false;
        for (const auto& [oa, regA] : ra[k]) {
          for (const auto& [ob, regB] : rb[k]) {
            hit = hit || (oa != ob && regA.contains_point(*r.model) && regB.contains_point(*r.model));
          }
        }
        if (hit) {
          at = docs[i].time_points[k];
          break;
        }
      }
    }
    w.index = TimeIndex::at(at);
    if (r.model) w.region = Region(dim, {Box{*r.model, *r.model}});
    report.witnesses.push_back(std::move(w));
  }
  report.verdict = !report.witnesses.empty() ? Verdict::Fail : unresolved ? Verdict::Inconclusive : Verdict::Pass;
  report.stats.time_points_examined = shared_points(a, b, order).size();
  report.stats.vacuous = report.stats.time_points_examined == 0;
  report.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace spacebound
