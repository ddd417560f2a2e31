#include "spacebound/checkers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "spacebound/error.hpp"

namespace spacebound {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Property p) noexcept {
  return p == Property::CollisionFree ? "collision-free" : "coverage";
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::size_t err_index = n;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        // Keep the failure of the lowest index so errors are reproducible.
        std::lock_guard lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  const auto count = static_cast<std::size_t>(jobs) < n ? jobs : static_cast<unsigned>(n);
  std::vector<std::jthread> threads;
  threads.reserve(count);
  for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
  threads.clear();
  if (err) std::rethrow_exception(err);
}

namespace {

bool has_spatial(const TimedSpace& ts) {
  bool found = false;
  auto scan = [&](const Term& f) {
    for_each_atom(f, [&](const Atom& a) { found = found || a.is_spatial(); });
  };
  for (const auto& [idx, f] : ts.entries) scan(f);
  for (const auto& g : ts.pending) scan(g.consequent);
  return found;
}

// Formulas in force at each time point.
class PointIndex {
 public:
  PointIndex(const TimedSpace& ts, const TimeOrder& order) {
    for (const auto& [idx, f] : ts.entries) {
      for (const auto& p : covered_points(order, idx)) by_point_[p].push_back(&f);
    }
    if (ts.mode == Mode::Over) {
      for (const auto& g : ts.pending) {
        for (const auto& p : covered_points(order, g.index)) by_point_[p].push_back(&g.consequent);
      }
    }
  }

  bool covers(const std::string& p) const { return by_point_.count(p) > 0; }

  std::map<std::string, Region> regions(const std::string& p, Mode mode, int dim,
                                        const std::string& owner) const {
    std::map<std::string, Region> out;
    auto it = by_point_.find(p);
    if (it == by_point_.end()) return out;
    for (const Term* f : it->second) {
      for (auto& [o, r] : owned_regions(*f, mode, dim, owner)) {
        auto [slot, fresh] = out.try_emplace(o, r);
        if (!fresh) slot->second = region_union(slot->second, r);
      }
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<const Term*>> by_point_;
};

Region merged(const std::map<std::string, Region>& per_owner, int dim) {
  Region acc(dim);
  for (const auto& [o, r] : per_owner) acc = region_union(acc, r);
  return acc;
}

using Clock = std::chrono::steady_clock;

// Evaluates every shared point (or up to the first failing one under early
// exit) and assembles the report in time order.
template <class Eval>
CheckReport run_points(Property property, const TimedSpace& a, const TimedSpace& b,
                       const std::vector<std::string>& points, const CheckOptions& opts,
                       Verdict pass_verdict, Eval eval) {
  const auto start = Clock::now();
  const std::size_t n = points.size();
  std::vector<std::vector<Witness>> found(n);
  std::atomic<std::size_t> first_fail{n};
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    if (opts.early_exit && i > first_fail.load()) return;
    found[i] = eval(points[i]);
    if (!found[i].empty()) {
      std::size_t cur = first_fail.load();
      while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
      }
    }
  });

  CheckReport report;
  report.property = property;
  report.components = {a.component, b.component};
  const std::size_t limit = opts.early_exit ? std::min(n, first_fail.load() + 1) : n;
  for (std::size_t i = 0; i < limit; ++i) {
    for (auto& w : found[i]) report.witnesses.push_back(std::move(w));
  }
  // Points past the first failure may have been evaluated by other workers;
  // they are discarded so the report does not depend on scheduling.
  report.stats.time_points_examined = limit;
  report.stats.early_exit = opts.early_exit && first_fail.load() + 1 < n;
  report.stats.vacuous = n == 0;
  report.verdict = report.witnesses.empty() ? (n == 0 ? Verdict::Pass : pass_verdict) : Verdict::Fail;
  report.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

// Spreads 64 bits for hashing lattice points.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const {
    return static_cast<std::size_t>(
        mix(static_cast<std::uint64_t>(p[0]) ^ mix(static_cast<std::uint64_t>(p[1]) ^ mix(static_cast<std::uint64_t>(p[2])))));
  }
};

// Smallest multiple of step that is >= v.
Coord ceil_to(Coord v, Coord step) {
  Coord q = v / step;
  if (q * step < v) ++q;
  return q * step;
}

template <class F>
bool for_each_lattice_point(const Region& r, Coord step, F&& f) {
  for (const auto& b : r.boxes()) {
    const Coord x0 = ceil_to(b.lo[0], step);
    const Coord y0 = ceil_to(b.lo[1], step);
    const Coord z0 = ceil_to(b.lo[2], step);
    for (Coord z = z0; z <= b.hi[2]; z += step) {
      for (Coord y = y0; y <= b.hi[1]; y += step) {
        for (Coord x = x0; x <= b.hi[0]; x += step) {
          if (f(LatticePoint{x, y, z})) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

void check_collision_inputs(const TimedSpace& a, const TimedSpace& b) {
  for (const auto* ts : {&a, &b}) {
    if (ts->mode != Mode::Over) {
      throw Error(ErrorCode::ModeMismatch, ts->component + ": collision checking needs Over spaces");
    }
    if (ts->classification != Classification::Occupied) {
      throw Error(ErrorCode::ClassificationMismatch,
                  ts->component + ": collision checking needs occupied space");
    }
  }
}

std::vector<std::string> shared_points(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order) {
  const PointIndex ia(a, order);
  const PointIndex ib(b, order);
  std::vector<std::string> out;
  for (const auto& p : order.points()) {
    if (ia.covers(p) && ib.covers(p)) out.push_back(p);
  }
  return out;
}

std::map<std::string, Region> regions_at(const TimedSpace& ts, const std::string& point,
                                         const TimeOrder& order, int dim) {
  order.index_of(point);
  return PointIndex(ts, order).regions(point, ts.mode, dim, ts.component);
}

std::vector<std::map<std::string, Region>> regions_at(const TimedSpace& ts,
                                                      const std::vector<std::string>& points,
                                                      const TimeOrder& order, int dim) {
  const PointIndex index(ts, order);
  std::vector<std::map<std::string, Region>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(index.regions(p, ts.mode, dim, ts.component));
  return out;
}

int common_dim(const TimedSpace& a, const TimedSpace& b) {
  const bool sa = has_spatial(a);
  const bool sb = has_spatial(b);
  if (sa && sb) {
    const int da = space_dim(a);
    const int db = space_dim(b);
    if (da != db) throw Error(ErrorCode::DimensionMismatch, a.component + " vs " + b.component);
    return da;
  }
  if (sa) return space_dim(a);
  if (sb) return space_dim(b);
  return 2;
}

CheckReport check_collision_boxes(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                  const CheckOptions& opts) {
  check_collision_inputs(a, b);
  if (opts.margin < 0) throw Error(ErrorCode::NegativeMargin, std::to_string(opts.margin));
  const int dim = common_dim(a, b);
  const PointIndex ia(a, order);
  const PointIndex ib(b, order);
  const auto points = shared_points(a, b, order);
  return run_points(Property::CollisionFree, a, b, points, opts, Verdict::Pass,
                    [&](const std::string& p) {
                      std::vector<Witness> out;
                      const auto ra = ia.regions(p, Mode::Over, dim, a.component);
                      const auto rb = ib.regions(p, Mode::Over, dim, b.component);
                      for (const auto& [oa, regA] : ra) {
                        const Region grown = region_inflate(regA, opts.margin);
                        for (const auto& [ob, regB] : rb) {
                          if (oa == ob) continue;
                          Region hit = region_intersection(grown, regB);
                          if (hit.empty()) continue;
                          LatticePoint pt = hit.boxes().front().lo;
                          out.push_back({TimeIndex::at(p), std::move(hit), pt, {oa, ob}});
                        }
                      }
                      return out;
                    });
}

CheckReport check_collision_points(const TimedSpace& a, const TimedSpace& b, const TimeOrder& order,
                                   Coord step, const CheckOptions& opts) {
  if (step < 1) throw Error(ErrorCode::StepNonPositive, std::to_string(step));
  check_collision_inputs(a, b);
  if (opts.margin < 0) throw Error(ErrorCode::NegativeMargin, std::to_string(opts.margin));
  const int dim = common_dim(a, b);
  const PointIndex ia(a, order);
  const PointIndex ib(b, order);
  const auto points = shared_points(a, b, order);
  const Verdict pass = step == 1 ? Verdict::Pass : Verdict::Inconclusive;
  return run_points(
      Property::CollisionFree, a, b, points, opts, pass, [&](const std::string& p) {
        std::vector<Witness> out;
        const auto ra = ia.regions(p, Mode::Over, dim, a.component);
        const auto rb = ib.regions(p, Mode::Over, dim, b.component);
        std::vector<std::string> owners;
        for (const auto* side : {&ra, &rb}) {
          for (const auto& [o, r] : *side) owners.push_back(o);
        }
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
        if (owners.size() > 64) throw Error(ErrorCode::InvalidArgument, "more than 64 owners at one time point");
        auto bit_of = [&](const std::string& o) {
          return std::uint64_t{1} << (std::lower_bound(owners.begin(), owners.end(), o) - owners.begin());
        };

        std::unordered_map<LatticePoint, std::uint64_t, PointHash> occupied;
        std::size_t expected = 0;
        for (const auto& [o, r] : ra) {
          for (const auto& bx : r.boxes()) expected += static_cast<std::size_t>(lattice_volume(bx) / static_cast<std::uint64_t>(step));
        }
        occupied.reserve(expected);
        for (const auto& [oa, regA] : ra) {
          const std::uint64_t bit = bit_of(oa);
          for_each_lattice_point(region_inflate(regA, opts.margin), step, [&](const LatticePoint& q) {
            occupied[q] |= bit;
            return false;
          });
        }
        for (const auto& [ob, regB] : rb) {
          const std::uint64_t other = ~bit_of(ob);
          std::optional<std::pair<LatticePoint, std::uint64_t>> hit;
          for_each_lattice_point(regB, step, [&](const LatticePoint& q) {
            auto it = occupied.find(q);
            if (it == occupied.end() || (it->second & other) == 0) return false;
            hit.emplace(q, it->second & other);
            return true;
          });
          if (!hit) continue;
          const auto& oa = owners[static_cast<std::size_t>(__builtin_ctzll(hit->second))];
          const LatticePoint& q = hit->first;
          out.push_back({TimeIndex::at(p), Region(dim, {Box{q, q}}), q, {oa, ob}});
          break;  // first hit is enough for this time point
        }
        return out;
      });
}

CheckReport check_coverage(const TimedSpace& inner, const TimedSpace& outer, const TimeOrder& order,
                           const CheckOptions& opts) {
  if (inner.mode != Mode::Over) {
    throw Error(ErrorCode::ModeMismatch, inner.component + ": coverage inner space must be Over");
  }
  if (outer.mode != Mode::Under) {
    throw Error(ErrorCode::ModeMismatch, outer.component + ": coverage outer space must be Under");
  }
  const int dim = common_dim(inner, outer);
  const PointIndex ii(inner, order);
  const PointIndex io(outer, order);
  const auto points = shared_points(inner, outer, order);
  auto report = run_points(Property::Coverage, inner, outer, points, opts, Verdict::Pass,
                           [&](const std::string& p) {
                             std::vector<Witness> out;
                             const Region rin = merged(ii.regions(p, Mode::Over, dim, inner.component), dim);
                             const Region rout = merged(io.regions(p, Mode::Under, dim, outer.component), dim);
                             Region rest = region_difference(rin, rout);
                             if (!rest.empty()) {
                               LatticePoint pt = rest.boxes().front().lo;
                               out.push_back({TimeIndex::at(p), std::move(rest), pt,
                                              {inner.component, outer.component}});
                             }
                             return out;
                           });
  return report;
}

std::vector<CheckReport> run_pairwise(const std::vector<TimedSpace>& components, const TimeOrder& order,
                                      Property property, const PairChecker& check) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (property == Property::CollisionFree) {
    if (components.size() < 2) {
      throw Error(ErrorCode::InvalidArgument, "collision checking needs at least two components");
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
      for (std::size_t j = i + 1; j < components.size(); ++j) pairs.emplace_back(i, j);
    }
  } else {
    for (std::size_t i = 0; i < components.size(); ++i) {
      for (std::size_t j = 0; j < components.size(); ++j) {
        if (i != j && components[i].mode == Mode::Over && components[j].mode == Mode::Under) {
          pairs.emplace_back(i, j);
        }
      }
    }
  }
  std::vector<CheckReport> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const auto& a = components[i];
    const auto& b = components[j];
    if (shared_points(a, b, order).empty()) {
      CheckReport vacuous;
      vacuous.property = property;
      vacuous.components = {a.component, b.component};
      vacuous.stats.vacuous = true;
      out.push_back(std::move(vacuous));
      continue;
    }
    out.push_back(check(a, b));
  }
  return out;
}

std::vector<CheckReport> run_pairwise(const std::vector<TimedSpace>& components, const TimeOrder& order,
                                      Property property, const PairwiseOptions& opts) {
  PairChecker check;
  if (property == Property::Coverage) {
    check = [&](const TimedSpace& a, const TimedSpace& b) { return check_coverage(a, b, order, opts.check); };
  } else if (opts.backend == NativeBackend::Points) {
    check = [&](const TimedSpace& a, const TimedSpace& b) {
      return check_collision_points(a, b, order, opts.step, opts.check);
    };
  } else {
    check = [&](const TimedSpace& a, const TimedSpace& b) {
      return check_collision_boxes(a, b, order, opts.check);
    };
  }
  return run_pairwise(components, order, property, check);
}

Verdict overall_verdict(const std::vector<CheckReport>& reports) {
  Verdict v = Verdict::Pass;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return Verdict::Fail;
    if (r.verdict == Verdict::Inconclusive) v = Verdict::Inconclusive;
  }
  return v;
}

}  // namespace spacebound
