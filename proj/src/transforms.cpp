#include "spacebound/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "spacebound/error.hpp"

namespace spacebound {

std::string_view to_string(Classification c) noexcept {
  return c == Classification::Occupied ? "occupied" : "range";
}

std::string_view to_string(Mode m) noexcept { return m == Mode::Over ? "over" : "under"; }

// ---------------------------------------------------------------------------
// normalize

namespace {

void flatten_into(const Term& t, TermKind a, TermKind b, std::vector<Term>& out) {
  if (t.kind() == a || t.kind() == b) {
    for (const auto& c : t.children()) flatten_into(c, a, b, out);
  } else {
    out.push_back(t);
  }
}

Term normalize_nary(const Term& t, bool conjunction) {
  const TermKind bin = conjunction ? TermKind::And : TermKind::Or;
  const TermKind big = conjunction ? TermKind::BigAnd : TermKind::BigOr;
  const TermKind unit = conjunction ? TermKind::True : TermKind::False;
  std::vector<Term> normed;
  for (const auto& c : t.children()) normed.push_back(normalize(c));
  std::vector<Term> flat;
  for (const auto& c : normed) flatten_into(c, bin, big, flat);
  std::erase_if(flat, [&](const Term& c) { return c.kind() == unit; });
  if (flat.empty()) return conjunction ? make_true() : make_false();
  if (flat.size() == 1) return flat.front();
  return Term::make(big, std::move(flat));
}

}  // namespace

Term normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::And:
    case TermKind::BigAnd:
      return normalize_nary(t, true);
    case TermKind::Or:
    case TermKind::BigOr:
      return normalize_nary(t, false);
    case TermKind::Not: {
      Term inner = normalize(t.child(0));
      if (inner.kind() == TermKind::Not) return inner.child(0);
      return make_not(std::move(inner));
    }
    case TermKind::Implies:
      return make_implies(normalize(t.child(0)), normalize(t.child(1)));
    default:
      return t;
  }
}

// ---------------------------------------------------------------------------
// index_by_time

namespace {

bool contains_nonspatial(const Term& f) {
  bool found = false;
  for_each_atom(f, [&](const Atom& a) {
    if (!a.is_spatial()) found = true;
  });
  return found;
}

// Drops spatial atoms rejected by `keep`. Returns nullopt when nothing of the
// formula survives.
std::optional<Term> prune(const Term& f, const std::function<bool(const Atom&)>& keep, Mode mode) {
  switch (f.kind()) {
    case TermKind::Atom:
      if (keep(f.atom())) return f;
      return std::nullopt;
    case TermKind::And:
    case TermKind::BigAnd: {
      std::vector<Term> kept;
      for (const auto& c : f.children()) {
        if (auto p = prune(c, keep, mode)) kept.push_back(std::move(*p));
      }
      if (kept.empty()) return std::nullopt;
      if (kept.size() == 1) return kept.front();
      return make_big_and(std::move(kept));
    }
    case TermKind::Or:
    case TermKind::BigOr: {
      std::vector<Term> kept;
      bool dropped = false;
      for (const auto& c : f.children()) {
        if (auto p = prune(c, keep, mode)) {
          kept.push_back(std::move(*p));
        } else {
          dropped = true;
        }
      }
      if (kept.empty()) return std::nullopt;
      // A branch with nothing of this class guarantees nothing under Under.
      if (dropped && mode == Mode::Under) return make_false();
      if (kept.size() == 1) return kept.front();
      return make_big_or(std::move(kept));
    }
    default:
      return f;
  }
}

void conjoin_into(std::map<TimeIndex, Term>& entries, const TimeIndex& idx, const Term& f) {
  auto it = entries.find(idx);
  if (it == entries.end()) {
    entries.emplace(idx, f);
  } else {
    it->second = make_and(it->second, f);
  }
}

const std::string& absolute(const TimeLabel& l, const std::string& path) {
  if (l.relative) {
    throw Error(ErrorCode::NotImplicationForm,
                path + ": event-relative label on " + l.name + " must be resolved first");
  }
  return l.name;
}

std::optional<TimeIndex> time_index_of(const Term& t, const TimeOrder& order, const std::string& path) {
  if (!t.is_atom()) return std::nullopt;
  if (const auto* tp = t.atom().get_if<TimePoint>()) {
    const auto& p = absolute(tp->label, path);
    order.index_of(p);
    return TimeIndex::at(p);
  }
  if (const auto* ti = t.atom().get_if<TimeInterval>()) {
    const auto& a = absolute(ti->from, path);
    const auto& b = absolute(ti->to, path);
    expand_interval(order, a, b);
    return a == b ? TimeIndex::at(a) : TimeIndex::between(a, b);
  }
  return std::nullopt;
}

struct Antecedent {
  TimeIndex index;
  std::optional<std::string> event;
};

std::optional<Antecedent> parse_antecedent(const Term& ante, const TimeOrder& order,
                                           const std::string& path) {
  if (auto idx = time_index_of(ante, order, path)) return Antecedent{*idx, std::nullopt};
  if (ante.kind() == TermKind::And || ante.kind() == TermKind::BigAnd) {
    auto kids = ante.children();
    if (kids.size() != 2) return std::nullopt;
    for (int first = 0; first < 2; ++first) {
      const Term& tpart = kids[first];
      const Term& epart = kids[1 - first];
      auto idx = time_index_of(tpart, order, path);
      if (idx && epart.is_atom() && epart.atom().is<Event>()) {
        return Antecedent{*idx, epart.atom().get_if<Event>()->name};
      }
    }
  }
  return std::nullopt;
}

void index_implication(const Term& imp, const TimeOrder& order, const IndexOptions& opts,
                       const std::string& path, TimedSpace& out) {
  auto ante = parse_antecedent(imp.child(0), order, path);
  if (!ante) {
    throw Error(ErrorCode::NotImplicationForm, path + ": antecedent is not a time index");
  }
  // Split the consequent into derived events and spatial parts.
  std::vector<Term> parts;
  flatten_into(imp.child(1), TermKind::And, TermKind::BigAnd, parts);
  std::vector<Term> spatial;
  bool had_events = false;
  for (const auto& p : parts) {
    if (p.is_atom() && p.atom().is<Event>()) {
      out.event_rules.push_back({ante->index, ante->event, p.atom().get_if<Event>()->name});
      had_events = true;
    } else if (contains_nonspatial(p)) {
      throw Error(ErrorCode::NotImplicationForm, path + ": consequent mixes time atoms into space");
    } else {
      spatial.push_back(p);
    }
  }
  if (spatial.empty()) return;
  Term cons = had_events ? (spatial.size() == 1 ? spatial.front() : make_big_and(spatial))
                         : imp.child(1);
  if (opts.keep) {
    auto pruned = prune(cons, opts.keep, opts.mode);
    if (!pruned) return;
    cons = *pruned;
  }
  if (ante->event) {
    out.pending.push_back({ante->index, *ante->event, cons});
  } else {
    conjoin_into(out.entries, ante->index, cons);
  }
}

void index_rec(const Term& t, const TimeOrder& order, const IndexOptions& opts,
               const std::string& path, TimedSpace& out) {
  switch (t.kind()) {
    case TermKind::And:
    case TermKind::BigAnd: {
      auto kids = t.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        index_rec(kids[i], order, opts, path + "." + std::to_string(i), out);
      }
      return;
    }
    case TermKind::True:
      return;
    case TermKind::Implies:
      index_implication(t, order, opts, path, out);
      return;
    default:
      throw Error(ErrorCode::NotImplicationForm, path + ": expected a conjunction of implications");
  }
}

Term time_atom(const TimeIndex& idx) {
  return idx.is_point() ? time_point(idx.from) : time_interval(idx.from, idx.to);
}

}  // namespace

TimedSpace index_by_time(const Term& t, const TimeOrder& order, const IndexOptions& opts) {
  TimedSpace out;
  out.component = opts.component;
  out.classification = opts.classification;
  out.mode = opts.mode;
  index_rec(t, order, opts, "root", out);
  return out;
}

Term to_term(const TimedSpace& ts) {
  std::vector<Term> parts;
  for (const auto& [idx, f] : ts.entries) parts.push_back(make_implies(time_atom(idx), f));
  for (const auto& g : ts.pending) {
    parts.push_back(make_implies(make_and(time_atom(g.index), event(g.event)), g.consequent));
  }
  for (const auto& r : ts.event_rules) {
    Term ante = r.guard ? make_and(time_atom(r.index), event(*r.guard)) : time_atom(r.index);
    parts.push_back(make_implies(std::move(ante), event(r.derived)));
  }
  if (parts.empty()) return make_true();
  return make_big_and(std::move(parts));
}

// ---------------------------------------------------------------------------
// events

namespace {

void check_trace(const EventTrace& trace, const TimeOrder& order) {
  for (const auto& [e, points] : trace.occurrences) {
    for (const auto& p : points) order.index_of(p);
  }
}

bool listed_at(const EventTrace& trace, const std::string& e, const std::string& p) {
  auto it = trace.occurrences.find(e);
  return it != trace.occurrences.end() && it->second.count(p) > 0;
}

}  // namespace

EventTrace saturate_trace(const EventTrace& trace, std::span<const EventRule> rules,
                          const TimeOrder& order) {
  check_trace(trace, order);
  EventTrace out = trace;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      for (const auto& p : covered_points(order, r.index)) {
        if (r.guard && !listed_at(out, *r.guard, p)) continue;
        if (out.occurrences[r.derived].insert(p).second) changed = true;
      }
    }
  }
  return out;
}

TimedSpace resolve_events(const TimedSpace& ts, const EventTrace& trace, const TimeOrder& order) {
  check_trace(trace, order);
  TimedSpace out = ts;
  out.pending.clear();
  for (const auto& g : ts.pending) {
    const auto points = covered_points(order, g.index);
    bool active = false;
    auto it = trace.occurrences.find(g.event);
    if (ts.mode == Mode::Over) {
      active = it == trace.occurrences.end() ||
               std::any_of(points.begin(), points.end(),
                           [&](const std::string& p) { return it->second.count(p) > 0; });
    } else {
      active = it != trace.occurrences.end() &&
               std::all_of(points.begin(), points.end(),
                           [&](const std::string& p) { return it->second.count(p) > 0; });
    }
    if (active) conjoin_into(out.entries, g.index, g.consequent);
  }
  return out;
}

namespace {

struct ChainContext {
  const EventTrace& trace;
  std::vector<std::string> seq;
  std::map<std::string, std::size_t, std::less<>> pos;
};

bool has_relative(const Term& t) {
  bool found = false;
  for_each_atom(t, [&](const Atom& a) {
    if (const auto* tp = a.get_if<TimePoint>()) found = found || tp->label.relative;
    if (const auto* ti = a.get_if<TimeInterval>()) {
      found = found || ti->from.relative || ti->to.relative;
    }
  });
  return found;
}

void relative_events(const Term& t, std::set<std::string>& out) {
  for_each_atom(t, [&](const Atom& a) {
    if (const auto* tp = a.get_if<TimePoint>(); tp && tp->label.relative) out.insert(tp->label.name);
    if (const auto* ti = a.get_if<TimeInterval>()) {
      if (ti->from.relative) out.insert(ti->from.name);
      if (ti->to.relative) out.insert(ti->to.name);
    }
  });
}

TimeLabel resolve_label(const TimeLabel& l, const std::map<std::string, std::size_t>& choice,
                        const ChainContext& ctx) {
  if (!l.relative) return l;
  const auto target = static_cast<std::int64_t>(choice.at(l.name)) + l.offset;
  if (target < 0 || target >= static_cast<std::int64_t>(ctx.seq.size())) {
    throw Error(ErrorCode::OffsetOutOfRange,
                l.name + (l.offset >= 0 ? "+" : "") + std::to_string(l.offset) + " leaves the chain");
  }
  return TimeLabel::absolute(ctx.seq[static_cast<std::size_t>(target)]);
}

Term substitute(const Term& t, const std::map<std::string, std::size_t>& choice,
                const ChainContext& ctx) {
  if (t.is_atom()) {
    if (const auto* tp = t.atom().get_if<TimePoint>(); tp && tp->label.relative) {
      return time_point(resolve_label(tp->label, choice, ctx));
    }
    if (const auto* ti = t.atom().get_if<TimeInterval>(); ti && (ti->from.relative || ti->to.relative)) {
      return time_interval(resolve_label(ti->from, choice, ctx), resolve_label(ti->to, choice, ctx));
    }
    return t;
  }
  if (!has_relative(t)) return t;
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(substitute(c, choice, ctx));
  return Term::make(t.kind(), std::move(kids));
}

// One copy of `unit` per combination of event occurrences.
Term expand_occurrences(const Term& unit, const Term& scope, const ChainContext& ctx) {
  std::set<std::string> events;
  relative_events(scope, events);
  std::vector<std::pair<std::string, std::vector<std::size_t>>> options;
  for (const auto& e : events) {
    std::vector<std::size_t> positions;
    if (auto it = ctx.trace.occurrences.find(e); it != ctx.trace.occurrences.end()) {
      for (const auto& p : it->second) positions.push_back(ctx.pos.at(p));
    }
    std::sort(positions.begin(), positions.end());
    if (positions.empty()) return make_true();  // the event never happens
    options.emplace_back(e, std::move(positions));
  }
  std::vector<Term> copies;
  std::vector<std::size_t> cursor(options.size(), 0);
  while (true) {
    std::map<std::string, std::size_t> choice;
    for (std::size_t i = 0; i < options.size(); ++i) choice[options[i].first] = options[i].second[cursor[i]];
    copies.push_back(substitute(unit, choice, ctx));
    std::size_t i = 0;
    for (; i < options.size(); ++i) {
      if (++cursor[i] < options[i].second.size()) break;
      cursor[i] = 0;
    }
    if (i == options.size()) break;
  }
  if (copies.size() == 1) return copies.front();
  return make_big_and(std::move(copies));
}

Term resolve_rec(const Term& t, const ChainContext& ctx) {
  if (!has_relative(t)) return t;
  if (t.kind() == TermKind::Implies && has_relative(t.child(0))) {
    Term cons = resolve_rec(t.child(1), ctx);
    return expand_occurrences(make_implies(t.child(0), cons), t.child(0), ctx);
  }
  if (t.is_atom()) return expand_occurrences(t, t, ctx);
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(resolve_rec(c, ctx));
  return Term::make(t.kind(), std::move(kids));
}

}  // namespace

Term resolve_event_relative(const Term& t, const EventTrace& trace, const TimeOrder& order) {
  if (!has_relative(t)) return t;
  ChainContext ctx{trace, order.chain_sequence(), {}};
  for (std::size_t i = 0; i < ctx.seq.size(); ++i) ctx.pos.emplace(ctx.seq[i], i);
  check_trace(trace, order);
  return resolve_rec(t, ctx);
}

// ---------------------------------------------------------------------------
// merge_intervals, geometrize

TimedSpace merge_intervals(const TimedSpace& ts, const TimeOrder& order,
                           std::span<const std::pair<std::string, std::string>> pairs) {
  TimedSpace out = ts;
  for (const auto& [a, b] : pairs) {
    const auto points = expand_interval(order, a, b);
    if (a == b) continue;  // the point entry already covers it
    std::vector<Term> parts;
    for (const auto& p : points) {
      if (auto it = ts.entries.find(TimeIndex::at(p)); it != ts.entries.end()) {
        parts.push_back(it->second);
      }
    }
    if (parts.empty()) continue;
    // Or is union under Over and intersection under Under.
    Term merged = parts.size() == 1   ? parts.front()
                  : parts.size() == 2 ? make_or(parts[0], parts[1])
                                      : make_big_or(std::move(parts));
    out.entries.insert_or_assign(TimeIndex::between(a, b), std::move(merged));
  }
  return out;
}

namespace {

Atom geometrize_atom(const Atom& a, const NodeGeometry& geometry) {
  if (const auto* n = a.get_if<OccupyNode>()) {
    auto it = geometry.find(n->node);
    if (it == geometry.end()) throw Error(ErrorCode::UnmappedNode, n->node);
    const Box& b = it->second;
    return Atom{OccupyBox2D{b.lo[0], b.lo[1], b.hi[0], b.hi[1]}};
  }
  if (const auto* o = a.get_if<Owned>(); o && o->inner && o->inner->is<OccupyNode>()) {
    return owned_atom(o->owner, geometrize_atom(*o->inner, geometry));
  }
  return a;
}

bool has_nodes(const Term& t) {
  bool found = false;
  for_each_atom(t, [&](const Atom& a) { found = found || a.unowned().is<OccupyNode>(); });
  return found;
}

}  // namespace

Term geometrize(const Term& f, const NodeGeometry& geometry) {
  if (!has_nodes(f)) return f;
  if (f.is_atom()) return make_atom(geometrize_atom(f.atom(), geometry));
  std::vector<Term> kids;
  for (const auto& c : f.children()) kids.push_back(geometrize(c, geometry));
  return Term::make(f.kind(), std::move(kids));
}

TimedSpace geometrize(const TimedSpace& ts, const NodeGeometry& geometry) {
  TimedSpace out = ts;
  for (auto& [idx, f] : out.entries) f = geometrize(f, geometry);
  for (auto& g : out.pending) g.consequent = geometrize(g.consequent, geometry);
  return out;
}

// ---------------------------------------------------------------------------
// spatial_region

namespace {

int atom_dim(const Atom& a) {
  const Atom& u = a.unowned();
  if (u.is<OccupyPoint3D>() || u.is<OccupyBox3D>() || u.is<OccupySegment3D>()) return 3;
  if (u.is_spatial()) return 2;
  return 0;
}

Box inflate_box(Box b, Coord r, int dim) {
  for (int k = 0; k < dim; ++k) {
    b.lo[k] -= r;
    b.hi[k] += r;
  }
  return b;
}

Box span_box(const std::array<Coord, 3>& p, const std::array<Coord, 3>& q) {
  Box b;
  for (int k = 0; k < 3; ++k) {
    b.lo[k] = std::min(p[k], q[k]);
    b.hi[k] = std::max(p[k], q[k]);
  }
  return b;
}

// Extent of a segment capsule. Over: capsule bounding box. Under: the segment
// itself when it is axis-aligned, otherwise only its two endpoints (a
// diagonal segment's bounding box leaves the capsule).
std::vector<Box> segment_extent(const std::array<Coord, 3>& p, const std::array<Coord, 3>& q,
                                Coord radius, int dim, Mode mode) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative segment radius");
  Box bb = span_box(p, q);
  if (mode == Mode::Over) return {inflate_box(bb, radius, dim)};
  int spread_axes = 0;
  for (int k = 0; k < 3; ++k) spread_axes += bb.lo[k] != bb.hi[k] ? 1 : 0;
  if (spread_axes <= 1) return {bb};
  return {Box{p, p}, Box{q, q}};
}

std::vector<Box> atom_extent(const Atom& atom, int dim, Mode mode) {
  const Atom& a = atom.unowned();
  const int d = atom_dim(a);
  if (d != 0 && d != dim) {
    throw Error(ErrorCode::DimensionMismatch, "atom dimension differs from formula dimension");
  }
  auto ordered = [](const Box& b) {
    if (!b.ordered()) throw Error(ErrorCode::BoxUnordered, "inverted box atom");
    return std::vector<Box>{b};
  };
  if (const auto* v = a.get_if<OccupyPoint2D>()) return {Box::point(v->x, v->y)};
  if (const auto* v = a.get_if<OccupyBox2D>()) return ordered(Box::make2(v->x1, v->y1, v->x2, v->y2));
  if (const auto* v = a.get_if<OccupySegment2D>()) {
    return segment_extent({v->x1, v->y1, 0}, {v->x2, v->y2, 0}, v->radius, 2, mode);
  }
  if (const auto* v = a.get_if<OccupyPoint3D>()) return {Box::point(v->x, v->y, v->z)};
  if (const auto* v = a.get_if<OccupyBox3D>()) {
    return ordered(Box::make3(v->x1, v->y1, v->z1, v->x2, v->y2, v->z2));
  }
  if (const auto* v = a.get_if<OccupySegment3D>()) {
    return segment_extent({v->x1, v->y1, v->z1}, {v->x2, v->y2, v->z2}, v->radius, 3, mode);
  }
  if (const auto* v = a.get_if<OccupyNode>()) throw Error(ErrorCode::NodeNotGeometrized, v->node);
  if (a.is<OccupyBoxSym>()) throw Error(ErrorCode::UngroundedSymbol, "symbolic box");
  throw Error(ErrorCode::InvalidArgument, "time or event atom inside a spatial formula");
}

using AtomFilter = std::function<bool(const Atom&)>;

// nullopt means the formula is unsatisfiable (contains a False that is not
// excused by a disjunction), which contributes no space.
std::optional<Region> eval_region(const Term& f, Mode mode, int dim, const AtomFilter* filter) {
  switch (f.kind()) {
    case TermKind::True:
      return Region(dim);
    case TermKind::False:
      return std::nullopt;
    case TermKind::Atom: {
      auto boxes = atom_extent(f.atom(), dim, mode);
      if (filter && !(*filter)(f.atom())) return Region(dim);
      return Region(dim, std::move(boxes));
    }
    case TermKind::And:
    case TermKind::BigAnd: {
      std::vector<Box> all;
      bool feasible = true;
      for (const auto& c : f.children()) {
        auto r = eval_region(c, mode, dim, filter);
        if (!r) {
          feasible = false;
          continue;  // keep evaluating so errors surface deterministically
        }
        all.insert(all.end(), r->boxes().begin(), r->boxes().end());
      }
      if (!feasible) return std::nullopt;
      return make_canonical(dim, std::move(all));
    }
    case TermKind::Or:
    case TermKind::BigOr: {
      std::optional<Region> acc;
      for (const auto& c : f.children()) {
        auto r = eval_region(c, mode, dim, filter);
        if (!r) continue;
        if (!acc) {
          acc = std::move(r);
        } else if (mode == Mode::Over) {
          acc = region_union(*acc, *r);
        } else {
          acc = region_intersection(*acc, *r);
        }
      }
      return acc;
    }
    case TermKind::Not:
    case TermKind::Implies:
      throw Error(ErrorCode::NegationUnsupported, "negation in a spatial formula");
  }
  return Region(dim);
}

}  // namespace

int formula_dim(const Term& f) {
  int dim = 0;
  for_each_atom(f, [&](const Atom& a) {
    const int d = atom_dim(a);
    if (d == 0) return;
    if (dim != 0 && d != dim) throw Error(ErrorCode::DimensionMismatch, "2D and 3D atoms mixed");
    dim = d;
  });
  return dim == 0 ? 2 : dim;
}

int space_dim(const TimedSpace& ts) {
  int dim = 0;
  auto merge = [&](const Term& f) {
    bool any = false;
    for_each_atom(f, [&](const Atom& a) { any = any || atom_dim(a) != 0; });
    if (!any) return;
    const int d = formula_dim(f);
    if (dim != 0 && d != dim) throw Error(ErrorCode::DimensionMismatch, ts.component);
    dim = d;
  };
  for (const auto& [idx, f] : ts.entries) merge(f);
  for (const auto& g : ts.pending) merge(g.consequent);
  return dim == 0 ? 2 : dim;
}

Region spatial_region(const Term& f, Mode mode) { return spatial_region(f, mode, formula_dim(f)); }

Region spatial_region(const Term& f, Mode mode, int dim) {
  auto r = eval_region(f, mode, dim, nullptr);
  return r ? std::move(*r) : Region(dim);
}

std::map<std::string, Region> owned_regions(const Term& f, Mode mode, int dim,
                                            const std::string& default_owner) {
  std::set<std::string> owners;
  for_each_atom(f, [&](const Atom& a) {
    if (!a.is_spatial()) return;
    const auto* o = a.owner();
    owners.insert(o ? *o : default_owner);
  });
  std::map<std::string, Region> out;
  if (owners.size() <= 1) {
    Region r = spatial_region(f, mode, dim);
    if (!r.empty()) out.emplace(owners.empty() ? default_owner : *owners.begin(), std::move(r));
    return out;
  }
  for (const auto& owner : owners) {
    AtomFilter keep = [&](const Atom& a) {
      const auto* o = a.owner();
      return (o ? *o : default_owner) == owner;
    };
    auto r = eval_region(f, mode, dim, &keep);
    if (r && !r->empty()) out.emplace(owner, std::move(*r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// box_abstract, ownership, aggregate

namespace {

Atom box_atom(const Box& b, int dim) {
  if (dim == 3) return Atom{OccupyBox3D{b.lo[0], b.lo[1], b.lo[2], b.hi[0], b.hi[1], b.hi[2]}};
  return Atom{OccupyBox2D{b.lo[0], b.lo[1], b.hi[0], b.hi[1]}};
}

const std::string kUnowned = "\x01unowned";

}  // namespace

TimedSpace box_abstract(const TimedSpace& ts) {
  if (ts.mode != Mode::Over) {
    throw Error(ErrorCode::ModeMismatch, "box abstraction over-approximates; space is Under");
  }
  const int dim = space_dim(ts);
  TimedSpace out = ts;
  for (auto& [idx, f] : out.entries) {
    auto per_owner = owned_regions(f, Mode::Over, dim, kUnowned);
    if (per_owner.empty()) continue;
    std::vector<Term> boxes;
    for (const auto& [owner, region] : per_owner) {
      Atom a = box_atom(*bounding_box(region), dim);
      boxes.push_back(make_atom(owner == kUnowned ? std::move(a) : owned_atom(owner, std::move(a))));
    }
    f = boxes.size() == 1 ? boxes.front() : make_big_and(std::move(boxes));
  }
  return out;
}

Term assign_owner(const Term& f, const std::string& owner) {
  if (f.is_atom()) {
    const Atom& a = f.atom();
    if (!a.is_spatial()) return f;
    if (const auto* o = a.owner()) {
      if (*o != owner) throw Error(ErrorCode::AlreadyOwned, *o);
      return f;
    }
    return make_atom(owned_atom(owner, a));
  }
  std::vector<Term> kids;
  for (const auto& c : f.children()) kids.push_back(assign_owner(c, owner));
  return Term::make(f.kind(), std::move(kids));
}

Term strip_owner(const Term& f) {
  if (f.is_atom()) {
    if (f.atom().owner()) return make_atom(f.atom().unowned());
    return f;
  }
  std::vector<Term> kids;
  for (const auto& c : f.children()) kids.push_back(strip_owner(c));
  return Term::make(f.kind(), std::move(kids));
}

TimedSpace aggregate(std::span<const TimedSpace> parts, std::string name) {
  TimedSpace out;
  out.component = std::move(name);
  if (parts.empty()) return out;
  out.classification = parts.front().classification;
  out.mode = parts.front().mode;
  for (const auto& p : parts) {
    if (p.mode != out.mode) throw Error(ErrorCode::ModeMismatch, p.component);
    if (p.classification != out.classification) {
      throw Error(ErrorCode::ClassificationMismatch, p.component);
    }
  }
  for (const auto& p : parts) {
    for (const auto& [idx, f] : p.entries) conjoin_into(out.entries, idx, f);
    out.pending.insert(out.pending.end(), p.pending.begin(), p.pending.end());
    out.event_rules.insert(out.event_rules.end(), p.event_rules.begin(), p.event_rules.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// automata

std::vector<std::set<std::string>> automaton_frontiers(const Automaton& a, int horizon) {
  if (horizon < 1) throw Error(ErrorCode::ParameterOutOfRange, "horizon must be >= 1");
  if (a.initial.empty()) throw Error(ErrorCode::EmptyInitial, "automaton has no initial state");
  for (const auto& s : a.initial) {
    if (!a.states.count(s)) throw Error(ErrorCode::InvalidAutomaton, "initial state " + s);
  }
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [from, to] : a.transitions) {
    if (!a.states.count(from) || !a.states.count(to)) {
      throw Error(ErrorCode::InvalidAutomaton, "transition " + from + " -> " + to);
    }
    succ[from].push_back(to);
  }
  for (const auto& s : a.states) {
    if (!a.labels.count(s)) throw Error(ErrorCode::InvalidAutomaton, "unlabeled state " + s);
  }
  std::vector<std::set<std::string>> frontiers;
  frontiers.push_back(a.initial);
  for (int k = 1; k < horizon; ++k) {
    std::set<std::string> next;
    for (const auto& s : frontiers.back()) {
      auto it = succ.find(s);
      if (it == succ.end()) {
        next.insert(s);  // sinks loop
      } else {
        next.insert(it->second.begin(), it->second.end());
      }
    }
    frontiers.push_back(std::move(next));
  }
  return frontiers;
}

Unfolding unfold_automaton(const Automaton& a, int horizon, const std::string& prefix) {
  auto frontiers = automaton_frontiers(a, horizon);
  TimeOrder order = TimeOrder::chain(static_cast<std::size_t>(horizon), prefix);
  std::vector<Term> steps;
  for (int k = 0; k < horizon; ++k) {
    std::vector<Term> labels;
    for (const auto& s : frontiers[static_cast<std::size_t>(k)]) labels.push_back(a.labels.at(s));
    Term rhs = labels.size() == 1 ? labels.front() : make_big_or(std::move(labels));
    steps.push_back(make_implies(time_point(order.points()[static_cast<std::size_t>(k)]), rhs));
  }
  return {make_big_and(std::move(steps)), std::move(order)};
}

}  // namespace spacebound
