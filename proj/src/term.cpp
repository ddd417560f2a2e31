#include "spacebound/term.hpp"

#include <utility>

#include "spacebound/error.hpp"

namespace spacebound {

bool operator==(const Owned& a, const Owned& b) {
  if (a.owner != b.owner) return false;
  if (a.inner == b.inner) return true;
  if (!a.inner || !b.inner) return false;
  return *a.inner == *b.inner;
}

const std::string* Atom::owner() const {
  if (const auto* o = get_if<Owned>()) return &o->owner;
  return nullptr;
}

const Atom& Atom::unowned() const {
  if (const auto* o = get_if<Owned>(); o && o->inner) return o->inner->unowned();
  return *this;
}

Term::Term() : Term(make(TermKind::True, {})) {}

Term Term::make(TermKind kind, std::vector<Term> children) {
  std::size_t arity = children.size();
  bool ok = true;
  switch (kind) {
    case TermKind::And:
    case TermKind::Or:
    case TermKind::Implies: ok = arity == 2; break;
    case TermKind::Not: ok = arity == 1; break;
    case TermKind::True:
    case TermKind::False: ok = arity == 0; break;
    case TermKind::BigAnd:
    case TermKind::BigOr: break;  // emptiness is a validate() violation
    case TermKind::Atom: ok = false; break;
  }
  if (!ok) throw Error(ErrorCode::InvalidArgument, "wrong arity for connective");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return Term(std::move(n));
}

Term Term::make_atom(Atom atom) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Atom;
  n->atom = std::move(atom);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Atom) return a.atom() == b.atom();
  auto ca = a.children();
  auto cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!(ca[i] == cb[i])) return false;
  }
  return true;
}

Term make_and(Term a, Term b) { return Term::make(TermKind::And, {std::move(a), std::move(b)}); }
Term make_or(Term a, Term b) { return Term::make(TermKind::Or, {std::move(a), std::move(b)}); }
Term make_not(Term a) { return Term::make(TermKind::Not, {std::move(a)}); }
Term make_implies(Term a, Term b) {
  return Term::make(TermKind::Implies, {std::move(a), std::move(b)});
}
Term make_big_and(std::vector<Term> parts) { return Term::make(TermKind::BigAnd, std::move(parts)); }
Term make_big_or(std::vector<Term> parts) { return Term::make(TermKind::BigOr, std::move(parts)); }
Term make_true() { return Term::make(TermKind::True, {}); }
Term make_false() { return Term::make(TermKind::False, {}); }
Term make_atom(Atom a) { return Term::make_atom(std::move(a)); }

Term time_point(std::string name) { return time_point(TimeLabel::absolute(std::move(name))); }
Term time_point(TimeLabel label) { return make_atom(Atom{TimePoint{std::move(label)}}); }
Term time_interval(std::string from, std::string to) {
  return time_interval(TimeLabel::absolute(std::move(from)), TimeLabel::absolute(std::move(to)));
}
Term time_interval(TimeLabel from, TimeLabel to) {
  return make_atom(Atom{TimeInterval{std::move(from), std::move(to)}});
}
Term event(std::string name) { return make_atom(Atom{Event{std::move(name)}}); }
Term point2d(Coord x, Coord y) { return make_atom(Atom{OccupyPoint2D{x, y}}); }
Term box2d(Coord x1, Coord y1, Coord x2, Coord y2) {
  return make_atom(Atom{OccupyBox2D{x1, y1, x2, y2}});
}
Term segment2d(Coord x1, Coord y1, Coord x2, Coord y2, Coord radius) {
  return make_atom(Atom{OccupySegment2D{x1, y1, x2, y2, radius}});
}
Term point3d(Coord x, Coord y, Coord z) { return make_atom(Atom{OccupyPoint3D{x, y, z}}); }
Term box3d(Coord x1, Coord y1, Coord z1, Coord x2, Coord y2, Coord z2) {
  return make_atom(Atom{OccupyBox3D{x1, y1, z1, x2, y2, z2}});
}
Term segment3d(Coord x1, Coord y1, Coord z1, Coord x2, Coord y2, Coord z2, Coord radius) {
  return make_atom(Atom{OccupySegment3D{x1, y1, z1, x2, y2, z2, radius}});
}
Term node(std::string name) { return make_atom(Atom{OccupyNode{std::move(name)}}); }
Term box_sym(SymInt x1, SymInt y1, SymInt x2, SymInt y2) {
  return make_atom(Atom{OccupyBoxSym{std::move(x1), std::move(y1), std::move(x2), std::move(y2)}});
}

Atom owned_atom(std::string owner, Atom inner) {
  return Atom{Owned{std::move(owner), std::make_shared<const Atom>(std::move(inner))}};
}

Term owned(std::string owner, const Term& inner) {
  if (!inner.is_atom()) throw Error(ErrorCode::InvalidArgument, "ownership wraps atoms only");
  return make_atom(owned_atom(std::move(owner), inner.atom()));
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::BoxUnordered: return "BoxUnordered";
    case ViolationKind::EmptyBigConnective: return "EmptyBigConnective";
    case ViolationKind::NegativeRadius: return "NegativeRadius";
    case ViolationKind::NestedOwnership: return "NestedOwnership";
    case ViolationKind::OwnedNonSpatial: return "OwnedNonSpatial";
    case ViolationKind::EmptyName: return "EmptyName";
  }
  return "Unknown";
}

namespace {

bool label_ok(const TimeLabel& l) { return !l.name.empty(); }

void validate_atom(const Atom& a, const std::string& path, bool inside_owned,
                   std::vector<Violation>& out) {
  auto flag = [&](ViolationKind k) { out.push_back({k, path}); };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TimePoint>) {
          if (!label_ok(v.label)) flag(ViolationKind::EmptyName);
        } else if constexpr (std::is_same_v<T, TimeInterval>) {
          if (!label_ok(v.from) || !label_ok(v.to)) flag(ViolationKind::EmptyName);
        } else if constexpr (std::is_same_v<T, Event>) {
          if (v.name.empty()) flag(ViolationKind::EmptyName);
        } else if constexpr (std::is_same_v<T, OccupyBox2D>) {
          if (v.x1 > v.x2 || v.y1 > v.y2) flag(ViolationKind::BoxUnordered);
        } else if constexpr (std::is_same_v<T, OccupyBox3D>) {
          if (v.x1 > v.x2 || v.y1 > v.y2 || v.z1 > v.z2) flag(ViolationKind::BoxUnordered);
        } else if constexpr (std::is_same_v<T, OccupySegment2D> ||
                             std::is_same_v<T, OccupySegment3D>) {
          if (v.radius < 0) flag(ViolationKind::NegativeRadius);
        } else if constexpr (std::is_same_v<T, OccupyNode>) {
          if (v.node.empty()) flag(ViolationKind::EmptyName);
        } else if constexpr (std::is_same_v<T, OccupyBoxSym>) {
          // Only decidable once every coordinate is a constant.
          std::set<std::string> vars;
          collect_variables(v.x1, vars);
          collect_variables(v.y1, vars);
          collect_variables(v.x2, vars);
          collect_variables(v.y2, vars);
          if (vars.empty()) {
            const Env none;
            if (eval_symint(v.x1, none) > eval_symint(v.x2, none) ||
                eval_symint(v.y1, none) > eval_symint(v.y2, none)) {
              flag(ViolationKind::BoxUnordered);
            }
          }
        } else if constexpr (std::is_same_v<T, Owned>) {
          if (v.owner.empty()) flag(ViolationKind::EmptyName);
          if (inside_owned) flag(ViolationKind::NestedOwnership);
          if (!v.inner) {
            flag(ViolationKind::OwnedNonSpatial);
          } else {
            if (!v.inner->is_spatial()) flag(ViolationKind::OwnedNonSpatial);
            validate_atom(*v.inner, path, true, out);
          }
        }
      },
      a.value);
}

void validate_rec(const Term& t, const std::string& path, std::vector<Violation>& out) {
  if (t.is_atom()) {
    validate_atom(t.atom(), path, false, out);
    return;
  }
  if ((t.kind() == TermKind::BigAnd || t.kind() == TermKind::BigOr) && t.children().empty()) {
    out.push_back({ViolationKind::EmptyBigConnective, path});
  }
  auto kids = t.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    validate_rec(kids[i], path + "." + std::to_string(i), out);
  }
}

Atom ground_atom(const Atom& a, const Env& env, bool& changed) {
  if (const auto* sym = a.get_if<OccupyBoxSym>()) {
    changed = true;
    OccupyBox2D b{eval_symint(sym->x1, env), eval_symint(sym->y1, env), eval_symint(sym->x2, env),
                  eval_symint(sym->y2, env)};
    if (b.x1 > b.x2 || b.y1 > b.y2) {
      throw Error(ErrorCode::BoxUnordered, "grounded box (" + std::to_string(b.x1) + "," +
                                               std::to_string(b.y1) + "," + std::to_string(b.x2) +
                                               "," + std::to_string(b.y2) + ")");
    }
    return Atom{b};
  }
  if (const auto* own = a.get_if<Owned>(); own && own->inner) {
    bool inner_changed = false;
    Atom g = ground_atom(*own->inner, env, inner_changed);
    if (!inner_changed) return a;
    changed = true;
    return owned_atom(own->owner, std::move(g));
  }
  return a;
}

Term ground_rec(const Term& t, const Env& env) {
  if (t.is_atom()) {
    bool changed = false;
    Atom g = ground_atom(t.atom(), env, changed);
    return changed ? make_atom(std::move(g)) : t;
  }
  auto kids = t.children();
  std::vector<Term> out;
  out.reserve(kids.size());
  bool changed = false;
  for (const auto& c : kids) {
    out.push_back(ground_rec(c, env));
    changed = changed || !out.back().shares(c);
  }
  if (!changed) return t;
  return Term::make(t.kind(), std::move(out));
}

}  // namespace

std::vector<Violation> validate(const Term& term) {
  std::vector<Violation> out;
  validate_rec(term, "root", out);
  return out;
}

Term ground(const Term& term, const Env& env) { return ground_rec(term, env); }

bool has_symbolic(const Term& term) {
  bool found = false;
  for_each_atom(term, [&](const Atom& a) {
    if (a.unowned().is<OccupyBoxSym>()) found = true;
  });
  return found;
}

std::set<std::string> symbolic_variables(const Term& term) {
  std::set<std::string> vars;
  for_each_atom(term, [&](const Atom& a) {
    if (const auto* s = a.unowned().get_if<OccupyBoxSym>()) {
      collect_variables(s->x1, vars);
      collect_variables(s->y1, vars);
      collect_variables(s->x2, vars);
      collect_variables(s->y2, vars);
    }
  });
  return vars;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& c : t.children()) n += term_size(c);
  return n;
}

}  // namespace spacebound
