#include "spacebound/dsl.hpp"

#include <charconv>
#include <set>

#include "spacebound/error.hpp"

namespace spacebound {

namespace {

constexpr std::size_t kWidth = 80;

[[noreturn]] void fail_at(const SExpr& e, const std::string& expected) {
  throw SyntaxError(e.line, e.col, expected);
}

bool looks_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::int64_t int_of(const SExpr& e) {
  if (!e.is_symbol() || !looks_integer(e.text)) fail_at(e, "integer");
  std::int64_t v = 0;
  const auto* first = e.text.data();
  const auto* last = first + e.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail_at(e, "64-bit integer");
  return v;
}

std::string name_of(const SExpr& e) {
  if (e.is_string()) return e.text;
  if (e.is_symbol() && !looks_integer(e.text)) return e.text;
  fail_at(e, "name");
}

const SExpr& head_list(const SExpr& e, const std::string& expected) {
  if (!e.is_list() || e.items.empty() || !e.items.front().is_symbol()) fail_at(e, expected);
  return e;
}

void arity(const SExpr& e, std::size_t n, const std::string& what) {
  if (e.items.size() != n + 1) {
    const SExpr& at = e.items.size() > n + 1 ? e.items[n + 1] : e;
    fail_at(at, what + " with " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  }
}

TimeLabel label_of(const SExpr& e) {
  if (e.has_head("rel")) {
    arity(e, 2, "(rel EVENT OFFSET)");
    return TimeLabel::event_relative(name_of(e.items[1]), int_of(e.items[2]));
  }
  return TimeLabel::absolute(name_of(e));
}

SymInt sym_of(const SExpr& e) {
  if (e.is_symbol() && looks_integer(e.text)) return SymInt::constant(int_of(e));
  if (!e.is_list()) return SymInt::var(name_of(e));
  if (e.has_head("+") || e.has_head("-") || e.has_head("*")) {
    arity(e, 2, "(" + e.items[0].text + " sym sym)");
    SymInt a = sym_of(e.items[1]);
    SymInt b = sym_of(e.items[2]);
    if (e.items[0].text == "+") return SymInt::add(a, b);
    if (e.items[0].text == "-") return SymInt::sub(a, b);
    return SymInt::mul(a, b);
  }
  fail_at(e, "symbolic integer");
}

std::vector<Coord> ints(const SExpr& e, std::size_t n, const std::string& what) {
  arity(e, n, what);
  std::vector<Coord> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(int_of(e.items[i]));
  return v;
}

std::optional<Atom> atom_of(const SExpr& e) {
  const std::string& h = e.items.front().text;
  if (h == "time") {
    arity(e, 1, "(time NAME)");
    return Atom{TimePoint{label_of(e.items[1])}};
  }
  if (h == "interval") {
    arity(e, 2, "(interval NAME NAME)");
    return Atom{TimeInterval{label_of(e.items[1]), label_of(e.items[2])}};
  }
  if (h == "event") {
    arity(e, 1, "(event NAME)");
    return Atom{Event{name_of(e.items[1])}};
  }
  if (h == "point2d") {
    auto v = ints(e, 2, "(point2d x y)");
    return Atom{OccupyPoint2D{v[0], v[1]}};
  }
  if (h == "box2d") {
    auto v = ints(e, 4, "(box2d x1 y1 x2 y2)");
    return Atom{OccupyBox2D{v[0], v[1], v[2], v[3]}};
  }
  if (h == "seg2d") {
    auto v = ints(e, 5, "(seg2d x1 y1 x2 y2 r)");
    return Atom{OccupySegment2D{v[0], v[1], v[2], v[3], v[4]}};
  }
  if (h == "point3d") {
    auto v = ints(e, 3, "(point3d x y z)");
    return Atom{OccupyPoint3D{v[0], v[1], v[2]}};
  }
  if (h == "box3d") {
    auto v = ints(e, 6, "(box3d x1 y1 z1 x2 y2 z2)");
    return Atom{OccupyBox3D{v[0], v[1], v[2], v[3], v[4], v[5]}};
  }
  if (h == "seg3d") {
    auto v = ints(e, 7, "(seg3d x1 y1 z1 x2 y2 z2 r)");
    return Atom{OccupySegment3D{v[0], v[1], v[2], v[3], v[4], v[5], v[6]}};
  }
  if (h == "node") {
    arity(e, 1, "(node NAME)");
    return Atom{OccupyNode{name_of(e.items[1])}};
  }
  if (h == "boxsym") {
    arity(e, 4, "(boxsym sym sym sym sym)");
    return Atom{OccupyBoxSym{sym_of(e.items[1]), sym_of(e.items[2]), sym_of(e.items[3]), sym_of(e.items[4])}};
  }
  if (h == "own") {
    arity(e, 2, "(own NAME atom)");
    const SExpr& inner = head_list(e.items[2], "spatial atom");
    auto a = atom_of(inner);
    if (!a || !a->is_spatial() || a->is<Owned>()) fail_at(inner, "spatial atom");
    return owned_atom(name_of(e.items[1]), std::move(*a));
  }
  return std::nullopt;
}

// ---- printing ----

std::string print_label(const TimeLabel& l) {
  if (!l.relative) return print_name(l.name);
  return "(rel " + print_name(l.name) + " " + std::to_string(l.offset) + ")";
}

std::string print_sym(const SymInt& s) {
  switch (s.kind()) {
    case SymInt::Kind::Const:
      return std::to_string(s.value());
    case SymInt::Kind::Var:
      return print_name(s.name());
    case SymInt::Kind::Add:
      return "(+ " + print_sym(s.lhs()) + " " + print_sym(s.rhs()) + ")";
    case SymInt::Kind::Sub:
      return "(- " + print_sym(s.lhs()) + " " + print_sym(s.rhs()) + ")";
    case SymInt::Kind::Mul:
      return "(* " + print_sym(s.lhs()) + " " + print_sym(s.rhs()) + ")";
  }
  return "0";
}

template <class... Ts>
std::string nums(const char* head, Ts... v) {
  std::string s = std::string("(") + head;
  ((s += " " + std::to_string(v)), ...);
  return s + ")";
}

std::string print_atom(const Atom& a) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TimePoint>) {
          return "(time " + print_label(v.label) + ")";
        } else if constexpr (std::is_same_v<T, TimeInterval>) {
          return "(interval " + print_label(v.from) + " " + print_label(v.to) + ")";
        } else if constexpr (std::is_same_v<T, Event>) {
          return "(event " + print_name(v.name) + ")";
        } else if constexpr (std::is_same_v<T, OccupyPoint2D>) {
          return nums("point2d", v.x, v.y);
        } else if constexpr (std::is_same_v<T, OccupyBox2D>) {
          return nums("box2d", v.x1, v.y1, v.x2, v.y2);
        } else if constexpr (std::is_same_v<T, OccupySegment2D>) {
          return nums("seg2d", v.x1, v.y1, v.x2, v.y2, v.radius);
        } else if constexpr (std::is_same_v<T, OccupyPoint3D>) {
          return nums("point3d", v.x, v.y, v.z);
        } else if constexpr (std::is_same_v<T, OccupyBox3D>) {
          return nums("box3d", v.x1, v.y1, v.z1, v.x2, v.y2, v.z2);
        } else if constexpr (std::is_same_v<T, OccupySegment3D>) {
          return nums("seg3d", v.x1, v.y1, v.z1, v.x2, v.y2, v.z2, v.radius);
        } else if constexpr (std::is_same_v<T, OccupyNode>) {
          return "(node " + print_name(v.node) + ")";
        } else if constexpr (std::is_same_v<T, OccupyBoxSym>) {
          return "(boxsym " + print_sym(v.x1) + " " + print_sym(v.y1) + " " + print_sym(v.x2) + " " +
                 print_sym(v.y2) + ")";
        } else {
          return "(own " + print_name(v.owner) + " " + print_atom(*v.inner) + ")";
        }
      },
      a.value);
}

const char* head_of(TermKind k) {
  switch (k) {
    case TermKind::And: return "and";
    case TermKind::Or: return "or";
    case TermKind::Not: return "not";
    case TermKind::Implies: return "implies";
    case TermKind::BigAnd: return "bigand";
    case TermKind::BigOr: return "bigor";
    case TermKind::True: return "true";
    case TermKind::False: return "false";
    case TermKind::Atom: return "atom";
  }
  return "?";
}

std::string flat(const Term& t) {
  if (t.is_atom()) return print_atom(t.atom());
  std::string s = std::string("(") + head_of(t.kind());
  for (const auto& c : t.children()) s += " " + flat(c);
  return s + ")";
}

std::string layout(const Term& t, std::size_t indent) {
  std::string s = flat(t);
  if (t.is_atom() || t.children().empty() || indent + s.size() <= kWidth) return s;
  std::string out = std::string("(") + head_of(t.kind());
  const std::string pad(indent + 2, ' ');
  for (const auto& c : t.children()) out += "\n" + pad + layout(c, indent + 2);
  return out + ")";
}

std::string print_box_coords(const Box& b) {
  if (b.lo[2] == 0 && b.hi[2] == 0) {
    return std::to_string(b.lo[0]) + " " + std::to_string(b.lo[1]) + " " + std::to_string(b.hi[0]) + " " +
           std::to_string(b.hi[1]);
  }
  return std::to_string(b.lo[0]) + " " + std::to_string(b.lo[1]) + " " + std::to_string(b.lo[2]) + " " +
         std::to_string(b.hi[0]) + " " + std::to_string(b.hi[1]) + " " + std::to_string(b.hi[2]);
}

// ---- definitions ----

TimeOrder order_of(const SExpr& e) {
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& part = head_list(e.items[i], "(points ...) or (edges ...)");
    if (part.has_head("points")) {
      for (std::size_t j = 1; j < part.items.size(); ++j) points.push_back(name_of(part.items[j]));
    } else if (part.has_head("edges")) {
      for (std::size_t j = 1; j < part.items.size(); ++j) {
        const SExpr& edge = part.items[j];
        if (!edge.is_list() || edge.items.size() != 2) fail_at(edge, "(FROM TO)");
        edges.emplace_back(name_of(edge.items[0]), name_of(edge.items[1]));
      }
    } else {
      fail_at(part, "(points ...) or (edges ...)");
    }
  }
  return TimeOrder(std::move(points), std::move(edges));
}

EventTrace trace_of(const SExpr& e) {
  EventTrace tr;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& entry = e.items[i];
    if (!entry.is_list() || entry.items.empty()) fail_at(entry, "(EVENT POINT...)");
    auto& points = tr.occurrences[name_of(entry.items[0])];
    for (std::size_t j = 1; j < entry.items.size(); ++j) points.insert(name_of(entry.items[j]));
  }
  return tr;
}

NodeGeometry geometry_of(const SExpr& e) {
  NodeGeometry geo;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& entry = e.items[i];
    if (!entry.is_list() || (entry.items.size() != 5 && entry.items.size() != 7)) {
      fail_at(entry, "(NODE x1 y1 x2 y2) or (NODE x1 y1 z1 x2 y2 z2)");
    }
    std::vector<Coord> v;
    for (std::size_t j = 1; j < entry.items.size(); ++j) v.push_back(int_of(entry.items[j]));
    Box b = v.size() == 4 ? Box::make2(v[0], v[1], v[2], v[3]) : Box::make3(v[0], v[1], v[2], v[3], v[4], v[5]);
    if (!b.ordered()) fail_at(entry, "ordered box corners");
    if (!geo.emplace(name_of(entry.items[0]), b).second) {
      throw Error(ErrorCode::DuplicateName, "node " + name_of(entry.items[0]));
    }
  }
  return geo;
}

Automaton automaton_of(const SExpr& e) {
  Automaton a;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& part = head_list(e.items[i], "automaton section");
    const std::string& h = part.items[0].text;
    for (std::size_t j = 1; j < part.items.size(); ++j) {
      const SExpr& item = part.items[j];
      if (h == "states") {
        a.states.insert(name_of(item));
      } else if (h == "initial") {
        a.initial.insert(name_of(item));
      } else if (h == "transitions") {
        if (!item.is_list() || item.items.size() != 2) fail_at(item, "(FROM TO)");
        a.transitions.emplace(name_of(item.items[0]), name_of(item.items[1]));
      } else if (h == "labels") {
        if (!item.is_list() || item.items.size() != 2) fail_at(item, "(STATE term)");
        a.labels.insert_or_assign(name_of(item.items[0]), term_from_sexpr(item.items[1]));
      } else {
        fail_at(part, "(states ...), (initial ...), (transitions ...) or (labels ...)");
      }
    }
  }
  return a;
}

std::string names_line(const char* head, const std::vector<std::string>& names) {
  std::string s = std::string("(") + head;
  for (const auto& n : names) s += " " + print_name(n);
  return s + ")";
}

std::string print_definition(const Definition& d) {
  const std::string name = print_name(d.name);
  return std::visit(
      [&](const auto& body) -> std::string {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Term>) {
          return "(term " + name + "\n  " + layout(body, 2) + ")";
        } else if constexpr (std::is_same_v<T, TimeOrder>) {
          std::string s = "(timeorder " + name + "\n  " + names_line("points", body.points()) + "\n  (edges";
          for (const auto& [a, b] : body.edges()) s += " (" + print_name(a) + " " + print_name(b) + ")";
          return s + "))";
        } else if constexpr (std::is_same_v<T, EventTrace>) {
          std::string s = "(trace " + name;
          for (const auto& [ev, points] : body.occurrences) {
            s += "\n  (" + print_name(ev);
            for (const auto& p : points) s += " " + print_name(p);
            s += ")";
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, NodeGeometry>) {
          std::string s = "(geometry " + name;
          for (const auto& [n, b] : body) s += "\n  (" + print_name(n) + " " + print_box_coords(b) + ")";
          return s + ")";
        } else {
          std::string s = "(automaton " + name + "\n  " +
                          names_line("states", {body.states.begin(), body.states.end()}) + "\n  " +
                          names_line("initial", {body.initial.begin(), body.initial.end()}) + "\n  (transitions";
          for (const auto& [a, b] : body.transitions) s += " (" + print_name(a) + " " + print_name(b) + ")";
          s += ")\n  (labels";
          for (const auto& [st, f] : body.labels) s += "\n    (" + print_name(st) + " " + layout(f, 6) + ")";
          return s + "))";
        }
      },
      d.body);
}

}  // namespace

std::string print_name(std::string_view name) {
  bool bare = !name.empty() && !looks_integer(name);
  for (char c : name) bare = bare && is_symbol_char(c);
  return bare ? std::string(name) : quote(name);
}

Term term_from_sexpr(const SExpr& e) {
  const SExpr& l = head_list(e, "term");
  const std::string& h = l.items.front().text;
  auto sub = [&](std::size_t i) { return term_from_sexpr(l.items[i]); };
  if (h == "and" || h == "or" || h == "implies") {
    arity(l, 2, "(" + h + " t t)");
    if (h == "and") return make_and(sub(1), sub(2));
    if (h == "or") return make_or(sub(1), sub(2));
    return make_implies(sub(1), sub(2));
  }
  if (h == "not") {
    arity(l, 1, "(not t)");
    return make_not(sub(1));
  }
  if (h == "bigand" || h == "bigor") {
    if (l.items.size() < 2) fail_at(l, "(" + h + " t+) with at least one term");
    std::vector<Term> kids;
    for (std::size_t i = 1; i < l.items.size(); ++i) kids.push_back(sub(i));
    return h == "bigand" ? make_big_and(std::move(kids)) : make_big_or(std::move(kids));
  }
  if (h == "true" || h == "false") {
    arity(l, 0, "(" + h + ")");
    return h == "true" ? make_true() : make_false();
  }
  if (auto a = atom_of(l)) return make_atom(std::move(*a));
  fail_at(l.items.front(), "term");
}

Term parse_term(std::string_view text) {
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) {
    if (exprs.empty()) throw SyntaxError(1, 1, "term");
    fail_at(exprs[1], "end of input");
  }
  return term_from_sexpr(exprs.front());
}

std::string print_term(const Term& t, std::size_t indent) { return layout(t, indent); }

Document parse_document(std::string_view text) {
  Document doc;
  auto exprs = read_sexprs(text);
  std::set<std::string> names;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    const SExpr& e = head_list(exprs[i], "definition");
    const std::string& h = e.items.front().text;
    if (h == "spacebound") {
      if (i != 0) fail_at(e, "header before definitions");
      for (std::size_t j = 1; j < e.items.size(); ++j) {
        const SExpr& opt = head_list(e.items[j], "(version N) or (unit TEXT)");
        if (opt.has_head("version")) {
          arity(opt, 1, "(version N)");
          doc.version = static_cast<int>(int_of(opt.items[1]));
          if (doc.version != 1) throw Error(ErrorCode::UnknownVersion, std::to_string(doc.version));
        } else if (opt.has_head("unit")) {
          arity(opt, 1, "(unit TEXT)");
          if (opt.items[1].is_list()) fail_at(opt.items[1], "unit text");
          doc.unit = opt.items[1].text;
        } else {
          fail_at(opt, "(version N) or (unit TEXT)");
        }
      }
      continue;
    }
    if (e.items.size() < 2) fail_at(e, "definition name");
    Definition d;
    d.name = name_of(e.items[1]);
    if (h == "term") {
      arity(e, 2, "(term NAME t)");
      d.body = term_from_sexpr(e.items[2]);
    } else if (h == "timeorder") {
      d.body = order_of(e);
    } else if (h == "trace") {
      d.body = trace_of(e);
    } else if (h == "geometry") {
      d.body = geometry_of(e);
    } else if (h == "automaton") {
      d.body = automaton_of(e);
    } else {
      fail_at(e.items.front(), "term, timeorder, trace, geometry or automaton");
    }
    if (!names.insert(d.name).second) throw Error(ErrorCode::DuplicateName, d.name);
    doc.definitions.push_back(std::move(d));
  }
  return doc;
}

std::string print_document(const Document& doc) {
  std::string s = "(spacebound (version " + std::to_string(doc.version) + ")";
  if (doc.unit) s += " (unit " + quote(*doc.unit) + ")";
  s += ")\n";
  for (const auto& d : doc.definitions) s += "\n" + print_definition(d) + "\n";
  return s;
}

}  // namespace spacebound
