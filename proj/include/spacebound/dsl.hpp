#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spacebound/sexpr.hpp"
#include "spacebound/term.hpp"
#include "spacebound/time_order.hpp"
#include "spacebound/transforms.hpp"

namespace spacebound {

using DefinitionBody = std::variant<Term, TimeOrder, EventTrace, NodeGeometry, Automaton>;

struct Definition {
  std::string name;
  DefinitionBody body;
  bool operator==(const Definition&) const = default;
};

/// A .besd file: optional header plus named definitions.
struct Document {
  int version = 1;
  std::optional<std::string> unit;
  std::vector<Definition> definitions;

  bool operator==(const Document&) const = default;

  template <class T>
  const T* find(std::string_view name) const {
    for (const auto& d : definitions) {
      if (d.name == name) return std::get_if<T>(&d.body);
    }
    return nullptr;
  }

  template <class T>
  std::vector<const Definition*> all() const {
    std::vector<const Definition*> out;
    for (const auto& d : definitions) {
      if (std::holds_alternative<T>(d.body)) out.push_back(&d);
    }
    return out;
  }
};

/// Throws SyntaxError, DuplicateName, UnknownVersion.
Document parse_document(std::string_view text);
std::string print_document(const Document& doc);

Term parse_term(std::string_view text);
Term term_from_sexpr(const SExpr& e);
/// Single line when it fits in the width budget, otherwise one child per line.
std::string print_term(const Term& t, std::size_t indent = 0);

/// Symbol printed bare when safe, quoted otherwise.
std::string print_name(std::string_view name);

}  // namespace spacebound
