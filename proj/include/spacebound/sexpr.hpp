#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spacebound {

/// Generic s-expression: a bare symbol, a quoted string or a list.
struct SExpr {
  enum class Kind { Symbol, String, List };

  Kind kind = Kind::List;
  std::string text;  // symbol or unescaped string contents
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_string() const { return kind == Kind::String; }
  /// List whose first item is the symbol `head`.
  bool has_head(std::string_view head) const;
};

/// Reads every top-level expression. `;` starts a line comment. Throws
/// SyntaxError with the position of the offending character.
std::vector<SExpr> read_sexprs(std::string_view text);

/// Symbol characters other than letters and digits.
bool is_symbol_char(char c);

/// Writes a string literal with `"` and `\` escaped.
std::string quote(std::string_view s);

}  // namespace spacebound
