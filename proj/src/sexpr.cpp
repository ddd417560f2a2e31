#include "spacebound/sexpr.hpp"

#include <cctype>

#include "spacebound/error.hpp"

namespace spacebound {

bool SExpr::has_head(std::string_view head) const {
  return is_list() && !items.empty() && items.front().is_symbol() && items.front().text == head;
}

bool is_symbol_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (std::isalnum(u)) return true;
  switch (c) {
    case '_': case '-': case '+': case '*': case '/': case '.': case ':': case '<': case '>':
    case '=': case '!': case '?': case '@': case '#': case '$': case '%': case '&': case '~':
    case '^':
      return true;
    default:
      return false;
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] == ')') fail("expression or end of input");
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(line_, col_, expected); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    const char c = text_[pos_];
    if (c == '(') {
      e.kind = SExpr::Kind::List;
      advance();
      skip_space();
      while (true) {
        if (pos_ >= text_.size()) fail("')'");
        if (text_[pos_] == ')') break;
        e.items.push_back(read());
        skip_space();
      }
      advance();
    } else if (c == '"') {
      e.kind = SExpr::Kind::String;
      advance();
      while (true) {
        if (pos_ >= text_.size()) fail("closing '\"'");
        char ch = text_[pos_];
        if (ch == '"') break;
        if (ch == '\\') {
          advance();
          if (pos_ >= text_.size()) fail("escaped character");
          ch = text_[pos_];
        }
        e.text += ch;
        advance();
      }
      advance();
    } else if (is_symbol_char(c)) {
      e.kind = SExpr::Kind::Symbol;
      while (pos_ < text_.size() && is_symbol_char(text_[pos_])) {
        e.text += text_[pos_];
        advance();
      }
    } else {
      fail("'(', symbol or string");
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

}  // namespace spacebound
