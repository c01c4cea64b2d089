#include "theta_idents/detail/sexpr.hpp"

#include <cctype>

#include "theta_idents/errors.hpp"

namespace theta_idents::detail {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_all() {
    skip_space();
    SExpr result = read();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return result;
  }

 private:
  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    SExpr node;
    node.column = pos_ + 1;
    if (text_[pos_] == '(') {
      ++pos_;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) fail("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        node.items.push_back(read());
      }
      if (node.items.empty()) fail("empty list", node.column);
      return node;
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    node.is_atom = true;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      node.atom.push_back(text_[pos_++]);
    }
    return node;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) { fail(what, pos_ + 1); }
  [[noreturn]] void fail(const std::string& what, std::size_t column) {
    throw ParseError("expression: " + what, 1, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) { return Reader(text).read_all(); }

}  // namespace theta_idents::detail
