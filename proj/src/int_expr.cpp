#include "theta_idents/int_expr.hpp"

#include <charconv>

#include "theta_idents/detail/sexpr.hpp"
#include "theta_idents/errors.hpp"

namespace theta_idents {

std::string_view symbol_name(Symbol symbol) {
  switch (symbol) {
    case Symbol::p: return "p";
    case Symbol::r: return "r";
    case Symbol::s: return "s";
    case Symbol::t: return "t";
    case Symbol::l: return "l";
    case Symbol::n: return "n";
    case Symbol::k: return "k";
  }
  return "?";
}

std::optional<Symbol> parse_symbol(std::string_view name) {
  for (Symbol s : kAllSymbols) {
    if (symbol_name(s) == name) return s;
  }
  return std::nullopt;
}

long long IntBinding::at(Symbol symbol) const {
  auto value = get(symbol);
  if (!value) throw UnboundSymbolError("symbol '" + std::string(symbol_name(symbol)) + "' is not bound");
  return *value;
}

IntExpr::IntExpr(long long value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = value;
  node_ = std::move(node);
}

IntExpr::IntExpr(Symbol symbol) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sym;
  node->symbol = symbol;
  node_ = std::move(node);
}

IntExpr IntExpr::make(Kind kind, std::vector<IntExpr> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = std::move(children);
  return IntExpr(std::shared_ptr<const Node>(std::move(node)));
}

long long IntExpr::eval(const IntBinding& binding) const {
  const auto& c = children();
  switch (kind()) {
    case Kind::Const: return constant();
    case Kind::Sym: return binding.at(symbol());
    case Kind::Add: {
      long long total = 0;
      for (const auto& child : c) total += child.eval(binding);
      return total;
    }
    case Kind::Mul: {
      long long total = 1;
      for (const auto& child : c) total *= child.eval(binding);
      return total;
    }
    case Kind::Sub: return c[0].eval(binding) - c[1].eval(binding);
    case Kind::Neg: return -c[0].eval(binding);
    case Kind::Div: {
      const long long num = c[0].eval(binding);
      const long long den = c[1].eval(binding);
      if (den == 0 || num % den != 0) {
        throw DomainError("inexact integer division in " + to_prefix());
      }
      return num / den;
    }
  }
  return 0;
}

void IntExpr::collect_symbols(std::set<Symbol>& out) const {
  if (kind() == Kind::Sym) out.insert(symbol());
  for (const auto& child : children()) child.collect_symbols(out);
}

IntExpr IntExpr::substitute(Symbol from, const IntExpr& to) const {
  if (kind() == Kind::Sym) return symbol() == from ? to : *this;
  if (kind() == Kind::Const) return *this;
  std::vector<IntExpr> replaced;
  replaced.reserve(children().size());
  for (const auto& child : children()) replaced.push_back(child.substitute(from, to));
  return make(kind(), std::move(replaced));
}

std::string IntExpr::to_prefix() const {
  auto list = [this](std::string_view head) {
    std::string out = "(";
    out += head;
    for (const auto& child : children()) {
      out += ' ';
      out += child.to_prefix();
    }
    out += ')';
    return out;
  };
  switch (kind()) {
    case Kind::Const: return std::to_string(constant());
    case Kind::Sym: return std::string(symbol_name(symbol()));
    case Kind::Add: return list("+");
    case Kind::Sub:
    case Kind::Neg: return list("-");
    case Kind::Mul: return list("*");
    case Kind::Div: return list("/");
  }
  return {};
}

IntExpr IntExpr::from_sexpr(const detail::SExpr& node) {
  auto fail = [&](const std::string& what) -> IntExpr { throw ParseError("integer expression: " + what, 1, node.column); };
  if (node.is_atom) {
    if (auto symbol = parse_symbol(node.atom)) return IntExpr(*symbol);
    long long value = 0;
    const char* first = node.atom.data();
    const char* last = first + node.atom.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return fail("bad atom '" + node.atom + "'");
    return IntExpr(value);
  }
  const auto& head = node.items.front();
  if (!head.is_atom) return fail("operator expected");
  std::vector<IntExpr> args;
  for (std::size_t i = 1; i < node.items.size(); ++i) args.push_back(from_sexpr(node.items[i]));
  const std::string& op = head.atom;
  if (op == "+" && args.size() >= 2) return make(Kind::Add, std::move(args));
  if (op == "*" && args.size() >= 2) return make(Kind::Mul, std::move(args));
  if (op == "-" && args.size() == 1) return make(Kind::Neg, std::move(args));
  if (op == "-" && args.size() == 2) return make(Kind::Sub, std::move(args));
  if (op == "/" && args.size() == 2) return make(Kind::Div, std::move(args));
  return fail("unknown operator or arity '" + op + "'");
}

IntExpr IntExpr::parse(std::string_view text) { return from_sexpr(detail::parse_sexpr(text)); }

namespace {
template <typename Kind>
bool flattens(const IntExpr& e, Kind kind) {
  return e.kind() == kind;
}
}  // namespace

IntExpr operator+(const IntExpr& a, const IntExpr& b) {
  if (a.is_zero_constant()) return b;
  if (b.is_zero_constant()) return a;
  if (a.kind() == IntExpr::Kind::Const && b.kind() == IntExpr::Kind::Const) return a.constant() + b.constant();
  std::vector<IntExpr> children;
  if (flattens(a, IntExpr::Kind::Add)) {
    children = a.children();
  } else {
    children.push_back(a);
  }
  children.push_back(b);
  return IntExpr::make(IntExpr::Kind::Add, std::move(children));
}

IntExpr operator-(const IntExpr& a, const IntExpr& b) {
  if (b.is_zero_constant()) return a;
  if (a.kind() == IntExpr::Kind::Const && b.kind() == IntExpr::Kind::Const) return a.constant() - b.constant();
  if (a.is_zero_constant()) return -b;
  return IntExpr::make(IntExpr::Kind::Sub, {a, b});
}

IntExpr operator*(const IntExpr& a, const IntExpr& b) {
  if (a.kind() == IntExpr::Kind::Const && b.kind() == IntExpr::Kind::Const) return a.constant() * b.constant();
  if (a.kind() == IntExpr::Kind::Const && a.constant() == 1) return b;
  if (b.kind() == IntExpr::Kind::Const && b.constant() == 1) return a;
  std::vector<IntExpr> children;
  if (flattens(a, IntExpr::Kind::Mul)) {
    children = a.children();
  } else {
    children.push_back(a);
  }
  children.push_back(b);
  return IntExpr::make(IntExpr::Kind::Mul, std::move(children));
}

IntExpr operator/(const IntExpr& a, const IntExpr& b) { return IntExpr::make(IntExpr::Kind::Div, {a, b}); }

IntExpr operator-(const IntExpr& a) {
  if (a.kind() == IntExpr::Kind::Const) return -a.constant();
  return IntExpr::make(IntExpr::Kind::Neg, {a});
}

bool operator==(const IntExpr& a, const IntExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case IntExpr::Kind::Const: return a.constant() == b.constant();
    case IntExpr::Kind::Sym: return a.symbol() == b.symbol();
    default: return a.children() == b.children();
  }
}

}  // namespace theta_idents
