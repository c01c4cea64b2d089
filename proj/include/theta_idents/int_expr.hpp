#pragma once

// Exact integer expressions over the identity parameters. Used for theta
// argument offsets (in units of T/p), exponents and index ranges so that
// combinations such as (r - s) or (n - k) r never pass through floating point.

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace theta_idents {

enum class Symbol { p, r, s, t, l, n, k };

inline constexpr std::array<Symbol, 7> kAllSymbols = {Symbol::p, Symbol::r, Symbol::s, Symbol::t,
                                                      Symbol::l, Symbol::n, Symbol::k};

std::string_view symbol_name(Symbol symbol);
std::optional<Symbol> parse_symbol(std::string_view name);

// Partial assignment of integer values to symbols.
class IntBinding {
 public:
  IntBinding& set(Symbol symbol, long long value) {
    values_[index(symbol)] = value;
    return *this;
  }
  void clear(Symbol symbol) { values_[index(symbol)].reset(); }
  std::optional<long long> get(Symbol symbol) const { return values_[index(symbol)]; }
  // Throws UnboundSymbolError.
  long long at(Symbol symbol) const;

 private:
  static std::size_t index(Symbol symbol) { return static_cast<std::size_t>(symbol); }
  std::array<std::optional<long long>, kAllSymbols.size()> values_{};
};

namespace detail {
struct SExpr;
}

class IntExpr {
 public:
  enum class Kind { Const, Sym, Add, Sub, Neg, Mul, Div };

  IntExpr(long long value = 0);  // NOLINT(google-explicit-constructor)
  IntExpr(Symbol symbol);        // NOLINT(google-explicit-constructor)

  Kind kind() const noexcept { return node_->kind; }
  long long constant() const noexcept { return node_->value; }
  Symbol symbol() const noexcept { return node_->symbol; }
  const std::vector<IntExpr>& children() const noexcept { return node_->children; }

  // Throws UnboundSymbolError, or DomainError when a division is inexact.
  long long eval(const IntBinding& binding) const;

  bool is_zero_constant() const noexcept { return kind() == Kind::Const && constant() == 0; }
  void collect_symbols(std::set<Symbol>& out) const;
  IntExpr substitute(Symbol from, const IntExpr& to) const;

  std::string to_prefix() const;
  static IntExpr parse(std::string_view text);
  static IntExpr from_sexpr(const detail::SExpr& node);

  friend IntExpr operator+(const IntExpr& a, const IntExpr& b);
  friend IntExpr operator-(const IntExpr& a, const IntExpr& b);
  friend IntExpr operator*(const IntExpr& a, const IntExpr& b);
  friend IntExpr operator/(const IntExpr& a, const IntExpr& b);
  friend IntExpr operator-(const IntExpr& a);
  friend bool operator==(const IntExpr& a, const IntExpr& b);

 private:
  struct Node {
    Kind kind = Kind::Const;
    long long value = 0;
    Symbol symbol = Symbol::p;
    std::vector<IntExpr> children;
  };
  static IntExpr make(Kind kind, std::vector<IntExpr> children);
  explicit IntExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace theta_idents
