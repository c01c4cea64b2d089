#pragma once

// Coefficient expressions for the right-hand sides of cyclic identities:
// products, sums, powers and absolute values of theta values taken at integer
// multiples of the base step T/p, plus indexed sums and products.
//
// Prefix text form (one node per list, atoms for constants):
//   2  -2  1/3                 rational constants
//   (int <iexpr>)              integer expression as a value, e.g. (int p)
//   (th i <iexpr>)             theta_i(offset * T/p); (dth i ..) first, (d2th i ..) second derivative
//   (abs x) (neg x) (pow x <iexpr>) (* x y ..) (+ x y ..)
//   (prod n lo hi [(except <iexpr>)] body)   (sum k lo hi [(except ..)] body)
//   (sign <iexpr>)             (-1)^exponent

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "theta_idents/int_expr.hpp"
#include "theta_idents/special_fn.hpp"

namespace theta_idents {

enum class Period { Pi, TwoPi };

double period_value(Period period);
std::string_view period_name(Period period);  // "pi" | "2pi"

class CoeffExpr {
 public:
  enum class Kind { Const, IntValue, ThetaAt, Abs, Neg, Pow, Mul, Add, IndexedProd, IndexedSum, SignPow };

  CoeffExpr(long long value = 0);  // NOLINT(google-explicit-constructor)
  static CoeffExpr rational(long long numerator, long long denominator);
  static CoeffExpr int_value(const IntExpr& value);
  static CoeffExpr theta_at(ThetaIndex index, const IntExpr& offset, int derivative = 0);
  static CoeffExpr abs(const CoeffExpr& child);
  static CoeffExpr pow(const CoeffExpr& base, const IntExpr& exponent);
  static CoeffExpr sign_pow(const IntExpr& exponent);
  static CoeffExpr indexed_prod(Symbol var, const IntExpr& lo, const IntExpr& hi, std::optional<IntExpr> except,
                                const CoeffExpr& body);
  static CoeffExpr indexed_sum(Symbol var, const IntExpr& lo, const IntExpr& hi, std::optional<IntExpr> except,
                               const CoeffExpr& body);
  // Unflattened n-ary nodes, as produced by the parser.
  static CoeffExpr mul(std::vector<CoeffExpr> children);
  static CoeffExpr add(std::vector<CoeffExpr> children);

  Kind kind() const noexcept { return node_->kind; }
  long long numerator() const noexcept { return node_->num; }
  long long denominator() const noexcept { return node_->den; }
  ThetaIndex theta_index() const noexcept { return node_->index; }
  int derivative() const noexcept { return node_->derivative; }
  Symbol var() const noexcept { return node_->var; }
  const std::vector<IntExpr>& ints() const noexcept { return node_->ints; }
  const std::optional<IntExpr>& except() const noexcept { return node_->except; }
  const std::vector<CoeffExpr>& children() const noexcept { return node_->children; }

  std::string to_prefix() const;
  static CoeffExpr parse(std::string_view text);
  static CoeffExpr from_sexpr(const detail::SExpr& node);

  // Rewrites every integer sub-expression with `from` replaced by `to`.
  CoeffExpr substitute(Symbol from, const IntExpr& to) const;

  friend CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator/(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator+(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator-(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator-(const CoeffExpr& a);
  friend bool operator==(const CoeffExpr& a, const CoeffExpr& b);

 private:
  struct Node {
    Kind kind = Kind::Const;
    long long num = 0;
    long long den = 1;
    ThetaIndex index = ThetaIndex::One;
    int derivative = 0;
    Symbol var = Symbol::n;
    std::vector<IntExpr> ints;  // offset | exponent | (lo, hi)
    std::optional<IntExpr> except;
    std::vector<CoeffExpr> children;
  };
  explicit CoeffExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static CoeffExpr make(Node node);

  std::shared_ptr<const Node> node_;
};

// Values of p, r, s, t, l plus the period and the nome at which theta values
// are taken. Offsets resolve to multiples of T/p.
struct CoeffBinding {
  IntBinding ints;
  Period period = Period::Pi;
  Nome nome{complex{0.0, 1.0}};
};

// Memo of theta values at integer multiples of the base step.
class ThetaGridCache {
 public:
  complex get(ThetaIndex index, int derivative, long long offset, const CoeffBinding& binding);

 private:
  std::map<std::tuple<int, int, long long>, complex> values_;
};

// Throws UnboundSymbolError or DivisionNearZeroError.
complex eval_expr(const CoeffExpr& expr, const CoeffBinding& binding, ThetaGridCache* cache = nullptr);

// Subset of {p, r, s, t, l} referenced by the expression. Any theta value at a
// non-zero offset depends on p through the step T/p.
std::set<Symbol> free_symbols(const CoeffExpr& expr);

// As free_symbols, but also reports index variables n, k used outside their
// binding sum or product.
std::set<Symbol> all_free_symbols(const CoeffExpr& expr);

// Threshold for DivisionNearZeroError relative to max(1, numerator magnitude).
inline constexpr double kDivisionThreshold = 1e-14;

}  // namespace theta_idents
