#include "theta_idents/coeff_expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "theta_idents/detail/sexpr.hpp"
#include "theta_idents/errors.hpp"

namespace theta_idents {

double period_value(Period period) { return period == Period::Pi ? std::numbers::pi : 2.0 * std::numbers::pi; }

std::string_view period_name(Period period) { return period == Period::Pi ? "pi" : "2pi"; }

CoeffExpr CoeffExpr::make(Node node) { return CoeffExpr(std::make_shared<const Node>(std::move(node))); }

CoeffExpr::CoeffExpr(long long value) : CoeffExpr(rational(value, 1)) {}

CoeffExpr CoeffExpr::rational(long long numerator, long long denominator) {
  if (denominator == 0) throw DomainError("rational constant with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const long long g = std::gcd(numerator, denominator);
  Node node;
  node.kind = Kind::Const;
  node.num = g == 0 ? 0 : numerator / g;
  node.den = g == 0 ? 1 : denominator / g;
  return make(std::move(node));
}

CoeffExpr CoeffExpr::int_value(const IntExpr& value) {
  Node node;
  node.kind = Kind::IntValue;
  node.ints = {value};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::theta_at(ThetaIndex index, const IntExpr& offset, int derivative) {
  if (derivative < 0 || derivative > 2) throw DomainError("theta derivative order must be 0, 1 or 2");
  Node node;
  node.kind = Kind::ThetaAt;
  node.index = index;
  node.derivative = derivative;
  node.ints = {offset};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::abs(const CoeffExpr& child) {
  Node node;
  node.kind = Kind::Abs;
  node.children = {child};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::pow(const CoeffExpr& base, const IntExpr& exponent) {
  if (exponent.kind() == IntExpr::Kind::Const && exponent.constant() == 1) return base;
  if (exponent.kind() == IntExpr::Kind::Const && base.kind() == Kind::Pow &&
      base.ints()[0].kind() == IntExpr::Kind::Const) {
    return pow(base.children()[0], base.ints()[0].constant() * exponent.constant());
  }
  Node node;
  node.kind = Kind::Pow;
  node.ints = {exponent};
  node.children = {base};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::sign_pow(const IntExpr& exponent) {
  Node node;
  node.kind = Kind::SignPow;
  node.ints = {exponent};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::indexed_prod(Symbol var, const IntExpr& lo, const IntExpr& hi, std::optional<IntExpr> except,
                                  const CoeffExpr& body) {
  Node node;
  node.kind = Kind::IndexedProd;
  node.var = var;
  node.ints = {lo, hi};
  node.except = std::move(except);
  node.children = {body};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::indexed_sum(Symbol var, const IntExpr& lo, const IntExpr& hi, std::optional<IntExpr> except,
                                 const CoeffExpr& body) {
  Node node;
  node.kind = Kind::IndexedSum;
  node.var = var;
  node.ints = {lo, hi};
  node.except = std::move(except);
  node.children = {body};
  return make(std::move(node));
}

CoeffExpr CoeffExpr::mul(std::vector<CoeffExpr> children) {
  Node node;
  node.kind = Kind::Mul;
  node.children = std::move(children);
  return make(std::move(node));
}

CoeffExpr CoeffExpr::add(std::vector<CoeffExpr> children) {
  Node node;
  node.kind = Kind::Add;
  node.children = std::move(children);
  return make(std::move(node));
}

namespace {

bool is_constant(const CoeffExpr& e, long long value) {
  return e.kind() == CoeffExpr::Kind::Const && e.denominator() == 1 && e.numerator() == value;
}

void append_flat(std::vector<CoeffExpr>& out, const CoeffExpr& e, CoeffExpr::Kind kind) {
  if (e.kind() == kind) {
    out.insert(out.end(), e.children().begin(), e.children().end());
  } else {
    out.push_back(e);
  }
}

CoeffExpr reciprocal(const CoeffExpr& e) {
  switch (e.kind()) {
    case CoeffExpr::Kind::Const:
      if (e.numerator() == 0) throw DivisionNearZeroError("division by the constant 0");
      return CoeffExpr::rational(e.denominator(), e.numerator());
    case CoeffExpr::Kind::Pow:
      if (e.ints()[0].kind() == IntExpr::Kind::Const) {
        return CoeffExpr::pow(e.children()[0], -e.ints()[0].constant());
      }
      return CoeffExpr::pow(e, -1);
    case CoeffExpr::Kind::Mul: {
      std::vector<CoeffExpr> inverted;
      for (const auto& child : e.children()) inverted.push_back(reciprocal(child));
      return CoeffExpr::mul(std::move(inverted));
    }
    default: return CoeffExpr::pow(e, -1);
  }
}

}  // namespace

CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b) {
  if (is_constant(a, 1)) return b;
  if (is_constant(b, 1)) return a;
  if (a.kind() == CoeffExpr::Kind::Const && b.kind() == CoeffExpr::Kind::Const) {
    return CoeffExpr::rational(a.numerator() * b.numerator(), a.denominator() * b.denominator());
  }
  std::vector<CoeffExpr> children;
  append_flat(children, a, CoeffExpr::Kind::Mul);
  append_flat(children, b, CoeffExpr::Kind::Mul);
  return CoeffExpr::mul(std::move(children));
}

CoeffExpr operator/(const CoeffExpr& a, const CoeffExpr& b) { return a * reciprocal(b); }

CoeffExpr operator+(const CoeffExpr& a, const CoeffExpr& b) {
  std::vector<CoeffExpr> children;
  append_flat(children, a, CoeffExpr::Kind::Add);
  children.push_back(b);
  return CoeffExpr::add(std::move(children));
}

CoeffExpr operator-(const CoeffExpr& a) {
  if (a.kind() == CoeffExpr::Kind::Const) return CoeffExpr::rational(-a.numerator(), a.denominator());
  CoeffExpr::Node node;
  node.kind = CoeffExpr::Kind::Neg;
  node.children = {a};
  return CoeffExpr::make(std::move(node));
}

CoeffExpr operator-(const CoeffExpr& a, const CoeffExpr& b) { return a + (-b); }

bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.num == y.num && x.den == y.den && x.index == y.index &&
         x.derivative == y.derivative && x.var == y.var && x.ints == y.ints && x.except == y.except &&
         x.children == y.children;
}

std::string CoeffExpr::to_prefix() const {
  auto join = [](std::string head, const std::vector<CoeffExpr>& items) {
    for (const auto& item : items) {
      head += ' ';
      head += item.to_prefix();
    }
    return head + ')';
  };
  switch (kind()) {
    case Kind::Const:
      return denominator() == 1 ? std::to_string(numerator())
                                : std::to_string(numerator()) + "/" + std::to_string(denominator());
    case Kind::IntValue: return "(int " + ints()[0].to_prefix() + ")";
    case Kind::ThetaAt: {
      const char* head = derivative() == 0 ? "(th " : derivative() == 1 ? "(dth " : "(d2th ";
      return head + std::to_string(to_int(theta_index())) + " " + ints()[0].to_prefix() + ")";
    }
    case Kind::Abs: return join("(abs", children());
    case Kind::Neg: return join("(neg", children());
    case Kind::Pow: return "(pow " + children()[0].to_prefix() + " " + ints()[0].to_prefix() + ")";
    case Kind::Mul: return join("(*", children());
    case Kind::Add: return join("(+", children());
    case Kind::IndexedProd:
    case Kind::IndexedSum: {
      std::string out = kind() == Kind::IndexedProd ? "(prod " : "(sum ";
      out += symbol_name(var());
      out += " " + ints()[0].to_prefix() + " " + ints()[1].to_prefix();
      if (except()) out += " (except " + except()->to_prefix() + ")";
      return out + " " + children()[0].to_prefix() + ")";
    }
    case Kind::SignPow: return "(sign " + ints()[0].to_prefix() + ")";
  }
  return {};
}

namespace {

[[noreturn]] void parse_fail(const detail::SExpr& node, const std::string& what) {
  throw ParseError("coefficient expression: " + what, 1, node.column);
}

CoeffExpr parse_constant(const detail::SExpr& node) {
  const std::string& text = node.atom;
  const auto slash = text.find('/');
  auto to_ll = [&](std::string_view part) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) parse_fail(node, "bad constant '" + text + "'");
    return value;
  };
  const std::string_view view(text);
  if (slash == std::string::npos) return CoeffExpr::rational(to_ll(view), 1);
  return CoeffExpr::rational(to_ll(view.substr(0, slash)), to_ll(view.substr(slash + 1)));
}

}  // namespace

CoeffExpr CoeffExpr::from_sexpr(const detail::SExpr& node) {
  if (node.is_atom) return parse_constant(node);
  const auto& items = node.items;
  if (!items.front().is_atom) parse_fail(node, "operator expected");
  const std::string& op = items.front().atom;
  const std::size_t arity = items.size() - 1;
  auto need = [&](std::size_t n) {
    if (arity != n) parse_fail(node, "'" + op + "' expects " + std::to_string(n) + " arguments");
  };
  if (op == "int") {
    need(1);
    return int_value(IntExpr::from_sexpr(items[1]));
  }
  if (op == "th" || op == "dth" || op == "d2th") {
    need(2);
    if (!items[1].is_atom || items[1].atom.size() != 1 || items[1].atom[0] < '1' || items[1].atom[0] > '4') {
      parse_fail(items[1], "theta index must be 1..4");
    }
    const int order = op == "th" ? 0 : op == "dth" ? 1 : 2;
    return theta_at(theta_idents::theta_index(items[1].atom[0] - '0'), IntExpr::from_sexpr(items[2]), order);
  }
  if (op == "abs" || op == "neg") {
    need(1);
    CoeffExpr child = from_sexpr(items[1]);
    if (op == "abs") return abs(child);
    Node n;
    n.kind = Kind::Neg;
    n.children = {child};
    return make(std::move(n));
  }
  if (op == "pow") {
    need(2);
    Node n;
    n.kind = Kind::Pow;
    n.children = {from_sexpr(items[1])};
    n.ints = {IntExpr::from_sexpr(items[2])};
    return make(std::move(n));
  }
  if (op == "sign") {
    need(1);
    return sign_pow(IntExpr::from_sexpr(items[1]));
  }
  if (op == "*" || op == "+") {
    if (arity < 2) parse_fail(node, "'" + op + "' expects at least 2 arguments");
    std::vector<CoeffExpr> children;
    for (std::size_t i = 1; i < items.size(); ++i) children.push_back(from_sexpr(items[i]));
    return op == "*" ? mul(std::move(children)) : add(std::move(children));
  }
  if (op == "prod" || op == "sum") {
    if (arity != 4 && arity != 5) parse_fail(node, "'" + op + "' expects var lo hi [(except e)] body");
    const auto var = items[1].is_atom ? parse_symbol(items[1].atom) : std::nullopt;
    if (!var || (*var != Symbol::n && *var != Symbol::k)) parse_fail(items[1], "index variable must be n or k");
    std::optional<IntExpr> except;
    if (arity == 5) {
      const auto& ex = items[4];
      if (ex.is_atom || ex.items.size() != 2 || !ex.items[0].is_atom || ex.items[0].atom != "except") {
        parse_fail(ex, "expected (except <iexpr>)");
      }
      except = IntExpr::from_sexpr(ex.items[1]);
    }
    const IntExpr lo = IntExpr::from_sexpr(items[2]);
    const IntExpr hi = IntExpr::from_sexpr(items[3]);
    const CoeffExpr body = from_sexpr(items.back());
    return op == "prod" ? indexed_prod(*var, lo, hi, except, body) : indexed_sum(*var, lo, hi, except, body);
  }
  parse_fail(node, "unknown operator '" + op + "'");
}

CoeffExpr CoeffExpr::parse(std::string_view text) { return from_sexpr(detail::parse_sexpr(text)); }

CoeffExpr CoeffExpr::substitute(Symbol from, const IntExpr& to) const {
  Node copy = *node_;
  for (auto& i : copy.ints) i = i.substitute(from, to);
  if (copy.except) copy.except = copy.except->substitute(from, to);
  for (auto& child : copy.children) child = child.substitute(from, to);
  return make(std::move(copy));
}

complex ThetaGridCache::get(ThetaIndex index, int derivative, long long offset, const CoeffBinding& binding) {
  const auto key = std::make_tuple(to_int(index), derivative, offset);
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  const double step = period_value(binding.period) / static_cast<double>(binding.ints.at(Symbol::p));
  const complex value =
      theta_derivative(index, ThetaArgument(complex{static_cast<double>(offset) * step, 0.0}, binding.nome), derivative);
  values_.emplace(key, value);
  return value;
}

namespace {

complex int_power(complex base, long long exponent) {
  complex result{1.0, 0.0};
  long long e = exponent < 0 ? -exponent : exponent;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return exponent < 0 ? 1.0 / result : result;
}

class Evaluator {
 public:
  Evaluator(const CoeffBinding& binding, ThetaGridCache* cache) : binding_(binding), scope_(binding.ints), cache_(cache) {}

  complex eval(const CoeffExpr& e, double numerator_scale = 1.0) {
    using Kind = CoeffExpr::Kind;
    switch (e.kind()) {
      case Kind::Const: return static_cast<double>(e.numerator()) / static_cast<double>(e.denominator());
      case Kind::IntValue: return static_cast<double>(e.ints()[0].eval(scope_));
      case Kind::ThetaAt: return theta_value(e);
      case Kind::Abs: return std::abs(eval(e.children()[0]));
      case Kind::Neg: return -eval(e.children()[0], numerator_scale);
      case Kind::Pow: {
        const long long exponent = e.ints()[0].eval(scope_);
        const complex base = eval(e.children()[0]);
        if (exponent < 0 && std::abs(base) < kDivisionThreshold * std::max(1.0, numerator_scale)) {
          throw DivisionNearZeroError("denominator " + e.children()[0].to_prefix() + " is numerically zero");
        }
        return int_power(base, exponent);
      }
      case Kind::Mul: return product(e);
      case Kind::Add: {
        complex total{0.0, 0.0};
        for (const auto& child : e.children()) total += eval(child);
        return total;
      }
      case Kind::IndexedProd:
      case Kind::IndexedSum: return indexed(e);
      case Kind::SignPow: {
        const long long exponent = e.ints()[0].eval(scope_);
        return (exponent % 2 == 0) ? 1.0 : -1.0;
      }
    }
    return {};
  }

 private:
  bool is_division(const CoeffExpr& e) {
    return e.kind() == CoeffExpr::Kind::Pow && e.ints()[0].eval(scope_) < 0;
  }

  complex product(const CoeffExpr& e) {
    complex numerator{1.0, 0.0};
    for (const auto& child : e.children()) {
      if (!is_division(child)) numerator *= eval(child);
    }
    const double scale = std::abs(numerator);
    complex total = numerator;
    for (const auto& child : e.children()) {
      if (is_division(child)) total *= eval(child, scale);
    }
    return total;
  }

  complex indexed(const CoeffExpr& e) {
    const bool is_product = e.kind() == CoeffExpr::Kind::IndexedProd;
    const long long lo = e.ints()[0].eval(scope_);
    const long long hi = e.ints()[1].eval(scope_);
    const std::optional<long long> saved = scope_.get(e.var());
    complex total = is_product ? complex{1.0, 0.0} : complex{0.0, 0.0};
    for (long long i = lo; i <= hi; ++i) {
      scope_.set(e.var(), i);
      if (e.except() && e.except()->eval(scope_) == i) continue;
      const complex value = eval(e.children()[0]);
      total = is_product ? total * value : total + value;
    }
    if (saved) {
      scope_.set(e.var(), *saved);
    } else {
      scope_.clear(e.var());
    }
    return total;
  }

  complex theta_value(const CoeffExpr& e) {
    const long long offset = e.ints()[0].eval(scope_);
    if (cache_ != nullptr) return cache_->get(e.theta_index(), e.derivative(), offset, binding_);
    const double step = period_value(binding_.period) / static_cast<double>(binding_.ints.at(Symbol::p));
    return theta_derivative(e.theta_index(),
                            ThetaArgument(complex{static_cast<double>(offset) * step, 0.0}, binding_.nome),
                            e.derivative());
  }

  const CoeffBinding& binding_;
  IntBinding scope_;
  ThetaGridCache* cache_;
};

void collect_free(const CoeffExpr& e, std::set<Symbol>& bound, std::set<Symbol>& out) {
  auto add_ints = [&](const IntExpr& i) {
    std::set<Symbol> symbols;
    i.collect_symbols(symbols);
    for (Symbol s : symbols) {
      if (!bound.contains(s)) out.insert(s);
    }
  };
  using Kind = CoeffExpr::Kind;
  if (e.kind() == Kind::IndexedProd || e.kind() == Kind::IndexedSum) {
    add_ints(e.ints()[0]);
    add_ints(e.ints()[1]);
    const bool was_bound = bound.contains(e.var());
    bound.insert(e.var());
    if (e.except()) add_ints(*e.except());
    collect_free(e.children()[0], bound, out);
    if (!was_bound) bound.erase(e.var());
    return;
  }
  for (const auto& i : e.ints()) add_ints(i);
  if (e.kind() == Kind::ThetaAt && !e.ints()[0].is_zero_constant()) out.insert(Symbol::p);
  for (const auto& child : e.children()) collect_free(child, bound, out);
}

}  // namespace

complex eval_expr(const CoeffExpr& expr, const CoeffBinding& binding, ThetaGridCache* cache) {
  return Evaluator(binding, cache).eval(expr);
}

std::set<Symbol> all_free_symbols(const CoeffExpr& expr) {
  std::set<Symbol> bound;
  std::set<Symbol> all;
  collect_free(expr, bound, all);
  return all;
}

std::set<Symbol> free_symbols(const CoeffExpr& expr) {
  std::set<Symbol> all = all_free_symbols(expr);
  all.erase(Symbol::n);
  all.erase(Symbol::k);
  return all;
}

}  // namespace theta_idents
