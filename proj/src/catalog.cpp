#include "theta_idents/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "theta_idents/errors.hpp"

namespace theta_idents {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::MI1: return "MI-I";
    case Family::MI1Alt: return "MI-I-alt";
    case Family::MI2: return "MI-II";
    case Family::MI2Alt: return "MI-II-alt";
    case Family::MI3: return "MI-III";
    case Family::MI4: return "MI-IV";
    case Family::Transform: return "Transform";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::MI1, Family::MI1Alt, Family::MI2, Family::MI2Alt, Family::MI3, Family::MI4,
                   Family::Transform}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

bool is_alternating_family(Family family) { return family == Family::MI1Alt || family == Family::MI2Alt; }

std::string_view status_name(Status status) {
  switch (status) {
    case Status::Verified: return "Verified";
    case Status::Erratum: return "Erratum";
    case Status::Unchecked: return "Unchecked";
  }
  return "?";
}

std::string_view map_name(ModularMapKind kind) {
  return kind == ModularMapKind::MinusInverse ? "minus-inverse" : "over-one-minus";
}

const IdentitySpec* find_identity(const Catalog& catalog, std::string_view id) {
  for (const auto& spec : catalog) {
    if (spec.id == id) return &spec;
  }
  return nullptr;
}

IntBinding ParamBinding::to_ints() const {
  IntBinding b;
  b.set(Symbol::p, p);
  if (r != 0) b.set(Symbol::r, r);
  if (s != 0) b.set(Symbol::s, s);
  if (t != 0) b.set(Symbol::t, t);
  if (l != 0) b.set(Symbol::l, l);
  return b;
}

namespace {

std::vector<const CyclicSum*> all_sums(const IdentitySpec& spec) {
  std::vector<const CyclicSum*> out;
  for (const auto& s : spec.lhs) out.push_back(&s);
  for (const auto& term : spec.rhs) {
    if (term.sum) out.push_back(&*term.sum);
  }
  return out;
}

// Symbols of an integer expression, with an optional bound index variable removed.
void collect_int(const IntExpr& e, std::set<Symbol>& out, std::optional<Symbol> bound = std::nullopt) {
  std::set<Symbol> syms;
  e.collect_symbols(syms);
  if (bound) syms.erase(*bound);
  out.insert(syms.begin(), syms.end());
}

void collect_sum_symbols(const CyclicSum& sum, std::set<Symbol>& out) {
  for (const auto& f : sum.factors) collect_int(f.offset, out);
  if (sum.chain) {
    collect_int(sum.chain->factor.offset, out, Symbol::n);
    collect_int(sum.chain->length, out);
  }
}

bool parity_ok(Parity parity, long long v) {
  switch (parity) {
    case Parity::Any: return true;
    case Parity::Even: return v % 2 == 0;
    case Parity::Odd: return v % 2 != 0;
  }
  return true;
}

std::string check_factor(const RatioFactor& f) {
  switch (f.kind) {
    case FactorKind::LogDerivative:
      if (f.numerator != ThetaIndex::Four || f.denominator != ThetaIndex::Four || f.power != 1) {
        return "log-derivative factor must be theta_4'/theta_4 to the first power";
      }
      return {};
    case FactorKind::Ratio:
      if (f.power < 1) return "ratio factor power must be >= 1";
      return {};
    case FactorKind::Theta:
      if (f.power == 0) return "theta factor power must be non-zero";
      return {};
  }
  return {};
}

}  // namespace

std::vector<CoeffExpr> coefficient_expressions(const IdentitySpec& spec) {
  std::vector<CoeffExpr> out;
  for (const auto& term : spec.rhs) {
    if (term.coeff) out.push_back(*term.coeff);
  }
  return out;
}

std::vector<std::string> validate(const IdentitySpec& spec) {
  std::vector<std::string> diags;
  auto add = [&](std::string msg) {
    if (std::find(diags.begin(), diags.end(), msg) == diags.end()) diags.push_back(std::move(msg));
  };

  if (spec.id.empty()) add("empty id");

  const Family fam = spec.family;
  if ((fam == Family::MI1 || fam == Family::MI1Alt || fam == Family::MI2 || fam == Family::MI2Alt) &&
      spec.period != Period::Pi) {
    add("family/period mismatch");
  }
  if ((fam == Family::MI3 || fam == Family::MI4) && spec.period != Period::TwoPi) {
    add("family/period mismatch");
  }

  if (fam == Family::Transform) {
    if (!spec.relation) add("transform entry without relation");
    if (!spec.lhs.empty() || !spec.rhs.empty()) add("transform entry with cyclic sums");
    return diags;
  }
  if (spec.relation) add("relation on a cyclic entry");

  const auto& c = spec.constraints;
  if (is_alternating_family(fam) && c.p_parity != Parity::Even) add("alternating family must constrain p even");
  if ((fam == Family::MI3 || fam == Family::MI4) && c.p_parity != Parity::Odd) {
    add("MI-III/MI-IV family must constrain p odd");
  }
  if (c.p_min < 2) add("p_min must be >= 2");
  if (c.ordered_rs && !(c.symbols.count(Symbol::r) && c.symbols.count(Symbol::s))) {
    add("ordered r < s without both r and s");
  }
  for (Symbol sym : c.symbols) {
    if (sym != Symbol::r && sym != Symbol::s && sym != Symbol::t) {
      add("constraint symbol " + std::string(symbol_name(sym)) + " is not a shift multiplier");
    }
  }

  if (spec.lhs.empty()) add("empty left side");
  if (spec.rhs.empty()) add("empty right side");

  int mean_value_terms = 0;
  bool uses_chain = false;
  for (const auto& term : spec.rhs) {
    switch (term.kind) {
      case RhsKind::Zero:
        if (term.coeff || term.sum) add("Zero term carries a payload");
        break;
      case RhsKind::WeightedSum:
        if (!term.coeff || !term.sum) add("weighted sum needs a coefficient and a sum");
        break;
      case RhsKind::PConstant:
        if (!term.coeff || term.sum) add("p-constant term needs exactly a coefficient");
        break;
      case RhsKind::MeanValueIntegral:
        ++mean_value_terms;
        if (!term.sum || term.coeff) add("mean-value term needs exactly an integrand");
        break;
    }
  }
  if (mean_value_terms > 1) add("more than one mean-value integral");

  for (const CyclicSum* sum : all_sums(spec)) {
    if (sum->factors.empty() && !sum->chain) add("empty cyclic sum");
    if (sum->product_form && sum->alternating) add("product form cannot alternate");
    if (sum->alternating && !is_alternating_family(fam)) add("alternating sum in a non-alternating family");
    for (const auto& f : sum->factors) {
      if (auto err = check_factor(f); !err.empty()) add(err);
    }
    if (sum->chain) {
      uses_chain = true;
      if (auto err = check_factor(sum->chain->factor); !err.empty()) add(err);
    }
  }

  // Free symbols: offsets, chain lengths and coefficients.
  std::set<Symbol> used;
  for (const CyclicSum* sum : all_sums(spec)) collect_sum_symbols(*sum, used);
  for (const auto& coeff : coefficient_expressions(spec)) {
    auto syms = all_free_symbols(coeff);
    used.insert(syms.begin(), syms.end());
  }
  for (Symbol sym : used) {
    switch (sym) {
      case Symbol::p: break;
      case Symbol::r:
      case Symbol::s:
      case Symbol::t:
        if (!c.symbols.count(sym)) add("unconstrained symbol " + std::string(symbol_name(sym)));
        break;
      case Symbol::l:
        if (!c.length) add("unconstrained symbol l");
        break;
      case Symbol::n:
      case Symbol::k: add("unbound index variable " + std::string(symbol_name(sym))); break;
    }
  }
  if (c.length && !used.count(Symbol::l)) add("length constraint without l");
  if (c.length && c.length->min < 1) add("length minimum must be >= 1");
  if (uses_chain && !c.length) add("chain without length constraint");

  if (spec.status == Status::Erratum && spec.corrected_by.empty()) add("erratum without a corrected sibling");
  return diags;
}

std::vector<std::string> validate_catalog(const Catalog& catalog) {
  std::vector<std::string> diags;
  std::set<std::string> ids;
  for (const auto& spec : catalog) {
    if (!ids.insert(spec.id).second) diags.push_back(spec.id + ": duplicate id");
    for (const auto& d : validate(spec)) diags.push_back(spec.id + ": " + d);
  }
  for (const auto& spec : catalog) {
    if (!spec.corrected_by.empty()) {
      const IdentitySpec* sibling = find_identity(catalog, spec.corrected_by);
      if (!sibling) {
        diags.push_back(spec.id + ": corrected_by names unknown id " + spec.corrected_by);
      } else if (sibling->corrects != spec.id) {
        diags.push_back(spec.id + ": sibling " + sibling->id + " does not point back");
      } else if (sibling->status == Status::Erratum) {
        diags.push_back(spec.id + ": correction " + sibling->id + " is itself an erratum");
      }
    }
    if (!spec.corrects.empty() && !find_identity(catalog, spec.corrects)) {
      diags.push_back(spec.id + ": corrects names unknown id " + spec.corrects);
    }
  }
  return diags;
}

namespace {

int length_upper(const LengthConstraint& lc, int p) {
  int upper = lc.cap;
  if (lc.upper == UpperBound::LessEqualP) upper = std::min(upper, p);
  if (lc.upper == UpperBound::LessThanP) upper = std::min(upper, p - 1);
  return upper;
}

}  // namespace

std::string check_binding(const IdentitySpec& spec, const ParamBinding& b) {
  const auto& c = spec.constraints;
  if (b.p < 2) return "p must be >= 2";
  if (!parity_ok(c.p_parity, b.p)) return c.p_parity == Parity::Even ? "p must be even" : "p must be odd";
  if (b.p < c.p_min) return "p must be >= " + std::to_string(c.p_min);
  const std::pair<Symbol, int> mults[] = {{Symbol::r, b.r}, {Symbol::s, b.s}, {Symbol::t, b.t}};
  std::vector<int> values;
  for (auto [sym, v] : mults) {
    const std::string name(symbol_name(sym));
    if (c.symbols.count(sym)) {
      if (v < 1 || v >= b.p) return name + " must satisfy 1 <= " + name + " < p";
      if (std::gcd(v, b.p) != 1) return name + " must be coprime to p";
      if (std::find(values.begin(), values.end(), v) != values.end()) return "shift multipliers must be distinct";
      values.push_back(v);
    } else if (v != 0) {
      return name + " is not a parameter of " + spec.id;
    }
  }
  if (c.ordered_rs && b.r >= b.s) return "r < s required";
  if (c.length) {
    const auto& lc = *c.length;
    if (!parity_ok(lc.parity, b.l)) return "l has the wrong parity";
    if (b.l < lc.min) return "l must be >= " + std::to_string(lc.min);
    if (lc.upper == UpperBound::LessEqualP && b.l > b.p) return "l must be <= p";
    if (lc.upper == UpperBound::LessThanP && b.l >= b.p) return "l must be < p";
  } else if (b.l != 0) {
    return "l is not a parameter of " + spec.id;
  }
  return {};
}

std::vector<ParamBinding> enumerate_params(const IdentitySpec& spec, PRange range) {
  if (range.lo < 2 || range.hi > 64 || range.lo > range.hi) {
    throw DomainError("p range must lie within [2, 64]");
  }
  const auto& c = spec.constraints;
  std::vector<ParamBinding> out;
  for (int p = range.lo; p <= range.hi; ++p) {
    if (!parity_ok(c.p_parity, p) || p < c.p_min) continue;
    std::vector<int> units;
    for (int x = 1; x < p; ++x) {
      if (std::gcd(x, p) == 1) units.push_back(x);
    }
    auto choices = [&](Symbol sym) {
      return c.symbols.count(sym) ? units : std::vector<int>{0};
    };
    std::vector<int> ls{0};
    if (c.length) {
      ls.clear();
      for (int l = c.length->min; l <= length_upper(*c.length, p); ++l) {
        if (parity_ok(c.length->parity, l)) ls.push_back(l);
      }
    }
    for (int r : choices(Symbol::r)) {
      for (int s : choices(Symbol::s)) {
        for (int t : choices(Symbol::t)) {
          for (int l : ls) {
            ParamBinding b{p, r, s, t, l};
            if (check_binding(spec, b).empty()) out.push_back(b);
          }
        }
      }
    }
  }
  if (out.empty()) {
    throw EmptyParameterSpace("no admissible parameters for " + spec.id + " with p in [" + std::to_string(range.lo) +
                              ", " + std::to_string(range.hi) + "]");
  }
  return out;
}

}  // namespace theta_idents
