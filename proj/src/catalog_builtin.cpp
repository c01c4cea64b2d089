// The built-in identity table. Each entry is transcribed as printed; where the
// printed form fails numerically the entry is marked Erratum and followed by a
// corrected sibling whose id carries a trailing "c".
//
// Offsets count steps of T/p: th(2, r - s) is theta_2((r - s) T/p), i.e.
// theta_2([r-s] pi/p) for period pi and theta_2(2[r-s] pi/p) for period 2 pi.

#include <cctype>

#include "theta_idents/catalog.hpp"

namespace theta_idents {
namespace {

using E = CoeffExpr;
using Factors = std::vector<RatioFactor>;

const IntExpr p{Symbol::p};
const IntExpr r{Symbol::r};
const IntExpr s{Symbol::s};
const IntExpr t{Symbol::t};
const IntExpr l{Symbol::l};
const IntExpr n{Symbol::n};
const IntExpr k{Symbol::k};

E th(int i, const IntExpr& off) { return E::theta_at(theta_index(i), off); }
E th0(int i) { return th(i, 0); }
E dth(int i, const IntExpr& off) { return E::theta_at(theta_index(i), off, 1); }
E pw(const E& x, const IntExpr& e) { return E::pow(x, e); }
E sq(const E& x) { return pw(x, 2); }
E ab(const E& x) { return E::abs(x); }
E frac(long long a, long long b) { return E::rational(a, b); }
E sign(const IntExpr& e) { return E::sign_pow(e); }

// theta_a(off) / theta_b(off)
E R(int a, int b, const IntExpr& off) { return th(a, off) / th(b, off); }
// Jacobi sn, cn, dn of 2K x / pi and theta_4' / theta_4, written through theta values at x = off pi/p.
E jsn(const IntExpr& off) { return th0(3) * th(1, off) / (th0(2) * th(4, off)); }
E jcn(const IntExpr& off) { return th0(4) * th(2, off) / (th0(2) * th(4, off)); }
E jdn(const IntExpr& off) { return th0(4) * th(3, off) / (th0(3) * th(4, off)); }
E logd4(const IntExpr& off) { return dth(4, off) / th(4, off); }

RatioFactor f(int num, const IntExpr& off = 0, int power = 1) {
  RatioFactor rf;
  rf.numerator = theta_index(num);
  rf.offset = off;
  rf.power = power;
  return rf;
}

// A bare theta factor; only needed to keep a misprinted left side verbatim.
RatioFactor bare(int num, const IntExpr& off, int power) {
  RatioFactor rf = f(num, off, power);
  rf.kind = FactorKind::Theta;
  rf.denominator = theta_index(num);
  return rf;
}

RatioFactor logd() {
  RatioFactor rf;
  rf.kind = FactorKind::LogDerivative;
  rf.numerator = ThetaIndex::Four;
  rf.denominator = ThetaIndex::Four;
  return rf;
}

CyclicSum sum(Factors fs, bool alternating = false) {
  CyclicSum cs;
  cs.factors = std::move(fs);
  cs.alternating = alternating;
  return cs;
}
CyclicSum alt(Factors fs) { return sum(std::move(fs), true); }

CyclicSum product(Factors fs) {
  CyclicSum cs = sum(std::move(fs));
  cs.product_form = true;
  return cs;
}

// Product of `tmpl` over n = 0 .. length-1.
CyclicSum chain(const RatioFactor& tmpl, const IntExpr& length, bool alternating = false) {
  CyclicSum cs;
  cs.chain = Chain{tmpl, length};
  cs.alternating = alternating;
  return cs;
}

Factors concat(Factors a, const Factors& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Factors mirrored(Factors fs) {
  for (auto& f : fs) f.offset = -f.offset;
  return fs;
}

// SUM_j g(z_j) [h(z_{j+..}) + h(z_{j-..})]
std::vector<CyclicSum> bracket(const Factors& g, const Factors& h, bool alternating = false) {
  return {sum(concat(g, h), alternating), sum(concat(g, mirrored(h)), alternating)};
}

RhsTerm ws(const E& coeff, CyclicSum cs) { return {RhsKind::WeightedSum, coeff, std::move(cs)}; }
RhsTerm pconst(const E& coeff) { return {RhsKind::PConstant, coeff, std::nullopt}; }
RhsTerm zero() { return {RhsKind::Zero, std::nullopt, std::nullopt}; }
RhsTerm mean_value(CyclicSum integrand) { return {RhsKind::MeanValueIntegral, std::nullopt, std::move(integrand)}; }

// Common right-hand cyclic sums.
CyclicSum S3() { return sum({f(3)}); }
CyclicSum S1() { return sum({f(1)}); }
CyclicSum S2() { return sum({f(2)}); }
CyclicSum S12() { return sum({f(1), f(2)}); }
CyclicSum S13() { return sum({f(1), f(3)}); }
CyclicSum S23() { return sum({f(2), f(3)}); }
CyclicSum S123() { return sum({f(1), f(2), f(3)}); }
CyclicSum S33() { return sum({f(3, 0, 2)}); }
CyclicSum Alt(Factors fs) { return alt(std::move(fs)); }
CyclicSum AltLog() { return alt({logd()}); }

// Product over n = 1..l, n != k, of theta_a([n-k] r) / theta_1([n-k] r).
E chain_product(int a) {
  return E::indexed_prod(Symbol::n, 1, l, IntExpr(k), R(a, 1, (n - k) * r));
}

// t is free in every entry this is applied to.
E swap_rs(const E& x) { return x.substitute(Symbol::r, t).substitute(Symbol::s, r).substitute(Symbol::t, s); }

class Table {
 public:
  Table(Family family, Period period, std::string prefix)
      : family_(family), period_(period), prefix_(std::move(prefix)) {}

  IdentitySpec& add(const std::string& eq, std::vector<CyclicSum> lhs, std::vector<RhsTerm> rhs,
                    std::set<Symbol> symbols = {}, bool ordered = false) {
    IdentitySpec spec;
    spec.id = prefix_ + "-" + (eq.size() == 1 || (eq.size() == 2 && !std::isdigit(eq[1])) ? "0" : "") + eq;
    spec.paper_eq = eq;
    spec.family = family_;
    spec.period = period_;
    spec.lhs = std::move(lhs);
    spec.rhs = std::move(rhs);
    spec.constraints.symbols = std::move(symbols);
    spec.constraints.ordered_rs = ordered;
    if (is_alternating_family(family_)) spec.constraints.p_parity = Parity::Even;
    if (family_ == Family::MI3 || family_ == Family::MI4) spec.constraints.p_parity = Parity::Odd;
    spec.status = Status::Verified;
    entries_.push_back(std::move(spec));
    return entries_.back();
  }

  // Marks the last entry as misprinted and appends the corrected sibling.
  IdentitySpec& correct(const std::string& note, std::vector<CyclicSum> lhs, std::vector<RhsTerm> rhs) {
    IdentitySpec fixed = entries_.back();
    IdentitySpec& printed = entries_.back();
    printed.status = Status::Erratum;
    printed.corrected_by = printed.id + "c";
    printed.note = note;
    fixed.id = printed.id + "c";
    fixed.corrects = printed.id;
    fixed.note = "corrected: " + note;
    fixed.lhs = std::move(lhs);
    fixed.rhs = std::move(rhs);
    entries_.push_back(std::move(fixed));
    return entries_.back();
  }

  // Corrected sibling whose coefficients exchange r and s.
  IdentitySpec& correct_swapped_rs(const std::string& note) {
    std::vector<RhsTerm> rhs = entries_.back().rhs;
    for (auto& term : rhs) {
      if (term.coeff) term.coeff = swap_rs(*term.coeff);
    }
    return correct(note, entries_.back().lhs, std::move(rhs));
  }

  // Corrected sibling whose i-th coefficient is multiplied by a missing factor.
  IdentitySpec& correct_scaled(const std::string& note, std::vector<std::pair<std::size_t, E>> factors) {
    std::vector<RhsTerm> rhs = entries_.back().rhs;
    for (auto& [i, factor] : factors) rhs.at(i).coeff = *rhs.at(i).coeff * factor;
    return correct(note, entries_.back().lhs, std::move(rhs));
  }

  IdentitySpec& last() { return entries_.back(); }
  Catalog take() { return std::move(entries_); }

 private:
  Family family_;
  Period period_;
  std::string prefix_;
  Catalog entries_;
};

const RhsTerm kZero = zero();

void add_mi1(Catalog& out) {
  Table tb(Family::MI1, Period::Pi, "MI1");
  const std::set<Symbol> R1{Symbol::r};
  const std::set<Symbol> RS{Symbol::r, Symbol::s};

  tb.add("5", {sum({f(3), f(3, 1), f(3, 2)})},
         {ws(R(2, 1, 1) * (R(2, 1, 1) - 2 * R(2, 1, 2)), S3())})
      .constraints.p_min = 3;

  tb.add("7", bracket({f(1)}, {f(2, r)}), {kZero}, R1);

  {
    const E first = E::indexed_prod(Symbol::k, 1, (l - 1) / 2, std::nullopt, sq(R(2, 1, r * k)));
    const E second = 2 * sign((l - 1) / 2) * pw(th0(4) / th0(3), (l - 1) * (l - 3) / 2) *
                     E::indexed_sum(Symbol::k, 1, (l - 1) / 2, std::nullopt, chain_product(2));
    auto& e = tb.add("8", {chain(f(3, n * r), l)}, {ws(first + second, S3())}, R1);
    e.constraints.length = LengthConstraint{Parity::Odd, 3, UpperBound::LessEqualP, 7};
    const E unscaled = 2 * sign((l - 1) / 2) * E::indexed_sum(Symbol::k, 1, (l - 1) / 2, std::nullopt, chain_product(2));
    tb.correct("spurious factor (theta_4(0) / theta_3(0))^((l-1)(l-3)/2), invisible at l = 3", tb.last().lhs,
               {ws(first + unscaled, S3())});
  }

  tb.add("9", {product({f(3)})},
         {ws(E::indexed_prod(Symbol::n, 1, (p - 1) / 2, std::nullopt, sq(R(2, 1, n))), S3())});
  tb.last().constraints.p_parity = Parity::Odd;
  tb.last().constraints.p_min = 3;

  tb.add("10", bracket({f(3, 0, 2)}, {f(3, r)}),
         {ws(2 * (sq(th0(2)) / (th0(3) * th0(4)) * th(3, r) * th(4, r) / sq(th(1, r)) - sq(R(2, 1, r))), S3())},
         R1);

  tb.add("11", bracket({f(2)}, {f(2, r), f(3, r)}),
         {ws(-2 * (th0(3) / th0(2)) * R(2, 1, r) * (R(3, 1, r) - th0(3) / th0(4) * R(4, 1, r)), S3())}, R1);

  tb.add("12", bracket({f(1)}, {f(1, r), f(3, r)}),
         {ws(-2 * sq(th0(4)) / (th0(2) * th0(3)) * R(2, 1, r) * (R(3, 1, r) - th0(3) / th0(4) * R(4, 1, r)), S3())},
         R1);

  tb.add("13", bracket({f(3)}, {f(3, r), f(3, s)}),
         {ws(-2 * (R(2, 1, r) * R(2, 1, s) + R(2, 1, r - s) * (R(2, 1, r) - R(2, 1, s))), S3())}, RS, true);

  tb.add("14", bracket({f(3)}, {f(2, r), f(2, s)}),
         {ws(-2 * (th(3, r) * th(3, s) / (th(1, r) * th(1, s)) +
                   th(3, r - s) * th0(3) / (th(1, r - s) * th0(2)) * (R(2, 1, r) - R(2, 1, s))),
             S3())},
         RS, true);

  tb.add("15", bracket({f(3)}, {f(1, r), f(1, s)}),
         {ws(2 * (th(4, r) * th(4, s) / (th(1, r) * th(1, s)) +
                  th(4, r - s) * th0(4) / (th(1, r - s) * th0(2)) * (R(2, 1, r) - R(2, 1, s))),
             S3())},
         RS, true);

  tb.add("16", bracket({f(2)}, {f(3, r), f(2, s)}),
         {ws(-2 * (th(3, r) * th0(3) / (th(1, r) * th0(2)) * (R(2, 1, s) + R(2, 1, r - s)) -
                   th(3, r - s) * th(3, s) / (th(1, r - s) * th(1, s))),
             S3())},
         RS);
  tb.correct_swapped_rs("coefficient carries r and s in exchanged roles");

  tb.add("17", bracket({f(1)}, {f(3, r), f(1, s)}),
         {ws(2 * (th(4, r) * th0(4) / (th(1, r) * th0(2)) * (R(2, 1, s) + R(2, 1, r - s)) -
                  th(4, r - s) * th(4, s) / (th(1, r - s) * th(1, s))),
             S3())},
         RS);
  tb.correct_swapped_rs("coefficient carries r and s in exchanged roles");

  {
    const E a = th0(3) * th0(4) / sq(th0(2)) *
                (th(2, r) * th(2, t) * th(3, s) * th(4, r) / (sq(th(1, r)) * th(1, t) * th(1, s)) +
                 th(2, s) * th(2, t) * th(3, r) * th(4, s) / (sq(th(1, s)) * th(1, t) * th(1, r)));
    const E b = th0(4) / th0(3) * th(3, r) * th(3, s) * th(3, t) * th(4, t) / (sq(th(1, t)) * th(1, r) * th(1, s));
    const E c = th(3, r - t) * th(3, s - t) * sq(th(4, s)) / (sq(th(1, s)) * th(1, r - t) * th(1, s - t));
    const E d = th0(3) / th0(2) *
                (th(2, r - t) * th(3, r - s) * sq(th(4, r)) / (sq(th(1, r)) * th(1, r - t) * th(1, r - s)) +
                 th(2, t - s) * th(3, r - s) * sq(th(4, s)) / (sq(th(1, s)) * th(1, t - s) * th(1, r - s)));
    tb.add("18", bracket({f(1, 0, 2)}, {f(2, r), f(2, s), f(3, t)}), {ws(2 * (a + b - c - d), S3())},
           {Symbol::r, Symbol::s, Symbol::t}, true);
    const E c_fixed = th(3, r - t) * th(3, s - t) * sq(th(4, t)) / (sq(th(1, t)) * th(1, r - t) * th(1, s - t));
    tb.correct("theta_4^2(s pi/p) / theta_1^2(s pi/p) in the third term read as theta_4^2(t pi/p) / theta_1^2(t pi/p)",
               tb.last().lhs, {ws(2 * (a + b - c_fixed - d), S3())});
  }

  tb.add("19", bracket({f(3, 0, 2)}, {f(2, r), f(1, r)}),
         {ws(-2 * sq(R(2, 1, r)) *
                 (1 + sq(th0(2)) * th(3, r) * th(4, r) / (sq(th(2, r)) * th0(3) * th0(4))),
             S12())},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0

  tb.add("6", bracket({f(1), f(2), f(3)}, {f(3, r)}),
         {ws(sq(th0(2)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r))), S12())}, R1);
  tb.correct_scaled("missing overall factor 2", {{0, frac(2, 1)}});

  tb.add("20", bracket({f(1), f(3)}, {f(2, r), f(3, r)}),
         {ws(-2 * th0(2) * th(2, r) / sq(th(1, r)) * (th(4, r) / th0(4) + th(3, r) / th0(3)), S12())}, R1);

  tb.add("20a", bracket({f(2)}, {f(1, r, 3)}),
         {ws(-2 * th0(4) * th(2, r) * th(4, r) / (th0(2) * sq(th(1, r))), S12())}, R1);

  tb.add("20b", bracket({f(1)}, {f(2, r, 3)}),
         {ws(2 * th0(3) * th(2, r) * th(3, r) / (th0(2) * sq(th(1, r))), S12())}, R1);

  tb.add("21", bracket({f(1), f(2)}, {f(3, r), f(3, s)}),
         {ws(-2 * th(2, r) * th(2, s) / (th(1, r) * th(1, s)), S12())}, RS, true);
  tb.add("22", bracket({f(1), f(2)}, {f(2, r), f(2, s)}),
         {ws(-2 * th(3, r) * th(3, s) / (th(1, r) * th(1, s)), S12())}, RS, true);
  tb.add("23", bracket({f(1), f(2)}, {f(1, r), f(1, s)}),
         {ws(2 * th(4, r) * th(4, s) / (th(1, r) * th(1, s)), S12())}, RS, true);
  tb.add("24", bracket({f(2), f(3)}, {f(1, r), f(3, s)}),
         {ws(-2 * th0(2) * th(4, r) * th(2, s) / (th0(4) * th(1, r) * th(1, s)), S12())}, RS);
  tb.add("24a", bracket({f(1), f(3)}, {f(2, r), f(3, s)}),
         {ws(-2 * th0(2) * th(3, r) * th(2, s) / (th0(3) * th(1, r) * th(1, s)), S12())}, RS);

  const E x34 = th(3, r) * th(4, r) / (th0(3) * th0(4));  // theta_3 theta_4 (r) over the same at 0
  const E mixed = sq(th0(2)) * sq(th(3, r)) * sq(th(4, r)) / (sq(th(2, r)) * sq(th0(3)) * sq(th0(4)));

  tb.add("25", bracket({f(1), f(2), f(3)}, {f(3, r, 3)}),
         {ws(frac(-2, 3) * sq(th0(2)) * sq(th(2, r)) / pw(th(1, r), 4) *
                 (sq(th(4, r)) / sq(th0(4)) + mixed + sq(th(3, r)) / sq(th0(3)) + 3 * x34),
             S12())},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0
  tb.correct_scaled("overall factor -2/3 read as -2", {{0, frac(3, 1)}});

  tb.add("26", bracket({f(3, 0, 4)}, {f(3, r)}),
         {ws(2 * sq(th0(2)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r))), sum({f(3, 0, 3)})),
          ws(2 * pw(R(2, 1, r), 4) * (1 - sq(th0(2)) * th(3, r) * th(4, r) / (sq(th(2, r)) * th0(3) * th0(4))),
             S3())},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0

  tb.add("27", bracket({f(3, 0, 3)}, {f(3, r, 2)}),
         {ws(-2 * sq(R(2, 1, r)), sum({f(3, 0, 3)})),
          ws(2 * sq(th0(2)) * sq(th(2, r)) / pw(th(1, r), 4) *
                 (sq(th(4, r)) / sq(th0(4)) + sq(th(3, r)) / sq(th0(3)) + mixed - 3 * x34),
             S3())},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0

  tb.add("28", bracket({f(3, 0, 4)}, {f(1, r), f(2, r)}),
         {ws(-2 * sq(th0(2)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r))),
             sum({f(1), f(2), f(3, 0, 2)})),
          ws(2 * pw(R(2, 1, r), 4) * (1 + 3 * sq(th0(2)) * th(3, r) * th(4, r) / (sq(th(2, r)) * th0(3) * th0(4))),
             S12())},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0

  tb.add("29", bracket({f(3, 0, 4)}, {f(1, r), f(2, s)}),
         {ws(-2 * sq(th0(2)) * th(4, r) * th(3, s) / (th0(3) * th0(4) * th(1, r) * th(1, s)),
             sum({f(1), f(2), f(3, 0, 2)})),
          ws(2 * sq(th0(2)) / (th0(3) * th0(4)) *
                 (th(2, r) * th(2, s) * th(3, r) * th(4, s) / (sq(th(1, r)) * sq(th(1, s))) +
                  th(3, s) * th(4, r) / (th(1, r) * th(1, s)) * (sq(R(2, 1, r)) + sq(R(2, 1, s)))),
             S12())},
         RS);

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

void add_mi1_alt(Catalog& out) {
  Table tb(Family::MI1Alt, Period::Pi, "MI1A");
  const std::set<Symbol> R1{Symbol::r};
  const std::set<Symbol> RS{Symbol::r, Symbol::s};
  const bool A = true;

  tb.add("32", bracket({f(1)}, {f(2, 1)}, A), {kZero});

  tb.add("34", {alt({f(3), f(3, r), f(3, 2 * r)})},
         {ws(-(sq(R(2, 1, r)) + 2 * th(2, r) * th(2, 2 * r) / (th(1, r) * th(1, 2 * r))), Alt({f(3)}))}, R1)
      .constraints.p_min = 4;

  tb.add("35", {alt({f(3), f(3, r), f(3, s)})},
         {ws(-(th(2, r) * th(2, s) / (th(1, r) * th(1, s)) - th(2, r) * th(2, r - s) / (th(1, r) * th(1, r - s)) -
               th(2, s) * th(2, s - r) / (th(1, s) * th(1, s - r))),
             Alt({f(3)}))},
         RS, true);

  tb.add("31", bracket({f(3, 0, 2)}, {f(3, r)}, A),
         {ws(2 * sq(th0(2)) / sq(th(1, r)) * (th(3, r) * th(4, r) / (th0(3) * th0(4)) + sq(th(2, r)) / sq(th0(2))),
             Alt({f(3)}))},
         R1);

  tb.add("36a", bracket({f(2)}, {f(2, r), f(3, r)}, A),
         {ws(-2 * sq(th0(3)) * th(2, r) / (th0(2) * sq(th(1, r))) * (th(3, r) / th0(3) + th(4, r) / th0(4)),
             Alt({f(3)}))},
         R1);

  tb.add("37", bracket({f(1)}, {f(1, r), f(3, r)}, A),
         {ws(2 * sq(th0(3)) * th(2, r) / (th0(2) * sq(th(1, r))) * (th(3, r) / th0(3) + th(4, r) / th0(4)),
             Alt({f(3)}))},
         R1);
  tb.correct_scaled("prefactor theta_3^2(0) read as theta_4^2(0)", {{0, sq(th0(4)) / sq(th0(3))}});

  tb.add("38", bracket({f(3, 0, 2)}, {f(1, r), f(2, r)}, A),
         {ws(2 * sq(th0(2)) / sq(th(1, r)) * (sq(th(2, r)) / sq(th0(2)) - th(3, r) * th(4, r) / (th0(3) * th0(4))),
             Alt({f(1), f(2)}))},
         R1);

  tb.add("38a", bracket({f(1), f(3)}, {f(2, r), f(3, r)}, A),
         {ws(-2 * th0(2) * th(2, r) / sq(th(1, r)) * (th(3, r) / th0(3) + th(4, r) / th0(4)), Alt({f(1), f(2)}))},
         R1);
  tb.correct("sign of the theta_4 term inside the bracket", tb.last().lhs,
             {ws(-2 * th0(2) * th(2, r) / sq(th(1, r)) * (th(3, r) / th0(3) - th(4, r) / th0(4)), Alt({f(1), f(2)}))});

  tb.add("33", bracket({f(1), f(2), f(3)}, {f(3, 1)}, A),
         {ws(2 * sq(th0(2)) * th(3, 1) * th(4, 1) / (th0(3) * th0(4) * sq(th(1, 1))), Alt({f(1), f(2)}))});

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

void add_mi2(Catalog& out) {
  Table tb(Family::MI2, Period::Pi, "MI2");
  const std::set<Symbol> R1{Symbol::r};
  const std::set<Symbol> RS{Symbol::r, Symbol::s};
  const E P = E::int_value(p);
  (void)P;

  tb.add("39", {sum({f(3), f(3, r)})},
         {pconst(th0(3) * th(3, r) / (th0(4) * th(4, r)) *
                 (1 - dth(4, r) * ab(th(2, r)) / (sq(th0(3)) * th(3, r) * ab(th(1, r)))))},
         R1);
  tb.correct("absolute values read as signed values, so the constant has the parity of the left side under r -> p - r", tb.last().lhs,
             {pconst(th0(3) * th(3, r) / (th0(4) * th(4, r)) *
                     (1 - dth(4, r) * th(2, r) / (sq(th0(3)) * th(3, r) * th(1, r))))});

  tb.add("40", {sum({f(1), f(1, r)})},
         {pconst(dth(4, r) * th(2, r) / (th0(2) * th0(3) * ab(th(1, r) * th(2, r))))}, R1);
  tb.correct("absolute values read as signed values, so the constant has the parity of the left side under r -> p - r", tb.last().lhs,
             {pconst(dth(4, r) / (th0(2) * th0(3) * th(1, r)))});

  tb.add("41", {sum({f(2), f(2, r)})},
         {pconst(th0(2) * th(2, r) / (th0(4) * th(4, r)) *
                 (1 - th(3, r) * dth(4, r) / (sq(th0(2)) * ab(th(1, r) * th(2, r)))))},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0
  tb.correct("absolute values read as signed values, so the constant has the parity of the left side under r -> p - r", tb.last().lhs,
             {pconst(th0(2) * th(2, r) / (th0(4) * th(4, r)) *
                     (1 - th(3, r) * dth(4, r) / (sq(th0(2)) * th(1, r) * th(2, r))))});

  {
    auto& e = tb.add("42", {chain(f(3, n), l)}, {mean_value(chain(f(3, n), l))});
    e.constraints.length = LengthConstraint{Parity::Even, 2, UpperBound::LessThanP, 6};
  }

  tb.add("43", bracket({f(2), f(3)}, {f(1, r)}), {kZero}, R1);
  tb.add("44", bracket({f(1), f(3)}, {f(2, r)}), {kZero}, R1);
  tb.add("46", bracket({f(1), f(2)}, {f(3, r)}), {kZero}, R1);
  tb.add("45", bracket({f(2)}, {f(1, s), f(3, r)}), {kZero}, RS);

  tb.add("47", {sum({f(3, 0, 2), f(3, r, 2)})},
         {ws(-2 * sq(R(2, 1, r)), S33()),
          pconst(sq(th0(3)) * sq(th(2, r)) / (sq(th0(4)) * sq(th(1, r))) +
                 pw(th0(3), 4) * sq(th(3, r)) / (sq(th0(2)) * sq(th0(4)) * sq(th(1, r))) -
                 2 * sq(th0(2)) * th(2, r) * th(3, r) * dth(4, r) / (sq(th0(3)) * sq(th0(4)) * pw(th(1, r), 3)))},
         R1);
  tb.correct("constant term rebuilt from a numerical fit", tb.last().lhs,
             {tb.last().rhs[0],
              pconst(1 + 2 * sq(th0(3)) * sq(th(2, r)) / (sq(th0(4)) * sq(th(1, r))) -
                     2 * sq(th0(2)) * th(2, r) * th(3, r) * dth(4, r) / (sq(th0(3)) * sq(th0(4)) * pw(th(1, r), 3)))});

  tb.add("48", bracket({f(1), f(2)}, {f(1, r), f(2, r)}),
         {ws(4 * th0(3) * th0(4) * th(3, r) * th(4, r) / (sq(th0(2)) * sq(th(1, r))), S33()),
          pconst(-2 * pw(th0(3), 4) * th(4, r) / (sq(th0(2)) * th0(4) * sq(th(1, r))) *
                 (1 + sq(th0(4)) * sq(th(3, r)) / (sq(th0(3)) * sq(th(4, r)))) *
                 (th(3, r) / th0(3) - th(2, r) * dth(4, r) / (pw(th0(3), 3) * th(1, r))))},
         R1);

  tb.add("49", bracket({f(2), f(3)}, {f(2, r), f(3, r)}),
         {ws(-4 * th0(3) * th(2, r) * th(3, r) / (th0(2) * sq(th(1, r))), S33()),
          pconst(2 * pw(th0(3), 4) / (sq(th0(4)) * sq(th(1, r))) *
                 (2 * th(3, r) * th(2, r) / (th0(2) * th0(3)) -
                  dth(4, r) * th0(2) / (th(1, r) * pw(th0(3), 3)) *
                      (sq(th(3, r)) / sq(th0(3)) + sq(th(2, r)) / sq(th0(2)))))},
         R1);

  tb.add("50", bracket({f(1), f(3)}, {f(1, r), f(3, r)}),
         {ws(4 * th0(4) * th(2, r) * th(4, r) / (th0(2) * sq(th(1, r))), S33()),
          pconst(-2 * pw(th0(4), 3) * th0(2) * th(2, r) / (sq(th0(3)) * sq(th(1, r)) * th(4, r)) *
                 ((sq(th(3, r)) / sq(th0(3)) + sq(th(4, r)) / sq(th0(4))) -
                  dth(4, r) * sq(th0(2)) * th(3, r) / (th(1, r) * pw(th0(3), 4) * th(2, r)) *
                      (sq(th(2, r)) / sq(th0(2)) + sq(th(4, r)) / sq(th0(4)))))},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0
  tb.correct("constant term rebuilt from a numerical fit", tb.last().lhs,
             {tb.last().rhs[0],
              pconst(-4 * pw(th0(3), 4) / (sq(th0(2)) * sq(th0(4))) * jcn(r) / sq(jsn(r)) +
                     2 * sq(th0(2)) / sq(th0(4)) * jcn(r) +
                     2 * sq(th0(3)) / (sq(th0(2)) * sq(th0(4))) * logd4(r) * jdn(r) *
                         (2 / pw(jsn(r), 3) - 1 / jsn(r)))});

  {
    const E bracket53 = th(3, r) / th0(3) - th(2, r) * dth(4, r) / (pw(th0(3), 3) * th(1, r));
    const E first = 2 * sq(th0(2)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r)));
    auto lhs = bracket({f(3, 0, 3)}, {f(3, r)});
    tb.add("53", lhs,
           {ws(first, S33()),
            pconst(-2 * sq(th0(3)) * sq(th(2, r)) / (th0(4) * th(4, r) * sq(th(1, 4))) * bracket53)},
           R1);
    tb.correct("theta_1^2(4 pi/p) in the constant term read as theta_1^2(r pi/p)", lhs,
               {ws(first, S33()),
                pconst(-2 * sq(th0(3)) * sq(th(2, r)) / (th0(4) * th(4, r) * sq(th(1, r))) * bracket53)});
  }

  tb.add("54", bracket({f(1, 0, 3)}, {f(1, r)}),
         {ws(2 * pw(th0(4), 4) * th(2, r) * th(3, r) / (pw(th0(2), 3) * th0(3) * sq(th(1, r))), S33()),
          pconst(-2 * sq(th0(3)) * sq(th0(4)) / (sq(th0(2)) * sq(th(1, r))) *
                 (th(3, r) * th(2, r) / (th0(3) * th0(2)) -
                  sq(th(4, r)) * dth(4, r) * th0(2) / (sq(th0(4)) * pw(th0(3), 3) * th(1, r))))},
         R1);

  tb.add("55", bracket({f(2, 0, 3)}, {f(2, r)}),
         {ws(2 * pw(th0(3), 4) * th(2, r) * th(4, r) / (pw(th0(2), 3) * th0(4) * sq(th(1, r))), S33()),
          pconst(2 * pw(th0(2), 3) * th0(4) * th(2, r) / (pw(th0(3), 4) * th(4, r)) *
                 (1 - pw(th0(3), 6) * sq(th(4, r)) / (pw(th0(2), 6) * sq(th(1, r))) +
                  pw(th(3, r), 3) * dth(4, r) * sq(th0(4)) / (pw(th0(2), 4) * th(2, r) * pw(th(1, r), 3))))},
         R1);
  tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0
  tb.correct("constant term rebuilt from a numerical fit", tb.last().lhs,
             {tb.last().rhs[0],
              pconst(-2 * pw(th0(3), 8) / (pw(th0(2), 4) * pw(th0(4), 4)) * jcn(r) / sq(jsn(r)) +
                     2 * pw(th0(2), 4) / pw(th0(4), 4) * jcn(r) +
                     2 * sq(th0(3)) / pw(th0(4), 4) * logd4(r) * jdn(r) *
                         (pw(th0(3), 4) / (pw(th0(2), 4) * pw(jsn(r), 3)) - 1 / jsn(r)))});

  tb.add("59", bracket({f(1), f(2), f(3)}, {f(3, r, 2)}),
         {ws(-2 * sq(th0(3)) * sq(th(2, r)) / (sq(th0(4)) * sq(th(1, r))), S123())}, R1);
  tb.correct_scaled("prefactor theta_3^2(0) / theta_4^2(0) read as 1", {{0, sq(th0(4)) / sq(th0(3))}});
  tb.add("60", bracket({f(1, 0, 2), f(2), f(3)}, {f(1, r)}),
         {ws(-2 * sq(th0(4)) * th(2, r) * th(3, r) / (th0(2) * th0(3) * sq(th(1, r))), S123())}, R1);
  tb.add("61", bracket({f(2, 0, 2), f(1), f(3)}, {f(2, r)}),
         {ws(2 * sq(th0(3)) * th(2, r) * th(4, r) / (th0(2) * th0(4) * sq(th(1, r))), S123())}, R1);
  tb.add("62", bracket({f(3, 0, 2), f(1), f(2)}, {f(3, r, 3)}),
         {ws(-4 * sq(th0(2)) * sq(th(2, r)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * pw(th(1, r), 4)), S123())},
         R1);
  tb.add("63", bracket({f(1, 0, 2), f(2), f(3)}, {f(1, r, 3)}),
         {ws(-4 * sq(th0(4)) * sq(th(4, r)) * th(3, r) * th(2, r) / (th0(2) * th0(3) * pw(th(1, r), 4)), S123())},
         R1);
  tb.add("64", bracket({f(2, 0, 2), f(1), f(3)}, {f(2, r, 3)}),
         {ws(-4 * sq(th0(3)) * sq(th(3, r)) * th(2, r) * th(4, r) / (th0(2) * th0(4) * pw(th(1, r), 4)), S123())},
         R1);

  {
    const E inner = sq(th(2, r)) / sq(th0(2)) -
                    sq(th0(2)) * sq(th(3, r)) * sq(th(4, r)) / (sq(th0(3)) * sq(th0(4)) * sq(th(2, r))) -
                    sq(th(3, r)) / sq(th0(3)) - sq(th(4, r)) / sq(th0(4));
    auto lhs = bracket({f(1), f(2), f(3)}, {f(3, r, 4)});
    tb.add("65", lhs, {ws(2 * sq(th0(2)) * sq(th(2, r)) / pw(th(1, 4), 4) * inner, S123())}, R1);
    tb.last().constraints.p_min = 3;  // theta_2(pi/2) = 0
    tb.correct("theta_1^4(4 pi/p) read as theta_1^4(r pi/p)", lhs,
               {ws(2 * sq(th0(2)) * sq(th(2, r)) / pw(th(1, r), 4) * inner, S123())});
  }

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

void add_mi2_alt(Catalog& out) {
  Table tb(Family::MI2Alt, Period::Pi, "MI2A");
  const std::set<Symbol> R1{Symbol::r};
  const bool A = true;

  tb.add("66", {alt({f(3), f(3, r)})}, {ws(2 / (th0(3) * th0(4)) * R(2, 1, r), AltLog())}, R1);
  tb.correct_scaled("overall sign", {{0, frac(-1, 1)}});
  tb.add("67", {alt({f(1), f(1, r)})}, {ws(2 / (th0(2) * th0(3)) * R(4, 1, r), AltLog())}, R1);
  tb.add("68", {alt({f(2), f(2, r)})}, {ws(-2 / (th0(2) * th0(4)) * R(3, 1, r), AltLog())}, R1);

  tb.add("69", {alt({f(3), f(3, r), f(3, 2 * r), f(3, 3 * r)})},
         {ws(2 / (th0(3) * th0(4)) *
                 (th(2, r) * th(2, 2 * r) * th(2, 3 * r) / (th(1, r) * th(1, 2 * r) * th(1, 3 * r)) +
                  sq(th(2, r)) * th(2, 2 * r) / (sq(th(1, r)) * th(1, 2 * r))),
             AltLog())},
         R1)
      .constraints.p_min = 6;

  const E ksum2 = E::indexed_sum(Symbol::k, 1, l / 2, std::nullopt, sign(k - 1) * chain_product(2));
  const E ksum4 = E::indexed_sum(Symbol::k, 1, l / 2, std::nullopt, sign(k - 1) * chain_product(4));
  const E ksum3 = E::indexed_sum(Symbol::k, 1, l / 2, std::nullopt, sign(k - 1) * chain_product(3));

  {
    auto& e = tb.add("70", {chain(f(3, n * r), l, A)}, {ws(sign(l / 2) * 2 / sq(th0(3)) * ksum2, AltLog())}, R1);
    e.constraints.length = LengthConstraint{Parity::Even, 2, UpperBound::LessThanP, 7};
    tb.correct_scaled("prefactor 2 / theta_3^2(0) read as 2 / (theta_3(0) theta_4(0))", {{0, th0(3) / th0(4)}});
  }
  {
    auto& e = tb.add("71", {chain(f(1, n * r), l, A)}, {ws(2 / sq(th0(3)) * ksum4, AltLog())}, R1);
    e.constraints.length = LengthConstraint{Parity::Even, 2, UpperBound::LessEqualP, 7};
    e.constraints.p_min = 4;
    tb.correct_scaled("prefactor 2 / theta_3^2(0) read as 2 / (theta_2(0) theta_3(0))", {{0, th0(3) / th0(2)}});
  }
  {
    auto& e = tb.add("72", {chain(f(2, n * r), l, A)},
                     {ws(sign(l / 2) * 2 / sq(th0(3)) * pw(th0(3) / th0(2), 2 * l) * ksum3, AltLog())}, R1);
    e.constraints.length = LengthConstraint{Parity::Even, 2, UpperBound::LessEqualP, 7};
    e.constraints.p_min = 4;
    tb.correct_scaled("prefactor 2 (theta_3(0) / theta_2(0))^(2l) / theta_3^2(0) read as 2 / (theta_2(0) theta_4(0))",
                      {{0, sq(th0(3)) / (th0(2) * th0(4)) * pw(th0(2) / th0(3), 2 * l)}});
  }

  tb.add("73", {product({f(1)})},
         {ws(1 / sq(th0(2)) * E::indexed_prod(Symbol::n, 1, (p - 2) / 2, std::nullopt, sq(R(4, 1, n))), AltLog())})
      .constraints.p_min = 4;
  tb.add("74", {product({f(2)})},
         {ws(sign(p / 2) / sq(th0(2)) * E::indexed_prod(Symbol::n, 1, (p - 2) / 2, std::nullopt, sq(R(3, 1, n))),
             AltLog())})
      .constraints.p_min = 4;

  tb.add("75", bracket({f(3)}, {f(1, r), f(2, r)}, A),
         {ws(-4 * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r))), AltLog())}, R1);
  tb.add("76", bracket({f(1)}, {f(2, r), f(3, r)}, A),
         {ws(-4 * th(2, r) * th(3, r) / (th0(2) * th0(3) * sq(th(1, r))), AltLog())}, R1);
  tb.add("77", bracket({f(2)}, {f(1, r), f(3, r)}, A),
         {ws(-4 * th(2, r) * th(4, r) / (th0(2) * th0(4) * sq(th(1, r))), AltLog())}, R1);

  tb.add("78", bracket({f(3, 0, 3)}, {f(3, r)}, A),
         {ws(2 * sq(th0(2)) * th0(3) * th(3, r) * th(4, r) / (pw(th0(4), 3) * sq(th(1, r))), Alt({f(3, 0, 2)}))},
         R1);
  tb.correct_scaled("prefactor theta_3(0) / theta_4^3(0) read as 1 / (theta_3(0) theta_4(0))", {{0, sq(th0(4)) / sq(th0(3))}});
  tb.add("78a", bracket({f(2, 0, 3)}, {f(2, r)}, A),
         {ws(2 * pw(th0(3), 4) * th(2, r) * th(4, r) / (pw(th0(2), 3) * th0(4) * sq(th(1, r))), Alt({f(3, 0, 2)}))},
         R1);
  tb.add("79", bracket({f(1, 0, 3)}, {f(1, r)}, A),
         {ws(2 * pw(th0(4), 4) * th(2, r) * th(3, r) / (pw(th0(2), 3) * th0(3) * sq(th(1, r))), Alt({f(3, 0, 2)}))},
         R1);

  tb.add("80", bracket({f(3, 0, 3)}, {f(1, r), f(2, r)}, A),
         {ws(-2 * sq(th0(2)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * sq(th(1, r))), Alt({f(1), f(2), f(3)})),
          ws(-12 * sq(th(2, r)) * th(3, r) * th(4, r) / (th0(3) * th0(4) * pw(th(1, r), 4)), AltLog())},
         R1);
  tb.correct_scaled("sign of the log-derivative term", {{1, frac(-1, 1)}});

  tb.add("81", bracket({f(2, 0, 2), f(1), f(3)}, {f(2, r)}, A),
         {ws(2 * sq(th0(3)) * th(2, r) * th(4, r) / (th0(2) * th0(4) * sq(th(1, r))), Alt({f(1), f(2), f(3)})),
          ws(-4 * sq(th(3, r)) * th(2, r) * th(4, r) / (th0(2) * th0(4) * pw(th(1, r), 4)), AltLog())},
         R1);

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

void add_mi3(Catalog& out) {
  Table tb(Family::MI3, Period::TwoPi, "MI3");
  const std::set<Symbol> R1{Symbol::r};
  const std::set<Symbol> RS{Symbol::r, Symbol::s};

  tb.add("83", bracket({f(2)}, {f(3, r)}), {kZero}, R1);

  {
    const E first = sign((l - 1) / 2) * E::indexed_prod(Symbol::k, 1, (l - 1) / 2, std::nullopt, sq(R(4, 1, r * k)));
    const E second = 2 * E::indexed_sum(Symbol::k, 1, (l - 1) / 2, std::nullopt, chain_product(4));
    auto& e = tb.add("84", {chain(f(1, n * r), l)}, {ws(first + second, S1())}, R1);
    e.constraints.length = LengthConstraint{Parity::Odd, 3, UpperBound::LessEqualP, 7};
  }

  tb.add("85", {product({f(1)})},
         {ws(sign((p - 1) / 2) * E::indexed_prod(Symbol::n, 1, (p - 1) / 2, std::nullopt, sq(R(4, 1, n))), S1())})
      .constraints.p_min = 3;

  tb.add("86", bracket({f(1, 0, 2)}, {f(1, r)}),
         {ws(-2 * sq(th0(4)) / sq(th(1, r)) * (th(2, r) * th(3, r) / (th0(2) * th0(3)) - sq(th(4, r)) / sq(th0(4))),
             S1())},
         R1);
  tb.add("87", bracket({f(2)}, {f(1, r), f(2, r)}),
         {ws(2 * sq(th0(3)) * th(4, r) / (th0(4) * sq(th(1, r))) * (th(2, r) / th0(2) - th(3, r) / th0(3)), S1())},
         R1);
  tb.add("88", bracket({f(3)}, {f(1, r), f(3, r)}),
         {ws(2 * sq(th0(2)) * th(4, r) / (th0(4) * sq(th(1, r))) * (th(3, r) / th0(3) - th(2, r) / th0(2)), S1())},
         R1);
  tb.add("89", bracket({f(1)}, {f(2, r), f(2, s)}),
         {ws(-2 * (th(3, r) * th(3, s) / (th(1, r) * th(1, s)) +
                   th0(3) / th0(4) * R(3, 1, r - s) * (R(4, 1, r) - R(4, 1, s))),
             S1())},
         RS, true);
  tb.add("90", bracket({f(1)}, {f(3, r), f(3, s)}),
         {ws(-2 * (th(2, r) * th(2, s) / (th(1, r) * th(1, s)) +
                   th0(2) / th0(4) * R(2, 1, r - s) * (R(4, 1, r) - R(4, 1, s))),
             S1())},
         RS, true);
  tb.add("91", bracket({f(3)}, {f(3, r), f(1, s)}),
         {ws(-2 * R(2, 1, r) *
                 (R(2, 1, r - s) + th(2, s) * th0(2) / (th(1, s) * th0(3)) * (R(4, 1, r) - R(4, 1, r - s))),
             S1())},
         RS);
  tb.correct("r and s exchanged and theta_3(0) read as theta_4(0)", tb.last().lhs,
             {ws(-2 * (R(2, 1, s) * R(2, 1, s - r) +
                       th0(2) / th0(4) * R(2, 1, r) * (R(4, 1, s) - R(4, 1, s - r))),
                 S1())});

  tb.add("92", bracket({f(2), f(3)}, {f(1, r, 2)}),
         {ws(2 * sq(R(4, 1, r)) * (1 + sq(th0(4)) * th(2, r) * th(3, r) / (th0(2) * th0(3) * sq(th(4, r)))), S23())},
         R1);
  tb.add("93", bracket({f(1), f(3)}, {f(1, r), f(2, r)}),
         {ws(2 * th0(4) / th(1, r) * (th(2, r) / th0(2) + th(3, r) / th0(3)), S23())}, R1);
  tb.correct_scaled("missing factor theta_4(r pi/p) / theta_1(r pi/p)", {{0, R(4, 1, r)}});
  tb.add("94", bracket({f(2), f(3)}, {f(1, r), f(1, s)}),
         {ws(2 * th(4, r) * th(4, s) / (th(1, r) * th(1, s)), S23())}, RS, true);
  tb.add("95", bracket({f(2), f(3)}, {f(2, r), f(2, s)}),
         {ws(-2 * sq(th0(2)) * th(3, r) * th(3, s) / (sq(th0(3)) * th(1, r) * th(1, s)), S23())}, RS, true);
  tb.correct_scaled("spurious prefactor theta_2^2(0) / theta_3^2(0)", {{0, sq(th0(3)) / sq(th0(2))}});
  tb.add("96", bracket({f(2), f(3)}, {f(3, r), f(3, s)}),
         {ws(-2 * th(2, r) * th(2, s) / (th(1, r) * th(1, s)), S23())}, RS, true);
  tb.add("97", bracket({f(1), f(2)}, {f(3, r), f(1, s)}),
         {ws(2 * th0(4) * th(2, r) * th(4, s) / (th0(2) * th(1, r) * th(1, s)), S23())}, RS);
  tb.add("82", bracket({f(1), f(2), f(3)}, {f(1, r)}),
         {ws(-2 * sq(th0(4)) / (th0(2) * th0(3)) * th(2, r) * th(3, r) / sq(th(1, r)), S23())}, R1);

  const E y23 = th(2, r) * th(3, r) / (th0(2) * th0(3));
  const E mixed = sq(th0(4)) * sq(th(2, r)) * sq(th(3, r)) / (sq(th(4, r)) * sq(th0(2)) * sq(th0(3)));

  tb.add("98", bracket({f(1), f(2), f(3)}, {f(1, r, 3)}),
         {ws(-2 * sq(th0(4)) * sq(th(4, r)) / pw(th(1, r), 4) *
                 (sq(th(2, r)) / sq(th0(2)) + mixed + sq(th(3, r)) / sq(th0(3)) + 3 * y23),
             S23())},
         R1);

  tb.add("99", bracket({f(1, 0, 4)}, {f(1, r)}),
         {ws(-2 * sq(th0(4)) * th(2, r) * th(3, r) / (th0(2) * th0(3) * sq(th(1, r))), sum({f(1, 0, 3)})),
          ws(2 * sq(th(2, r)) * sq(th0(4)) / pw(th(1, r), 4) * (sq(th(4, r)) / sq(th0(4)) - y23), S1())},
         R1);
  tb.correct("theta_2^2(r pi/p) in the second coefficient read as theta_4^2(r pi/p)", tb.last().lhs,
             {tb.last().rhs[0],
              ws(2 * sq(th(4, r)) * sq(th0(4)) / pw(th(1, r), 4) * (sq(th(4, r)) / sq(th0(4)) - y23), S1())});

  tb.add("100", bracket({f(1, 0, 3)}, {f(1, r, 2)}),
         {ws(2 * sq(R(4, 1, r)), sum({f(1, 0, 3)})),
          ws(2 * sq(th0(4)) * sq(th(4, r)) / pw(th(1, r), 4) *
                 (sq(th(2, r)) / sq(th0(2)) + sq(th(3, r)) / sq(th0(3)) + mixed - 3 * y23),
             S1())},
         R1);

  tb.add("100a", bracket({f(1, 0, 4)}, {f(2, r), f(3, r)}),
         {ws(2 * sq(th0(4)) * th(2, r) * th(3, r) / (th0(2) * th0(3) * sq(th(1, r))),
             sum({f(1, 0, 2), f(2), f(3)})),
          ws(2 * sq(th0(4)) * sq(th(4, r)) / pw(th(1, r), 4) * (sq(th(4, r)) / sq(th0(4)) + 3 * y23), S23())},
         R1);

  tb.add("100b", bracket({f(1, 0, 4)}, {f(2, s), f(3, r)}),
         {ws(2 * sq(th0(4)) * th(2, r) * th(3, s) / (th0(2) * th0(3) * th(1, r) * th(1, s)),
             sum({f(1, 0, 2), f(2), f(3)})),
          ws(2 * sq(th0(4)) / (th0(2) * th0(3)) *
                 (th(3, r) * th(4, r) * th(2, s) * th(4, s) / (sq(th(1, r)) * sq(th(1, s))) +
                  th(2, r) * th(3, s) / (th(1, r) * th(3, s)) * (sq(R(4, 1, r)) + sq(R(4, 1, s)))),
             S23())},
         RS);
  tb.correct("theta_3(s pi/p) in the last denominator read as theta_1(s pi/p)", tb.last().lhs,
             {tb.last().rhs[0],
              ws(2 * sq(th0(4)) / (th0(2) * th0(3)) *
                     (th(3, r) * th(4, r) * th(2, s) * th(4, s) / (sq(th(1, r)) * sq(th(1, s))) +
                      th(2, r) * th(3, s) / (th(1, r) * th(1, s)) * (sq(R(4, 1, r)) + sq(R(4, 1, s)))),
                 S23())});

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

void add_mi4(Catalog& out) {
  Table tb(Family::MI4, Period::TwoPi, "MI4");
  const std::set<Symbol> R1{Symbol::r};
  const std::set<Symbol> RS{Symbol::r, Symbol::s};

  {
    auto lhs = bracket({f(1), f(2), f(3)}, {f(2, r)});
    tb.add("102", lhs, {ws(2 * th0(4) / th0(3) * th(2, 1) * th(3, 1) / sq(th(1, 1)), S13())}, R1);
    tb.correct("coefficient read as 2 theta_3^2(0) theta_2 theta_4 (r pi/p) / (theta_2(0) theta_4(0) theta_1^2(r pi/p))",
               lhs, {ws(2 * sq(th0(3)) * th(2, r) * th(4, r) / (th0(2) * th0(4) * sq(th(1, r))), S13())});
  }

  tb.add("103", bracket({f(3)}, {f(1, r)}), {kZero}, R1);

  {
    const E first = E::indexed_prod(Symbol::k, 1, (l - 1) / 2, std::nullopt, sq(R(3, 1, r * k)));
    const E second = 2 * sign((l - 1) / 2) * E::indexed_sum(Symbol::k, 1, (l - 1) / 2, std::nullopt, chain_product(3));
    auto& e = tb.add("104", {chain(f(2, n * r), l)}, {ws(first + second, S2())}, R1);
    e.constraints.length = LengthConstraint{Parity::Odd, 3, UpperBound::LessEqualP, 7};
  }

  tb.add("105", {product({f(2)})},
         {ws(E::indexed_prod(Symbol::n, 1, (p - 1) / 2, std::nullopt, sq(R(3, 1, n))), S2())})
      .constraints.p_min = 3;

  tb.add("101", bracket({f(2, 0, 2)}, {f(2, r)}),
         {ws(2 * th0(4) * th(2, r) * th(4, r) / sq(th(1, r)) *
                 (th(2, r) / th0(2) - th0(4) * sq(th(3, r)) / (sq(th0(3)) * th(4, r))),
             S2())},
         R1);
  tb.correct("bracketed coefficient read as theta_3^2(0) theta_2 theta_4 (r pi/p) / (theta_2(0) theta_4(0)) - theta_3^2(r pi/p)",
             tb.last().lhs,
             {ws(2 / sq(th(1, r)) * (sq(th0(3)) * th(2, r) * th(4, r) / (th0(2) * th0(4)) - sq(th(3, r))), S2())});
  tb.add("106", bracket({f(3)}, {f(2, r), f(3, r)}),
         {ws(-2 * sq(th0(2)) * th(3, r) / (th0(3) * sq(th(1, r))) * (th(2, r) / th0(2) - th(4, r) / th0(4)), S2())},
         R1);
  tb.add("107", bracket({f(1)}, {f(1, r), f(2, r)}),
         {ws(-2 * sq(th0(4)) * th(3, r) / (th0(3) * sq(th(1, r))) * (th(2, r) / th0(2) - th(4, r) / th0(4)), S2())},
         R1);
  tb.add("108", bracket({f(3)}, {f(2, s), f(3, r)}),
         {ws(-2 * (th(2, r - s) * th(2, r) / (th(1, r) * th(1, r - s)) +
                   th0(2) / th0(3) * R(2, 1, s) * (R(3, 1, r) - R(3, 1, r - s))),
             S2())},
         RS);
  tb.correct_swapped_rs("coefficient carries r and s in exchanged roles");
  tb.add("109", bracket({f(1)}, {f(1, r), f(2, s)}),
         {ws(2 * (th(4, r) * th(4, r - s) / (th(1, r) * th(1, r - s)) +
                  th0(4) / th0(3) * R(4, 1, s) * (R(3, 1, r) - R(3, 1, r - s))),
             S2())},
         RS);
  tb.correct_swapped_rs("coefficient carries r and s in exchanged roles");
  tb.add("110", bracket({f(2)}, {f(1, r), f(1, s)}),
         {ws(2 * (th(4, r) * th(4, s) / (th(1, r) * th(1, s)) +
                  th(4, r - s) * th0(4) / (th(1, r - s) * th0(3)) * (R(3, 1, r) - R(3, 1, s))),
             S2())},
         RS, true);
  tb.add("111", bracket({f(2)}, {f(3, r), f(3, s)}),
         {ws(-2 * (th(2, r) * th(2, s) / (th(1, r) * th(1, s)) +
                   th(2, r - s) * th0(2) / (th(1, r - s) * th0(3)) * (R(3, 1, r) - R(3, 1, s))),
             S2())},
         RS, true);

  {
    const E coeff =
        -2 * pw(th0(2), 3) * th(2, r) / (sq(th0(3)) * sq(th(1, r))) *
        (th(4, r) / th0(4) + th0(2) * sq(th(3, r)) / (sq(th0(3)) * th(2, r)));
    // Printed second term: theta_1(z_{j-r}) theta_3(z_{j+r}) / theta_4^2(z_{j-r}).
    std::vector<CyclicSum> printed = {sum({f(2, 0, 2), f(1, r), f(3, r)}),
                                      sum({f(2, 0, 2), bare(1, -r, 1), bare(3, r, 1), bare(4, -r, -2)})};
    tb.add("112", printed, {ws(coeff, S13())}, R1);
    tb.correct("theta_3(z_{j+r}) in the second term read as theta_3(z_{j-r}), prefactor theta_2^3(0) / theta_3^2(0) read as theta_3^2(0) / theta_2(0)",
               bracket({f(2, 0, 2)}, {f(1, r), f(3, r)}), {ws(coeff * pw(th0(3), 4) / pw(th0(2), 4), S13())});
  }

  tb.add("113", bracket({f(1), f(2)}, {f(2, r), f(3, r)}),
         {ws(-2 * sq(th0(2)) * th(3, r) / (th0(3) * sq(th(1, r))) * (th(4, r) / th0(4) + th(2, r) / th0(2)), S13())},
         R1);
  tb.correct_scaled("theta_2^2(0) read as theta_3^2(0) in the prefactor", {{0, sq(th0(3)) / sq(th0(2))}});
  tb.add("114", bracket({f(2, 0, 2), f(3)}, {f(1, r)}),
         {ws(2 * pw(th0(2), 3) * th(2, r) * th(3, r) / (pw(th0(3), 3) * sq(th(1, r))), S13())}, R1);
  tb.correct_scaled("prefactor theta_2^3(0) / theta_3^3(0) read as theta_3(0) / theta_2(0)", {{0, pw(th0(3), 4) / pw(th0(2), 4)}});

  tb.add("115", bracket({f(1), f(2), f(3)}, {f(2, r, 3)}),
         {ws(2 * sq(th0(2)) * sq(th(2, r)) / pw(th(1, r), 4) *
                 (sq(th(4, r)) / sq(th0(4)) +
                  sq(th0(2)) * sq(th(3, r)) * sq(th(4, r)) / (sq(th0(3)) * sq(th0(4)) * sq(th(2, r))) +
                  sq(th(3, r)) / sq(th0(3)) +
                  3 * th0(2) * th(4, r) * sq(th(3, r)) / (sq(th0(3)) * th(2, r) * th0(4))),
             S13())},
         R1);
  tb.correct_scaled("overall sign and prefactor theta_2^2(0) read as -theta_3^4(0) / theta_2^2(0)", {{0, -1 * pw(th0(3), 4) / pw(th0(2), 4)}});

  tb.add("116", bracket({f(1), f(3)}, {f(2, r), f(2, s)}),
         {ws(-2 * pw(th0(2), 4) * th(3, r) * th(3, s) / (pw(th0(3), 4) * th(1, r) * th(1, s)), S13())}, RS, true);
  tb.correct_scaled("spurious prefactor theta_2^4(0) / theta_3^4(0)", {{0, pw(th0(3), 4) / pw(th0(2), 4)}});
  tb.add("117", bracket({f(1), f(3)}, {f(3, r), f(3, s)}),
         {ws(-2 * pw(th0(2), 4) / pw(th0(3), 4) * th(2, r) * th(2, s) / (th(1, r) * th(1, s)), S13())}, RS, true);
  tb.correct_scaled("spurious prefactor theta_2^4(0) / theta_3^4(0)", {{0, pw(th0(3), 4) / pw(th0(2), 4)}});
  tb.add("118", bracket({f(1), f(3)}, {f(1, r), f(1, s)}),
         {ws(2 * pw(th0(2), 4) * th(4, r) * th(4, s) / (pw(th0(3), 4) * th(1, r) * th(1, s)), S13())}, RS, true);
  tb.correct_scaled("spurious prefactor theta_2^4(0) / theta_3^4(0)", {{0, pw(th0(3), 4) / pw(th0(2), 4)}});
  tb.add("119", bracket({f(2), f(3)}, {f(1, r), f(2, s)}),
         {ws(-2 * pw(th0(2), 4) * th0(4) * th(4, r) * th(3, s) / (pw(th0(3), 5) * th(1, r) * th(1, s)), S13())}, RS);
  tb.correct_scaled("prefactor theta_2^4(0) theta_4(0) / theta_3^5(0) read as theta_3(0) / theta_4(0)", {{0, pw(th0(3), 6) / (pw(th0(2), 4) * sq(th0(4)))}});

  tb.add("120", bracket({f(1, 0, 2), f(3, 0, 2)}, {f(2, r)}),
         {ws(-2 * th(2, r) * th(4, r) / sq(th(1, r)), sum({f(2, 0, 3)})),
          ws(2 * pw(th0(2), 3) * th(2, r) * th(4, r) / (th0(4) * sq(th0(3)) * sq(th(1, r))) *
                 (1 + sq(th0(3)) * sq(th0(4)) * sq(th(2, r)) / (sq(th(1, r)) * pw(th0(2), 4)) -
                  sq(th0(3)) * th0(4) * th(2, r) * th(4, r) / (sq(th(1, r)) * pw(th0(2), 3))),
             S2())},
         R1);
  tb.correct_scaled("first coefficient lacks theta_2(0) theta_4(0) / theta_3^2(0)", {{0, th0(2) * th0(4) / sq(th0(3))}});

  tb.add("121", bracket({f(2, 0, 3)}, {f(2, r, 2)}),
         {ws(-2 * sq(th0(4)) * sq(th(3, r)) / (sq(th0(3)) * sq(th(1, r))), sum({f(2, 0, 3)})),
          ws(2 * pw(th0(3), 4) * sq(th(4, r)) / (sq(th0(4)) * pw(th(1, r), 4)) *
                 (sq(th(2, r)) / sq(th0(2)) + sq(th(3, r)) / sq(th0(3)) +
                  sq(th0(4)) * sq(th(2, r)) * sq(th(3, r)) / (sq(th(4, r)) * sq(th0(2)) * sq(th0(3))) -
                  3 * th(2, r) * th0(4) * sq(th(3, r)) / (sq(th0(3)) * th0(2) * th(4, r))),
             S2())},
         R1);
  tb.correct_scaled("spurious prefactor theta_4^2(0) / theta_3^2(0) in the first coefficient", {{0, sq(th0(3)) / sq(th0(4))}});

  for (auto& e : tb.take()) out.push_back(std::move(e));
}

IdentitySpec transform_entry(std::string id, std::string eq, TransformRelation rel) {
  IdentitySpec spec;
  spec.id = std::move(id);
  spec.paper_eq = std::move(eq);
  spec.family = Family::Transform;
  spec.period = Period::Pi;
  spec.status = Status::Verified;
  spec.relation = rel;
  return spec;
}

void add_transforms(Catalog& out) {
  using K = TransformRelation::Kind;
  out.push_back(transform_entry("TR-122", "122", {K::HalfPeriod}));
  for (int which = 1; which <= 3; ++which) {
    out.push_back(transform_entry("TR-123." + std::to_string(which), "123",
                                  {K::Modular, ModularMapKind::MinusInverse, which}));
  }
  for (int which = 1; which <= 3; ++which) {
    out.push_back(transform_entry("TR-124." + std::to_string(which), "124",
                                  {K::Modular, ModularMapKind::OverOneMinus, which}));
  }
  for (int eq = 125; eq <= 130; ++eq) {
    out.push_back(transform_entry("TR-" + std::to_string(eq), std::to_string(eq), {K::ProductRatio,
                                  ModularMapKind::MinusInverse, eq}));
  }

  auto mark = [&](const std::string& id, const std::string& note) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].id != id) continue;
      IdentitySpec fixed = out[i];
      out[i].status = Status::Erratum;
      out[i].corrected_by = id + "c";
      out[i].note = note;
      fixed.id = id + "c";
      fixed.corrects = id;
      fixed.note = "corrected: " + note;
      fixed.relation->corrected = true;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(fixed));
      return;
    }
  };
  mark("TR-123.3", "theta_3/theta_4 relation holds with constant 1, not -i");
  mark("TR-129", "denominator theta_3(0) read as theta_4(0)");
}

Catalog build() {
  Catalog out;
  add_mi1(out);
  add_mi1_alt(out);
  add_mi2(out);
  add_mi2_alt(out);
  add_mi3(out);
  add_mi4(out);
  add_transforms(out);
  return out;
}

}  // namespace

const Catalog& builtin_catalog() {
  static const Catalog catalog = build();
  return catalog;
}

}  // namespace theta_idents
