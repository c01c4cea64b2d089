#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "theta_idents/catalog.hpp"
#include "theta_idents/coeff_expr.hpp"
#include "theta_idents/errors.hpp"

using namespace theta_idents;

namespace {

CoeffBinding binding_at(double m, int p = 5, int r = 1, int s = 2, int l = 3) {
  CoeffBinding b;
  b.ints.set(Symbol::p, p).set(Symbol::r, r).set(Symbol::s, s).set(Symbol::l, l);
  b.nome = EllipticContext(m).nome();
  return b;
}

std::set<Symbol> coefficient_symbols(std::string_view id) {
  const IdentitySpec* spec = find_identity(builtin_catalog(), id);
  EXPECT_NE(spec, nullptr) << id;
  std::set<Symbol> out;
  if (!spec) return out;
  for (const auto& c : coefficient_expressions(*spec)) {
    for (Symbol s : free_symbols(c)) out.insert(s);
  }
  return out;
}

}  // namespace

TEST(CoeffEval, ModulusFromThetaConstants) {
  const CoeffExpr e = CoeffExpr::pow(CoeffExpr::theta_at(ThetaIndex::Two, 0) / CoeffExpr::theta_at(ThetaIndex::Three, 0), 4);
  EXPECT_NEAR(eval_expr(e, binding_at(0.5)).real(), 0.5, 1e-12);
  EXPECT_EQ(free_symbols(e), std::set<Symbol>{});
}

TEST(CoeffEval, Constants) {
  EXPECT_EQ(eval_expr(CoeffExpr(1), binding_at(0.5)), complex(1.0));
  EXPECT_EQ(eval_expr(CoeffExpr::abs(-CoeffExpr(2)), binding_at(0.5)), complex(2.0));
  EXPECT_EQ(eval_expr(CoeffExpr::rational(-3, 4), binding_at(0.5)), complex(-0.75));
  EXPECT_EQ(eval_expr(CoeffExpr::int_value(IntExpr(Symbol::p) - 1), binding_at(0.5, 7)), complex(6.0));
  EXPECT_EQ(eval_expr(CoeffExpr::sign_pow(IntExpr(Symbol::l)), binding_at(0.5, 5, 1, 2, 3)), complex(-1.0));
}

TEST(CoeffEval, EmptyIndexedRanges) {
  const CoeffExpr body = CoeffExpr::theta_at(ThetaIndex::Three, Symbol::k);
  const auto b = binding_at(0.3);
  EXPECT_EQ(eval_expr(CoeffExpr::indexed_prod(Symbol::k, 1, 0, std::nullopt, body), b), complex(1.0));
  EXPECT_EQ(eval_expr(CoeffExpr::indexed_sum(Symbol::k, 3, 2, std::nullopt, body), b), complex(0.0));
}

TEST(CoeffEval, IndexedProductWithExclusion) {
  // prod_{k=1..3, k != 2} theta_3(k step) against the two factors directly
  const auto b = binding_at(0.4);
  const CoeffExpr prod = CoeffExpr::indexed_prod(Symbol::k, 1, 3, IntExpr(2), CoeffExpr::theta_at(ThetaIndex::Three, Symbol::k));
  const complex direct = eval_expr(CoeffExpr::theta_at(ThetaIndex::Three, 1), b) *
                         eval_expr(CoeffExpr::theta_at(ThetaIndex::Three, 3), b);
  EXPECT_LT(std::abs(eval_expr(prod, b) - direct), 1e-15);
}

TEST(CoeffEval, ThetaOffsetsUseTheStep) {
  auto b = binding_at(0.5, 6, 1);
  const complex got = eval_expr(CoeffExpr::theta_at(ThetaIndex::Two, IntExpr(Symbol::r) * 2), b);
  const complex want = theta(ThetaIndex::Two, ThetaArgument(2 * std::numbers::pi / 6, b.nome));
  EXPECT_LT(std::abs(got - want), 1e-15);
  b.period = Period::TwoPi;
  const complex got2 = eval_expr(CoeffExpr::theta_at(ThetaIndex::Two, 1), b);
  EXPECT_LT(std::abs(got2 - theta(ThetaIndex::Two, ThetaArgument(2 * std::numbers::pi / 6, b.nome))), 1e-15);
}

TEST(CoeffEval, Errors) {
  CoeffBinding b;
  b.nome = EllipticContext(0.5).nome();
  EXPECT_THROW(eval_expr(CoeffExpr::theta_at(ThetaIndex::Three, Symbol::r), b), UnboundSymbolError);
  b.ints.set(Symbol::p, 3);
  EXPECT_THROW(eval_expr(CoeffExpr(1) / CoeffExpr::theta_at(ThetaIndex::One, 0), b), DivisionNearZeroError);
  // theta_1(p step) = theta_1(pi) is zero up to rounding
  EXPECT_THROW(eval_expr(CoeffExpr(1) / CoeffExpr::theta_at(ThetaIndex::One, Symbol::p), b), DivisionNearZeroError);
}

TEST(CoeffSymbols, CatalogCoefficients) {
  EXPECT_EQ(coefficient_symbols("MI1-05"), (std::set<Symbol>{Symbol::p}));
  EXPECT_EQ(coefficient_symbols("MI1-13"), (std::set<Symbol>{Symbol::p, Symbol::r, Symbol::s}));
  EXPECT_EQ(coefficient_symbols("MI1-08"), (std::set<Symbol>{Symbol::p, Symbol::r, Symbol::l}));
}

TEST(CoeffPrefix, ParsesDocumentedForms) {
  const CoeffExpr e = CoeffExpr::parse("(* 2 (pow (th 2 0) 2) (abs (th 1 r)) (int (- p 1)) (sign l) -1/3)");
  EXPECT_EQ(free_symbols(e), (std::set<Symbol>{Symbol::p, Symbol::r, Symbol::l}));
  EXPECT_EQ(CoeffExpr::parse(e.to_prefix()), e);
  const CoeffExpr prod = CoeffExpr::parse("(prod n 1 (/ (- l 1) 2) (except 0) (pow (th 2 (* n r)) 2))");
  EXPECT_EQ(prod.kind(), CoeffExpr::Kind::IndexedProd);
  EXPECT_EQ(CoeffExpr::parse(prod.to_prefix()), prod);
}

TEST(CoeffPrefix, RejectsMalformedText) {
  for (const char* bad : {"(th 5 0)", "(* 2", "(pow (th 2 0))", "(frob 1)", "(th 2 q)", "2)", ""}) {
    EXPECT_THROW(CoeffExpr::parse(bad), ParseError) << bad;
  }
  try {
    CoeffExpr::parse("(* 2 (frob 1))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(CoeffPrefix, RoundTripsEveryBuiltinCoefficient) {
  std::size_t count = 0;
  for (const auto& spec : builtin_catalog()) {
    for (const auto& c : coefficient_expressions(spec)) {
      const std::string text = c.to_prefix();
      const CoeffExpr back = CoeffExpr::parse(text);
      EXPECT_EQ(back, c) << spec.id << ": " << text;
      EXPECT_EQ(back.to_prefix(), text) << spec.id;
      ++count;
    }
  }
  EXPECT_GT(count, 150u);
}

// Random trees against a naive evaluator of the same tree built from leaves.
TEST(CoeffEval, MulAndAddAreHomomorphic) {
  std::mt19937_64 rng(3);
  const auto b = binding_at(0.6, 7, 2, 3, 4);
  std::uniform_int_distribution<int> pick(0, 3), index(1, 4), offset(0, 6);
  std::function<std::pair<CoeffExpr, complex>(int)> grow = [&](int depth) -> std::pair<CoeffExpr, complex> {
    if (depth == 0 || pick(rng) == 0) {
      const CoeffExpr leaf = CoeffExpr::theta_at(theta_index(index(rng) % 3 + 2), offset(rng));
      return {leaf, eval_expr(leaf, b)};
    }
    auto [a, va] = grow(depth - 1);
    auto [c, vc] = grow(depth - 1);
    switch (pick(rng)) {
      case 0: return {a + c, va + vc};
      case 1: return {a - c, va - vc};
      case 2: {
        // divide by a leaf only: differences such as theta_4(4 pi/7) - theta_4(3 pi/7) vanish exactly
        const CoeffExpr leaf = CoeffExpr::theta_at(theta_index(index(rng) % 3 + 2), offset(rng));
        return {a / leaf, va / eval_expr(leaf, b)};
      }
      default: return {a * c, va * vc};
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto [expr, naive] = grow(4);
    const complex got = eval_expr(expr, b);
    EXPECT_LT(std::abs(got - naive), 1e-13 * std::max(1.0, std::abs(naive)));
    ThetaGridCache cache;
    EXPECT_EQ(eval_expr(expr, b, &cache), got);
  }
}
