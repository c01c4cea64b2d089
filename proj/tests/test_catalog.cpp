#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>
#include <json.hpp>

#include "theta_idents/catalog.hpp"
#include "theta_idents/errors.hpp"

using namespace theta_idents;

namespace {

const IdentitySpec& entry(std::string_view id) {
  const IdentitySpec* spec = find_identity(builtin_catalog(), id);
  if (!spec) throw std::runtime_error("missing " + std::string(id));
  return *spec;
}

bool contains(const std::vector<std::string>& diagnostics, std::string_view needle) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

const IdentitySpec& first_r_only(Family family) {
  for (const auto& spec : builtin_catalog()) {
    if (spec.family == family && spec.constraints.symbols == std::set<Symbol>{Symbol::r} && !spec.constraints.length &&
        spec.constraints.p_min <= 4) {
      return spec;
    }
  }
  throw std::runtime_error("no single-r entry");
}

std::vector<int> r_values(const IdentitySpec& spec, int p) {
  std::vector<int> out;
  for (const auto& b : enumerate_params(spec, {p, p})) out.push_back(b.r);
  return out;
}

std::string builtin_json() { return catalog_to_json(builtin_catalog()); }

template <typename Fn>
std::string edited(Fn edit) {
  auto doc = nlohmann::json::parse(builtin_json());
  edit(doc);
  return doc.dump(1);
}

std::string schema_message(const std::string& text) {
  try {
    catalog_from_json(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

// Displayed equation labels every catalog must cover.
TEST(Inventory, CoversEveryDisplayedEquation) {
  std::vector<std::string> expected = {"5"};
  for (int eq = 7; eq <= 29; ++eq) expected.push_back(std::to_string(eq));
  for (const char* eq : {"20a", "20b", "24a", "31", "32", "33", "34", "35", "36a", "37", "38", "38a"}) {
    expected.push_back(eq);
  }
  for (int eq = 39; eq <= 50; ++eq) expected.push_back(std::to_string(eq));
  for (int eq : {53, 54, 55, 59, 60, 61, 62, 63, 64, 65}) expected.push_back(std::to_string(eq));
  for (int eq = 66; eq <= 81; ++eq) expected.push_back(std::to_string(eq));
  expected.push_back("78a");
  for (int eq = 82; eq <= 100; ++eq) expected.push_back(std::to_string(eq));
  expected.push_back("100a");
  expected.push_back("100b");
  for (int eq = 101; eq <= 130; ++eq) expected.push_back(std::to_string(eq));

  std::set<std::string> present;
  for (const auto& spec : builtin_catalog()) present.insert(spec.paper_eq);
  for (const auto& eq : expected) EXPECT_TRUE(present.count(eq)) << "missing equation " << eq;
  EXPECT_GE(builtin_catalog().size(), 105u);
}

TEST(Inventory, StableIdsAndFamilies) {
  std::size_t alt = 0;
  for (const auto& spec : builtin_catalog()) {
    if (spec.family == Family::MI1Alt && spec.corrects.empty()) ++alt;
  }
  EXPECT_EQ(alt, 9u);
  EXPECT_EQ(entry("MI4-111").paper_eq, "111");
  EXPECT_EQ(entry("MI1-20a").paper_eq, "20a");
  EXPECT_EQ(entry("MI1-09").lhs.front().product_form, true);
  EXPECT_EQ(entry("MI2-42").rhs.front().kind, RhsKind::MeanValueIntegral);
  ASSERT_TRUE(entry("MI2-42").constraints.length);
  EXPECT_EQ(entry("MI2-42").constraints.length->parity, Parity::Even);
}

TEST(Inventory, ProductFormCoefficientUsesIndexedProduct) {
  const auto coeffs = coefficient_expressions(entry("MI1-09"));
  ASSERT_FALSE(coeffs.empty());
  const std::string text = coeffs.front().to_prefix();
  EXPECT_NE(text.find("(prod n 1 (/ (- p 1) 2)"), std::string::npos) << text;
}

TEST(Inventory, FamilyInvariants) {
  for (const auto& spec : builtin_catalog()) {
    EXPECT_TRUE(validate(spec).empty()) << spec.id << ": " << validate(spec).front();
    switch (spec.family) {
      case Family::MI1:
      case Family::MI1Alt:
      case Family::MI2:
      case Family::MI2Alt: EXPECT_EQ(spec.period, Period::Pi) << spec.id; break;
      case Family::MI3:
      case Family::MI4:
        EXPECT_EQ(spec.period, Period::TwoPi) << spec.id;
        EXPECT_EQ(spec.constraints.p_parity, Parity::Odd) << spec.id;
        break;
      case Family::Transform: break;
    }
    if (is_alternating_family(spec.family)) EXPECT_EQ(spec.constraints.p_parity, Parity::Even) << spec.id;
  }
  EXPECT_TRUE(validate_catalog(builtin_catalog()).empty());
}

TEST(Inventory, ErrataPointAtVerifiedSiblings) {
  std::size_t errata = 0;
  for (const auto& spec : builtin_catalog()) {
    if (spec.status != Status::Erratum) continue;
    ++errata;
    const IdentitySpec* fixed = find_identity(builtin_catalog(), spec.corrected_by);
    ASSERT_NE(fixed, nullptr) << spec.id;
    EXPECT_EQ(fixed->status, Status::Verified);
    EXPECT_EQ(fixed->corrects, spec.id);
    EXPECT_EQ(fixed->paper_eq, spec.paper_eq);
  }
  EXPECT_GT(errata, 0u);
}

TEST(Validate, Diagnostics) {
  IdentitySpec bad = entry("MI3-83");
  bad.period = Period::Pi;
  EXPECT_TRUE(contains(validate(bad), "family/period mismatch"));

  IdentitySpec unconstrained = entry("MI1-13");
  unconstrained.constraints.symbols.erase(Symbol::s);
  unconstrained.constraints.ordered_rs = false;
  EXPECT_TRUE(contains(validate(unconstrained), "unconstrained symbol s"));

  IdentitySpec alternating = first_r_only(Family::MI2Alt);
  alternating.constraints.p_parity = Parity::Any;
  EXPECT_TRUE(contains(validate(alternating), "alternating family must constrain p even"));

  Catalog dup = {entry("MI1-05"), entry("MI1-05")};
  EXPECT_FALSE(validate_catalog(dup).empty());
}

TEST(Enumerate, CoprimeResidues) {
  EXPECT_EQ(r_values(first_r_only(Family::MI1), 6), (std::vector<int>{1, 5}));
  EXPECT_EQ(r_values(first_r_only(Family::MI2Alt), 4), (std::vector<int>{1, 3}));
  EXPECT_EQ(r_values(first_r_only(Family::MI3), 5), (std::vector<int>{1, 2, 3, 4}));
}

TEST(Enumerate, AlternatingOnOddRangeIsEmpty) {
  EXPECT_THROW(enumerate_params(first_r_only(Family::MI2Alt), {3, 3}), EmptyParameterSpace);
  EXPECT_THROW(enumerate_params(entry("MI1-05"), {1, 5}), DomainError);
  EXPECT_THROW(enumerate_params(entry("MI1-05"), {2, 65}), DomainError);
}

TEST(Enumerate, SortedUniqueAndAdmissible) {
  for (const auto& spec : builtin_catalog()) {
    if (spec.family == Family::Transform) continue;
    std::vector<ParamBinding> bindings;
    try {
      bindings = enumerate_params(spec, {2, 9});
    } catch (const EmptyParameterSpace&) {
      ADD_FAILURE() << spec.id << " has no bindings on 2..9";
      continue;
    }
    EXPECT_TRUE(std::is_sorted(bindings.begin(), bindings.end())) << spec.id;
    EXPECT_EQ(std::adjacent_find(bindings.begin(), bindings.end()), bindings.end()) << spec.id;
    const auto& c = spec.constraints;
    for (const auto& b : bindings) {
      EXPECT_TRUE(check_binding(spec, b).empty()) << spec.id;
      EXPECT_GE(b.p, c.p_min);
      if (c.p_parity == Parity::Even) EXPECT_EQ(b.p % 2, 0);
      if (c.p_parity == Parity::Odd) EXPECT_EQ(b.p % 2, 1);
      std::vector<int> used;
      for (auto [sym, v] : {std::pair{Symbol::r, b.r}, {Symbol::s, b.s}, {Symbol::t, b.t}}) {
        if (!c.symbols.count(sym)) {
          EXPECT_EQ(v, 0) << spec.id;
          continue;
        }
        EXPECT_GE(v, 1);
        EXPECT_LT(v, b.p);
        EXPECT_EQ(std::gcd(v, b.p), 1) << spec.id;
        used.push_back(v);
      }
      std::sort(used.begin(), used.end());
      EXPECT_EQ(std::adjacent_find(used.begin(), used.end()), used.end()) << spec.id;
      if (c.ordered_rs) EXPECT_LT(b.r, b.s) << spec.id;
      if (c.length) {
        EXPECT_GE(b.l, c.length->min);
        EXPECT_LE(b.l, c.length->cap);
        if (c.length->parity == Parity::Even) EXPECT_EQ(b.l % 2, 0);
        if (c.length->parity == Parity::Odd) EXPECT_EQ(b.l % 2, 1);
        if (c.length->upper == UpperBound::LessEqualP) EXPECT_LE(b.l, b.p);
        if (c.length->upper == UpperBound::LessThanP) EXPECT_LT(b.l, b.p);
      }
    }
  }
}

TEST(Enumerate, CheckBindingExplainsRejections) {
  const IdentitySpec& spec = first_r_only(Family::MI1);
  EXPECT_FALSE(check_binding(spec, {6, 2, 0, 0, 0}).empty());
  EXPECT_FALSE(check_binding(spec, {6, 6, 0, 0, 0}).empty());
  EXPECT_TRUE(check_binding(spec, {6, 5, 0, 0, 0}).empty());
}

TEST(CatalogFile, RoundTrip) {
  const std::string text = builtin_json();
  const Catalog back = catalog_from_json(text);
  EXPECT_EQ(back, builtin_catalog());
  EXPECT_EQ(catalog_to_json(back), text);

  const auto path = std::filesystem::temp_directory_path() / "theta_idents_catalog_test.json";
  save_catalog(builtin_catalog(), path);
  EXPECT_EQ(load_catalog(path), builtin_catalog());
  std::filesystem::remove(path);
}

TEST(CatalogFile, DuplicateId) {
  const std::string text = edited([](auto& doc) { doc["identities"][1]["id"] = doc["identities"][0]["id"]; });
  const std::string msg = schema_message(text);
  EXPECT_NE(msg.find("duplicate id"), std::string::npos) << msg;
}

TEST(CatalogFile, BadPeriod) {
  const std::string text = edited([](auto& doc) { doc["identities"][3]["period"] = "3pi"; });
  const std::string msg = schema_message(text);
  EXPECT_NE(msg.find("period must be pi or 2pi"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/identities/3/period"), std::string::npos) << msg;
}

TEST(CatalogFile, UnknownFieldNamesEntryAndPointer) {
  const std::string text = edited([](auto& doc) { doc["identities"][0]["lhs"][0]["factors"][0]["color"] = "red"; });
  const std::string msg = schema_message(text);
  EXPECT_NE(msg.find("MI1-05"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/identities/0/lhs/0/factors/0/color"), std::string::npos) << msg;
}

TEST(CatalogFile, BadExpressionText) {
  const std::string text = edited([](auto& doc) { doc["identities"][0]["rhs"][0]["coeff"] = "(th 9 0)"; });
  const std::string msg = schema_message(text);
  EXPECT_NE(msg.find("MI1-05"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/identities/0/rhs/0/coeff"), std::string::npos) << msg;
}

TEST(CatalogFile, SemanticBreachIsSchemaError) {
  const std::string text = edited([](auto& doc) { doc["identities"][0]["family"] = "MI-III"; });
  EXPECT_NE(schema_message(text).find("family/period mismatch"), std::string::npos);
  EXPECT_THROW(catalog_from_json(R"({"version": 2, "identities": []})"), SchemaError);
}

TEST(CatalogFile, MalformedJsonReportsPosition) {
  try {
    catalog_from_json("{\"version\": 1,\n  \"identities\": [,]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 18u);
  }
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), Error);
}
