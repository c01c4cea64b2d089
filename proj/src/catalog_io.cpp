// JSON catalog files. Expressions are stored in their prefix text form.

#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "theta_idents/catalog.hpp"
#include "theta_idents/errors.hpp"

namespace theta_idents {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

template <typename Enum>
struct Names {
  Enum value;
  const char* name;
};

constexpr Names<FactorKind> kFactorKinds[] = {
    {FactorKind::Ratio, "ratio"}, {FactorKind::LogDerivative, "log_derivative"}, {FactorKind::Theta, "theta"}};
constexpr Names<RhsKind> kRhsKinds[] = {{RhsKind::WeightedSum, "weighted_sum"},
                                         {RhsKind::PConstant, "p_constant"},
                                         {RhsKind::MeanValueIntegral, "mean_value"},
                                         {RhsKind::Zero, "zero"}};
constexpr Names<Parity> kParities[] = {{Parity::Any, "any"}, {Parity::Even, "even"}, {Parity::Odd, "odd"}};
constexpr Names<UpperBound> kUpperBounds[] = {
    {UpperBound::None, "none"}, {UpperBound::LessEqualP, "le_p"}, {UpperBound::LessThanP, "lt_p"}};
constexpr Names<Status> kStatuses[] = {
    {Status::Verified, "verified"}, {Status::Erratum, "erratum"}, {Status::Unchecked, "unchecked"}};
constexpr Names<ShiftUnit> kShifts[] = {
    {ShiftUnit::Real, "real"}, {ShiftUnit::Tau, "tau"}, {ShiftUnit::OneMinusTau, "one_minus_tau"}};
constexpr Names<CoeffModulus> kModuli[] = {{CoeffModulus::Same, "same"},
                                            {CoeffModulus::MinusInverse, "minus_inverse"},
                                            {CoeffModulus::OverOneMinus, "over_one_minus"}};
constexpr Names<ModularMapKind> kMaps[] = {{ModularMapKind::MinusInverse, "minus-inverse"},
                                            {ModularMapKind::OverOneMinus, "over-one-minus"}};
constexpr Names<TransformRelation::Kind> kRelations[] = {{TransformRelation::Kind::HalfPeriod, "half_period"},
                                                         {TransformRelation::Kind::Modular, "modular"},
                                                         {TransformRelation::Kind::ProductRatio, "product_ratio"}};

template <typename Enum, std::size_t N>
const char* name_of(const Names<Enum> (&table)[N], Enum value) {
  for (const auto& entry : table) {
    if (entry.value == value) return entry.name;
  }
  return "?";
}

// ---- writing ----

json factor_json(const RatioFactor& f) {
  return {{"kind", name_of(kFactorKinds, f.kind)},
          {"num", to_int(f.numerator)},
          {"den", to_int(f.denominator)},
          {"power", f.power},
          {"offset", f.offset.to_prefix()}};
}

json sum_json(const CyclicSum& s) {
  json out = {{"alternating", s.alternating},
              {"productForm", s.product_form},
              {"phaseEighths", s.phase_eighths},
              {"factors", json::array()}};
  for (const auto& f : s.factors) out["factors"].push_back(factor_json(f));
  if (s.chain) out["chain"] = {{"factor", factor_json(s.chain->factor)}, {"length", s.chain->length.to_prefix()}};
  return out;
}

json rhs_json(const RhsTerm& t) {
  json out = {{"kind", name_of(kRhsKinds, t.kind)}};
  if (t.coeff) out["coeff"] = t.coeff->to_prefix();
  if (t.sum) out["sum"] = sum_json(*t.sum);
  return out;
}

json constraints_json(const Constraints& c) {
  json symbols = json::array();
  for (Symbol s : c.symbols) symbols.push_back(std::string(symbol_name(s)));
  json out = {{"symbols", symbols},
              {"pParity", name_of(kParities, c.p_parity)},
              {"pMin", c.p_min},
              {"orderedRS", c.ordered_rs}};
  if (c.length) {
    out["length"] = {{"parity", name_of(kParities, c.length->parity)},
                     {"min", c.length->min},
                     {"upper", name_of(kUpperBounds, c.length->upper)},
                     {"cap", c.length->cap}};
  }
  return out;
}

json identity_json(const IdentitySpec& spec) {
  json out = {{"id", spec.id},
              {"paperEq", spec.paper_eq},
              {"family", std::string(family_name(spec.family))},
              {"period", std::string(period_name(spec.period))},
              {"lhs", json::array()},
              {"rhs", json::array()},
              {"constraints", constraints_json(spec.constraints)},
              {"status", name_of(kStatuses, spec.status)}};
  for (const auto& s : spec.lhs) out["lhs"].push_back(sum_json(s));
  for (const auto& t : spec.rhs) out["rhs"].push_back(rhs_json(t));
  if (!spec.corrected_by.empty()) out["correctedBy"] = spec.corrected_by;
  if (!spec.corrects.empty()) out["corrects"] = spec.corrects;
  if (!spec.note.empty()) out["note"] = spec.note;
  if (spec.shift != ShiftUnit::Real) out["shift"] = name_of(kShifts, spec.shift);
  if (spec.coeff_modulus != CoeffModulus::Same) out["coeffModulus"] = name_of(kModuli, spec.coeff_modulus);
  if (spec.provenance) {
    out["provenance"] = {{"source", spec.provenance->source_id}, {"map", name_of(kMaps, spec.provenance->map)}};
  }
  if (spec.relation) {
    out["relation"] = {{"kind", name_of(kRelations, spec.relation->kind)},
                       {"map", name_of(kMaps, spec.relation->map)},
                       {"which", spec.relation->which},
                       {"corrected", spec.relation->corrected}};
  }
  return out;
}

// ---- reading ----

// Walks one identity, tracking the JSON pointer for diagnostics.
class Reader {
 public:
  explicit Reader(std::string id) : id_(std::move(id)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw SchemaError("identity " + (id_.empty() ? std::string("?") : id_) + " at " + pointer + ": " + what);
  }

  const json& object(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* name : allowed) known = known || key == name;
      if (!known) fail(ptr + "/" + key, "unknown field \"" + key + "\"");
    }
    return j;
  }

  const json& field(const json& j, const std::string& ptr, const char* key) const {
    auto it = j.find(key);
    if (it == j.end()) fail(ptr, std::string("missing field \"") + key + "\"");
    return *it;
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  int integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<int>();
  }

  bool boolean(const json& j, const std::string& ptr) const {
    if (!j.is_boolean()) fail(ptr, "expected a boolean");
    return j.get<bool>();
  }

  template <typename Enum, std::size_t N>
  Enum choice(const json& j, const std::string& ptr, const Names<Enum> (&table)[N]) const {
    const std::string text = string(j, ptr);
    for (const auto& entry : table) {
      if (text == entry.name) return entry.value;
    }
    fail(ptr, "unknown value \"" + text + "\"");
  }

  IntExpr int_expr(const json& j, const std::string& ptr) const {
    try {
      return IntExpr::parse(string(j, ptr));
    } catch (const ParseError& e) {
      fail(ptr, e.what());
    }
  }

  CoeffExpr coeff_expr(const json& j, const std::string& ptr) const {
    try {
      return CoeffExpr::parse(string(j, ptr));
    } catch (const ParseError& e) {
      fail(ptr, e.what());
    }
  }

  ThetaIndex theta(const json& j, const std::string& ptr) const {
    const int value = integer(j, ptr);
    if (value < 1 || value > 4) fail(ptr, "theta index must be 1..4");
    return theta_index(value);
  }

  RatioFactor factor(const json& j, const std::string& ptr) const {
    object(j, ptr, {"kind", "num", "den", "power", "offset"});
    RatioFactor f;
    f.kind = choice(field(j, ptr, "kind"), ptr + "/kind", kFactorKinds);
    f.numerator = theta(field(j, ptr, "num"), ptr + "/num");
    f.denominator = theta(field(j, ptr, "den"), ptr + "/den");
    f.power = integer(field(j, ptr, "power"), ptr + "/power");
    f.offset = int_expr(field(j, ptr, "offset"), ptr + "/offset");
    return f;
  }

  CyclicSum sum(const json& j, const std::string& ptr) const {
    object(j, ptr, {"alternating", "productForm", "phaseEighths", "factors", "chain"});
    CyclicSum s;
    s.alternating = boolean(field(j, ptr, "alternating"), ptr + "/alternating");
    s.product_form = boolean(field(j, ptr, "productForm"), ptr + "/productForm");
    if (j.contains("phaseEighths")) s.phase_eighths = integer(j["phaseEighths"], ptr + "/phaseEighths");
    const json& factors = field(j, ptr, "factors");
    if (!factors.is_array()) fail(ptr + "/factors", "expected an array");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      s.factors.push_back(factor(factors[i], ptr + "/factors/" + std::to_string(i)));
    }
    if (j.contains("chain")) {
      const std::string cp = ptr + "/chain";
      object(j["chain"], cp, {"factor", "length"});
      s.chain = Chain{factor(field(j["chain"], cp, "factor"), cp + "/factor"),
                      int_expr(field(j["chain"], cp, "length"), cp + "/length")};
    }
    return s;
  }

  RhsTerm rhs(const json& j, const std::string& ptr) const {
    object(j, ptr, {"kind", "coeff", "sum"});
    RhsTerm t;
    t.kind = choice(field(j, ptr, "kind"), ptr + "/kind", kRhsKinds);
    if (j.contains("coeff")) t.coeff = coeff_expr(j["coeff"], ptr + "/coeff");
    if (j.contains("sum")) t.sum = sum(j["sum"], ptr + "/sum");
    return t;
  }

  Constraints constraints(const json& j, const std::string& ptr) const {
    object(j, ptr, {"symbols", "pParity", "pMin", "orderedRS", "length"});
    Constraints c;
    const json& symbols = field(j, ptr, "symbols");
    if (!symbols.is_array()) fail(ptr + "/symbols", "expected an array");
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const std::string sp = ptr + "/symbols/" + std::to_string(i);
      auto sym = parse_symbol(string(symbols[i], sp));
      if (!sym) fail(sp, "unknown symbol");
      c.symbols.insert(*sym);
    }
    c.p_parity = choice(field(j, ptr, "pParity"), ptr + "/pParity", kParities);
    c.p_min = integer(field(j, ptr, "pMin"), ptr + "/pMin");
    c.ordered_rs = boolean(field(j, ptr, "orderedRS"), ptr + "/orderedRS");
    if (j.contains("length")) {
      const std::string lp = ptr + "/length";
      const json& len = object(j["length"], lp, {"parity", "min", "upper", "cap"});
      LengthConstraint lc;
      lc.parity = choice(field(len, lp, "parity"), lp + "/parity", kParities);
      lc.min = integer(field(len, lp, "min"), lp + "/min");
      lc.upper = choice(field(len, lp, "upper"), lp + "/upper", kUpperBounds);
      lc.cap = integer(field(len, lp, "cap"), lp + "/cap");
      c.length = lc;
    }
    return c;
  }

  IdentitySpec identity(const json& j, const std::string& ptr) const {
    object(j, ptr,
           {"id", "paperEq", "family", "period", "lhs", "rhs", "constraints", "status", "correctedBy", "corrects",
            "note", "shift", "coeffModulus", "provenance", "relation"});
    IdentitySpec spec;
    spec.id = id_;
    spec.paper_eq = string(field(j, ptr, "paperEq"), ptr + "/paperEq");
    const std::string family = string(field(j, ptr, "family"), ptr + "/family");
    auto fam = parse_family(family);
    if (!fam) fail(ptr + "/family", "unknown family \"" + family + "\"");
    spec.family = *fam;
    const std::string period = string(field(j, ptr, "period"), ptr + "/period");
    if (period == "pi") {
      spec.period = Period::Pi;
    } else if (period == "2pi") {
      spec.period = Period::TwoPi;
    } else {
      fail(ptr + "/period", "period must be pi or 2pi");
    }
    for (const char* side : {"lhs", "rhs"}) {
      const json& list = field(j, ptr, side);
      if (!list.is_array()) fail(ptr + "/" + side, "expected an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string ip = ptr + "/" + side + "/" + std::to_string(i);
        if (side[0] == 'l') {
          spec.lhs.push_back(sum(list[i], ip));
        } else {
          spec.rhs.push_back(rhs(list[i], ip));
        }
      }
    }
    spec.constraints = constraints(field(j, ptr, "constraints"), ptr + "/constraints");
    spec.status = choice(field(j, ptr, "status"), ptr + "/status", kStatuses);
    if (j.contains("correctedBy")) spec.corrected_by = string(j["correctedBy"], ptr + "/correctedBy");
    if (j.contains("corrects")) spec.corrects = string(j["corrects"], ptr + "/corrects");
    if (j.contains("note")) spec.note = string(j["note"], ptr + "/note");
    if (j.contains("shift")) spec.shift = choice(j["shift"], ptr + "/shift", kShifts);
    if (j.contains("coeffModulus")) spec.coeff_modulus = choice(j["coeffModulus"], ptr + "/coeffModulus", kModuli);
    if (j.contains("provenance")) {
      const std::string pp = ptr + "/provenance";
      const json& prov = object(j["provenance"], pp, {"source", "map"});
      spec.provenance = Provenance{string(field(prov, pp, "source"), pp + "/source"),
                                   choice(field(prov, pp, "map"), pp + "/map", kMaps)};
    }
    if (j.contains("relation")) {
      const std::string rp = ptr + "/relation";
      const json& rel = object(j["relation"], rp, {"kind", "map", "which", "corrected"});
      TransformRelation r;
      r.kind = choice(field(rel, rp, "kind"), rp + "/kind", kRelations);
      if (rel.contains("map")) r.map = choice(rel["map"], rp + "/map", kMaps);
      if (rel.contains("which")) r.which = integer(rel["which"], rp + "/which");
      if (rel.contains("corrected")) r.corrected = boolean(rel["corrected"], rp + "/corrected");
      spec.relation = r;
    }
    return spec;
  }

 private:
  std::string id_;
};

// nlohmann reports a 1-based byte offset; convert it for the caller.
ParseError located_parse_error(std::string_view text, const json::parse_error& e) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::string what = e.what();
  if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
  return ParseError("catalog: " + what, line, column);
}

}  // namespace

std::string catalog_to_json(const Catalog& catalog) {
  json doc = {{"version", kFormatVersion}, {"identities", json::array()}};
  for (const auto& spec : catalog) doc["identities"].push_back(identity_json(spec));
  return doc.dump(2) + "\n";
}

Catalog catalog_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw located_parse_error(text, e);
  }
  Reader top("");
  top.object(doc, "", {"version", "identities"});
  const json& version = top.field(doc, "", "version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw SchemaError("catalog at /version: unsupported version (expected 1)");
  }
  const json& list = top.field(doc, "", "identities");
  if (!list.is_array()) throw SchemaError("catalog at /identities: expected an array");

  Catalog out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ptr = "/identities/" + std::to_string(i);
    const json& entry = list[i];
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string()) {
      throw SchemaError("catalog at " + ptr + ": entry needs a string id");
    }
    const std::string id = entry["id"].get<std::string>();
    if (!seen.insert(id).second) throw SchemaError("identity " + id + " at " + ptr + "/id: duplicate id");
    out.push_back(Reader(id).identity(entry, ptr));
  }
  auto problems = validate_catalog(out);
  if (!problems.empty()) throw SchemaError("catalog: " + problems.front());
  return out;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open catalog " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return catalog_from_json(buffer.str());
}

void save_catalog(const Catalog& catalog, const std::filesystem::path& path) {
  const std::string text = catalog_to_json(catalog);
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace theta_idents
