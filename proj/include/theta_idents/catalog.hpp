#pragma once

// Declarative encoding of cyclic theta-ratio identities.
//
// A cyclic identity relates sums over j = 1..p of products of theta ratios
// evaluated at z_j = z + (j - 1) T/p. The index j + offset is never reduced
// mod p: z_{j+p} = z_j + T, which matters for ratios of period 2T.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "theta_idents/coeff_expr.hpp"
#include "theta_idents/int_expr.hpp"

namespace theta_idents {

enum class Family { MI1, MI1Alt, MI2, MI2Alt, MI3, MI4, Transform };

std::string_view family_name(Family family);  // "MI-I", "MI-I-alt", ..., "Transform"
std::optional<Family> parse_family(std::string_view name);
bool is_alternating_family(Family family);

enum class FactorKind {
  Ratio,          // (theta_num / theta_den)^power
  LogDerivative,  // theta_4' / theta_4
  Theta,          // theta_num^power, power may be negative; only for verbatim misprints
};

struct RatioFactor {
  FactorKind kind = FactorKind::Ratio;
  ThetaIndex numerator = ThetaIndex::Three;
  ThetaIndex denominator = ThetaIndex::Four;
  int power = 1;
  IntExpr offset;  // added to j; in chains may reference n

  friend bool operator==(const RatioFactor&, const RatioFactor&) = default;
};

// Product over n = 0 .. length-1 of `factor` with n substituted.
struct Chain {
  RatioFactor factor;
  IntExpr length;

  friend bool operator==(const Chain&, const Chain&) = default;
};

struct CyclicSum {
  bool alternating = false;   // weight (-1)^{j-1}
  bool product_form = false;  // product over j instead of a sum
  int phase_eighths = 0;      // constant factor exp(i pi phase / 4), from modular maps
  std::vector<RatioFactor> factors;
  std::optional<Chain> chain;

  friend bool operator==(const CyclicSum&, const CyclicSum&) = default;
};

enum class RhsKind {
  WeightedSum,        // coeff * sum
  PConstant,          // p * coeff
  MeanValueIntegral,  // (p/T) * integral over one period of the j = 1 term of `sum`
  Zero,
};

struct RhsTerm {
  RhsKind kind = RhsKind::Zero;
  std::optional<CoeffExpr> coeff;
  std::optional<CyclicSum> sum;

  friend bool operator==(const RhsTerm&, const RhsTerm&) = default;
};

enum class Parity { Any, Even, Odd };
enum class UpperBound { None, LessEqualP, LessThanP };

struct LengthConstraint {
  Parity parity = Parity::Any;
  int min = 1;
  UpperBound upper = UpperBound::None;
  int cap = 7;  // sweep ceiling

  friend bool operator==(const LengthConstraint&, const LengthConstraint&) = default;
};

// Admissible parameters. Every shift multiplier in `symbols` (r, s, t) ranges
// over 1 <= x < p with gcd(x, p) = 1, pairwise distinct.
struct Constraints {
  std::set<Symbol> symbols;
  Parity p_parity = Parity::Any;
  int p_min = 2;
  bool ordered_rs = false;  // left side symmetric under r <-> s: enumerate r < s only
  std::optional<LengthConstraint> length;

  friend bool operator==(const Constraints&, const Constraints&) = default;
};

enum class Status { Verified, Erratum, Unchecked };
std::string_view status_name(Status status);

// Unit of the shift between consecutive points: T/p, tau T/p or (1 - tau) T/p.
enum class ShiftUnit { Real, Tau, OneMinusTau };

// Modular parameter at which coefficient theta values are taken, relative to
// the tau of the left-hand side.
enum class CoeffModulus { Same, MinusInverse, OverOneMinus };

enum class ModularMapKind { MinusInverse, OverOneMinus };
std::string_view map_name(ModularMapKind kind);  // "minus-inverse" | "over-one-minus"

// Standalone relations of the Transform family.
struct TransformRelation {
  enum class Kind { HalfPeriod, Modular, ProductRatio };
  Kind kind = Kind::HalfPeriod;
  ModularMapKind map = ModularMapKind::MinusInverse;  // Modular only
  int which = 0;  // Modular: numerator 1..3; ProductRatio: relation 125..130 (TR-125 .. TR-130)
  bool corrected = false;  // corrected constant instead of the printed one

  friend bool operator==(const TransformRelation&, const TransformRelation&) = default;
};

struct Provenance {
  std::string source_id;
  ModularMapKind map = ModularMapKind::MinusInverse;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct IdentitySpec {
  std::string id;
  std::string paper_eq;  // printed label, e.g. "20a"
  Family family = Family::MI1;
  Period period = Period::Pi;
  std::vector<CyclicSum> lhs;
  std::vector<RhsTerm> rhs;
  Constraints constraints;
  Status status = Status::Unchecked;
  std::string corrected_by;  // Erratum: id of the verified sibling
  std::string corrects;      // sibling: id of the misprinted entry
  std::string note;
  ShiftUnit shift = ShiftUnit::Real;
  CoeffModulus coeff_modulus = CoeffModulus::Same;
  std::optional<Provenance> provenance;
  std::optional<TransformRelation> relation;

  friend bool operator==(const IdentitySpec&, const IdentitySpec&) = default;
};

using Catalog = std::vector<IdentitySpec>;

const Catalog& builtin_catalog();

// nullptr when absent.
const IdentitySpec* find_identity(const Catalog& catalog, std::string_view id);

// Schema diagnostics for one entry; empty iff the entry is well formed.
std::vector<std::string> validate(const IdentitySpec& spec);

// Entry diagnostics plus cross-entry checks (duplicate ids, erratum links).
std::vector<std::string> validate_catalog(const Catalog& catalog);

// One admissible parameter assignment. Unused multipliers are 0.
struct ParamBinding {
  int p = 0;
  int r = 0;
  int s = 0;
  int t = 0;
  int l = 0;

  IntBinding to_ints() const;
  friend auto operator<=>(const ParamBinding&, const ParamBinding&) = default;
};

struct PRange {
  int lo = 2;
  int hi = 9;
};

// Bindings satisfying the constraints, lexicographic in (p, r, s, t, l).
// Throws EmptyParameterSpace when nothing qualifies, DomainError if the range
// leaves [2, 64].
std::vector<ParamBinding> enumerate_params(const IdentitySpec& spec, PRange range);

// Reason the binding is inadmissible, or empty.
std::string check_binding(const IdentitySpec& spec, const ParamBinding& binding);

// Catalog file: {"version": 1, "identities": [...]}, documented in README.md.
// Malformed JSON raises ParseError; schema breaches raise SchemaError naming the
// entry id and the JSON pointer of the offending value.
Catalog catalog_from_json(std::string_view text);
std::string catalog_to_json(const Catalog& catalog);
Catalog load_catalog(const std::filesystem::path& path);
// Writes a sibling temporary file and renames it over `path`.
void save_catalog(const Catalog& catalog, const std::filesystem::path& path);

// Every coefficient expression of the entry.
std::vector<CoeffExpr> coefficient_expressions(const IdentitySpec& spec);

}  // namespace theta_idents
