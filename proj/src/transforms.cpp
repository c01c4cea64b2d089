#include "theta_idents/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "theta_idents/errors.hpp"

namespace theta_idents {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

complex th(int i, complex z, const Nome& nome) { return theta(theta_index(i), ThetaArgument(z, nome)); }

complex quotient(complex num, complex den) {
  if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(num))) throw PoleError("relation denominator vanishes");
  return num / den;
}

RelationValue make(complex lhs, complex rhs) {
  return {lhs, rhs, std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)))};
}

complex eighth_root(int k) {
  k = ((k % 8) + 8) % 8;
  switch (k) {
    case 0: return {1.0, 0.0};
    case 2: return kI;
    case 4: return {-1.0, 0.0};
    case 6: return -kI;
    default: return std::polar(1.0, kPi * k / 4.0);
  }
}

}  // namespace

RelationValue half_period_ratio(complex z, const Nome& nome) {
  const complex w = z + 0.5 * kPi * (1.0 + nome.tau());
  return make(quotient(th(1, z, nome), th(2, z, nome)), -kI * quotient(th(3, w, nome), th(4, w, nome)));
}

complex mapped_tau(ModularMapKind map, complex tau) {
  return map == ModularMapKind::MinusInverse ? -1.0 / tau : tau / (1.0 - tau);
}

ThetaIndex modular_image(ModularMapKind map, ThetaIndex numerator) {
  if (map == ModularMapKind::MinusInverse) {
    switch (numerator) {
      case ThetaIndex::One: return ThetaIndex::One;
      case ThetaIndex::Two: return ThetaIndex::Four;
      case ThetaIndex::Three: return ThetaIndex::Three;
      case ThetaIndex::Four: break;
    }
  } else {
    switch (numerator) {
      case ThetaIndex::One: return ThetaIndex::One;
      case ThetaIndex::Two: return ThetaIndex::Three;
      case ThetaIndex::Three: return ThetaIndex::Two;
      case ThetaIndex::Four: break;
    }
  }
  throw UnsupportedFactor("no modular image for a theta_4 numerator");
}

ThetaIndex modular_denominator(ModularMapKind map) {
  return map == ModularMapKind::MinusInverse ? ThetaIndex::Two : ThetaIndex::Four;
}

// Printed constants: -i, 1, -i under tau -> -1/tau and 1, i^{-1/2}, i^{-1/2}
// under tau -> tau/(1-tau). The third -i fails; the relation holds with 1.
int modular_phase_eighths(ModularMapKind map, ThetaIndex numerator, bool corrected) {
  if (map == ModularMapKind::MinusInverse) {
    switch (numerator) {
      case ThetaIndex::One: return 6;
      case ThetaIndex::Two: return 0;
      case ThetaIndex::Three: return corrected ? 0 : 6;
      case ThetaIndex::Four: break;
    }
  } else {
    switch (numerator) {
      case ThetaIndex::One: return 0;
      case ThetaIndex::Two: return 7;
      case ThetaIndex::Three: return 7;
      case ThetaIndex::Four: break;
    }
  }
  throw UnsupportedFactor("no modular image for a theta_4 numerator");
}

ModularCheck modular_check(ModularMapKind map, int numerator, complex z, const Nome& nome, bool corrected) {
  const ThetaIndex num = theta_index(numerator);
  const Nome mapped(mapped_tau(map, nome.tau()));
  const complex scaled = (map == ModularMapKind::MinusInverse ? nome.tau() : 1.0 - nome.tau()) * z;
  ModularCheck out;
  out.lhs = quotient(theta(num, ThetaArgument(z, mapped)), theta(ThetaIndex::Four, ThetaArgument(z, mapped)));
  const complex image = quotient(theta(modular_image(map, num), ThetaArgument(scaled, nome)),
                                 theta(modular_denominator(map), ThetaArgument(scaled, nome)));
  out.constant = eighth_root(modular_phase_eighths(map, num, corrected));
  out.rhs = out.constant * image;
  out.residual = make(out.lhs, out.rhs).residual;
  // odd ratios at z = 0 carry no information about the constant
  out.best_fit = std::abs(image) < 1e-14 && std::abs(out.lhs) < 1e-14 ? out.constant : quotient(out.lhs, image);
  return out;
}

RelationValue product_ratio_check(int which, complex z, const Nome& nome, bool corrected) {
  if (which < 1 || which > 6) throw DomainError("product-ratio relation index must be 1..6");
  const complex w = 2.0 * z + 0.5 * kPi * nome.tau();
  const complex a1 = th(1, z, nome), a2 = th(2, z, nome), a3 = th(3, z, nome), a4 = th(4, z, nome);
  const complex c2 = th(2, 0.0, nome), c3 = th(3, 0.0, nome), c4 = th(4, 0.0, nome);
  const complex w1 = th(1, w, nome), w2 = th(2, w, nome), w3 = th(3, w, nome), w4 = th(4, w, nome);
  switch (which) {
    case 1: return make(quotient(a2 * a3, a1 * a4), kI * quotient(c3 * w3 + c2 * w2, c4 * w4));
    case 2: return make(quotient(a1 * a3, a2 * a4), quotient(c2 * w1 - kI * c4 * w3, c3 * w4));
    case 3: return make(quotient(a1 * a2, a3 * a4), quotient(c3 * w1 - kI * c4 * w2, c2 * w4));
    case 4: return make(quotient(a2 * a4, a1 * a3), quotient(c2 * w1 + kI * c4 * w3, c3 * w4));
    case 5: return make(quotient(a1 * a4, a2 * a3), kI * quotient(c2 * w2 - c3 * w3, (corrected ? c4 : c3) * w4));
    default: return make(quotient(a3 * a4, a1 * a2), quotient(c3 * w1 + kI * c4 * w2, c2 * w4));
  }
}

RelationValue relation_sides(const TransformRelation& relation, complex z, const Nome& nome) {
  switch (relation.kind) {
    case TransformRelation::Kind::HalfPeriod: return half_period_ratio(z, nome);
    case TransformRelation::Kind::Modular: {
      const ModularCheck c = modular_check(relation.map, relation.which, z, nome, relation.corrected);
      return {c.lhs, c.rhs, c.residual};
    }
    case TransformRelation::Kind::ProductRatio:
      return product_ratio_check(relation.which - 124, z, nome, relation.corrected);
  }
  throw DomainError("unknown transform relation");
}

namespace {

struct Mapper {
  ModularMapKind map;
  const std::string& id;

  RatioFactor factor(RatioFactor f, int& phase) const {
    if (f.kind == FactorKind::LogDerivative) {
      throw UnsupportedFactor(id + ": logarithmic derivative factor has no modular image");
    }
    if (f.kind != FactorKind::Ratio || f.denominator != ThetaIndex::Four) {
      throw UnsupportedFactor(id + ": only theta_n/theta_4 ratios have a modular image");
    }
    phase += f.power * modular_phase_eighths(map, f.numerator, true);
    f.numerator = modular_image(map, f.numerator);
    f.denominator = modular_denominator(map);
    return f;
  }

  CyclicSum sum(CyclicSum cs) const {
    int phase = 0;
    for (auto& f : cs.factors) f = factor(f, phase);
    if (cs.chain) {
      int per_link = 0;
      cs.chain->factor = factor(cs.chain->factor, per_link);
      if (per_link % 8 != 0) {
        throw UnsupportedFactor(id + ": chain length makes the modular constant symbolic");
      }
    }
    if (cs.product_form && phase % 8 != 0) {
      throw UnsupportedFactor(id + ": product over j makes the modular constant depend on p");
    }
    cs.phase_eighths = ((cs.phase_eighths + phase) % 8 + 8) % 8;
    return cs;
  }
};

}  // namespace

IdentitySpec derive_tau_shift_identity(const IdentitySpec& spec, ModularMapKind map) {
  if (spec.family == Family::Transform) throw UnsupportedFactor(spec.id + ": transform relations are not derivable");
  if (spec.status == Status::Erratum) {
    throw UnsupportedFactor(spec.id + ": source is an erratum entry; derive from " + spec.corrected_by);
  }
  if (spec.shift != ShiftUnit::Real || spec.coeff_modulus != CoeffModulus::Same) {
    throw UnsupportedFactor(spec.id + ": source already uses complex shifts");
  }
  const Mapper mapper{map, spec.id};
  IdentitySpec out = spec;
  out.id = spec.id + ":" + std::string(map_name(map));
  out.status = Status::Unchecked;
  out.corrected_by.clear();
  out.corrects.clear();
  out.note = "derived from " + spec.id + " via " + std::string(map_name(map));
  out.shift = map == ModularMapKind::MinusInverse ? ShiftUnit::Tau : ShiftUnit::OneMinusTau;
  out.coeff_modulus = map == ModularMapKind::MinusInverse ? CoeffModulus::MinusInverse : CoeffModulus::OverOneMinus;
  out.provenance = Provenance{spec.id, map};
  for (auto& cs : out.lhs) cs = mapper.sum(cs);
  for (auto& term : out.rhs) {
    if (term.kind == RhsKind::MeanValueIntegral) {
      throw UnsupportedFactor(spec.id + ": mean-value integral has no modular image");
    }
    if (term.sum) term.sum = mapper.sum(*term.sum);
  }
  return out;
}

}  // namespace theta_idents
