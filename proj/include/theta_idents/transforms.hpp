#pragma once

// Half-period, modular and product-ratio relations between theta ratios, and
// the derivation of identities with shifts in units of tau T/p or (1-tau) T/p.

#include "theta_idents/catalog.hpp"
#include "theta_idents/special_fn.hpp"

namespace theta_idents {

struct RelationValue {
  complex lhs;
  complex rhs;
  double residual = 0.0;  // |lhs - rhs| / (1 + max(|lhs|, |rhs|))
};

// theta_1/theta_2 (z) against -i theta_3/theta_4 (z + pi(1 + tau)/2).
RelationValue half_period_ratio(complex z, const Nome& nome);

struct ModularCheck {
  complex lhs;       // theta_n / theta_4 at (z, mapped tau)
  complex rhs;       // constant * image ratio at (scaled z, tau)
  double residual = 0.0;
  complex constant;  // the constant used on the right
  complex best_fit;  // lhs / (rhs / constant)
};

// tau_1 = -1/tau:      theta_n/theta_4 (z, tau_1) = c theta_img/theta_2 (tau z, tau)
// tau_3 = tau/(1-tau): theta_n/theta_4 (z, tau_3) = c theta_img/theta_4 ((1-tau) z, tau)
// `numerator` is 1, 2 or 3. `corrected` swaps in the constant that holds where
// the printed one does not.
ModularCheck modular_check(ModularMapKind map, int numerator, complex z, const Nome& nome, bool corrected = false);

ThetaIndex modular_image(ModularMapKind map, ThetaIndex numerator);
ThetaIndex modular_denominator(ModularMapKind map);
// The constant as a multiple of pi/4 in the exponent: exp(i pi k / 4).
int modular_phase_eighths(ModularMapKind map, ThetaIndex numerator, bool corrected = true);
complex mapped_tau(ModularMapKind map, complex tau);

// which = 1..6 selects the relation for theta_2 theta_3/theta_1 theta_4,
// theta_1 theta_3/theta_2 theta_4, theta_1 theta_2/theta_3 theta_4,
// theta_2 theta_4/theta_1 theta_3, theta_1 theta_4/theta_2 theta_3,
// theta_3 theta_4/theta_1 theta_2, each expressed at 2z + pi tau/2.
RelationValue product_ratio_check(int which, complex z, const Nome& nome, bool corrected = false);

// Both sides of a Transform catalog entry at z.
RelationValue relation_sides(const TransformRelation& relation, complex z, const Nome& nome);

// Rewrites a real-shift identity through the modular map. Throws
// UnsupportedFactor for factors without a modular image (logarithmic
// derivatives, bare theta factors, mean-value integrals) and for erratum or
// already derived sources.
IdentitySpec derive_tau_shift_identity(const IdentitySpec& spec, ModularMapKind map);

}  // namespace theta_idents
