#pragma once

#include "thetachar/affine.hpp"
#include "thetachar/theta.hpp"

namespace thetachar {

/// Normalized boundary character ch_Lambda = q^{m_Lambda} tr e^{2 pi i h},
/// kept both as a theta quotient and as an expanded window.
struct CharacterResult {
    BoundaryWeight descriptor;
    long u = 1;
    Rat m_lambda;
    ThetaProductForm form;     // theta quotient, factors in canonical positive form
    ThetaProductForm rch_form; // form * denominator_form with all cancellations merged
    GradedSeries rch;          // denominator * character, exact to the requested depth
    GradedSeries series;       // the character itself, divided inside character_cone
};

/// Division cone shared by every character expansion over one root system:
/// height covector, q-weight ht(theta) + 1 (so each denominator displacement
/// drops), and the window bound.
ConeSpec character_cone(const RootSystem& rs, const Rat& bound);

/// Weyl-Kac denominator
///   R = (-i)^{|D+|} e^{2 pi i hv t} eta(tau)^{l - |D+|} prod theta11(tau, alpha(z)).
ThetaProductForm denominator_form(const RootSystem& rs);
GradedSeries denominator(const RootSystem& rs, const Rat& order);

/// Macdonald sum for R over the affine Weyl group W x t_{Q-check},
/// truncated by delta-degree; independent of the product route.
GradedSeries denominator_sum(const RootSystem& rs, const Rat& order);

/// Recover u from the descriptor's level: level + hv = hv / u.
long descriptor_u(const RootSystem& rs, const BoundaryWeight& d);

/// Boundary character as the theta quotient
///   e^{2 pi i(kt + (hv/u)(z|beta))} q^{(hv/2u)|beta|^2}
///   (eta(u tau)/eta(tau))^{l-|D+|} prod theta11(u tau, y(alpha)(z+tau beta))
///                                       / theta11(tau, alpha(z)).
CharacterResult boundary_character(const RootSystem& rs, const BoundaryWeight& d,
                                   const Rat& order);

/// Just the expanded R ch_Lambda window, skipping the cone division that
/// extracts weight multiplicities.
GradedSeries boundary_rch(const RootSystem& rs, const BoundaryWeight& d, const Rat& order);

/// Integral-Weyl-group sum for denominator * character: terms
/// eps(w) e^{(t_beta y) t_{u gamma} w (xi)} with xi = (hv/u) Lambda_0 + rho,
/// truncated by delta-degree.  The independent oracle.
GradedSeries oracle_rch(const RootSystem& rs, const BoundaryWeight& d, const Rat& order);

/// oracle_rch divided by the denominator inside character_cone.
GradedSeries oracle_character(const RootSystem& rs, const BoundaryWeight& d, const Rat& order);

/// Checks (R ch_Lambda)(tau,z,t) = R(u tau, y^{-1}(z + tau beta),
/// (t + (z|beta) + tau |beta|^2/2)/u): the t-slot terms become a weight
/// monomial e^{2 pi i (hv/u)(z|beta)} and a q-power q^{(hv/2u)|beta|^2}.
bool substitution_identity_check(const RootSystem& rs, const BoundaryWeight& d,
                                 const Rat& order);

/// Odd-rank sl_N closed form at u = 2: i^{p(N-p)} e^{-pi i N t}
/// (eta(2tau)/eta(tau))^{-(N-1)(N-2)/2} times theta11(2tau, z_i+..+z_j) for
/// root intervals avoiding p and theta01(2tau, z_i+..+z_j) for intervals
/// crossing p, all over theta11(tau, z_i+..+z_j).
ThetaProductForm example2_form(long n_value, int p);
GradedSeries example2_closed_form(long n_value, int p, const Rat& order);

/// Terms of the expanded character violating the highest-weight constraint:
/// weights must lie in Lambda - (non-negative affine root combinations) with
/// non-negative integer multiplicities.
struct PositivityViolation {
    Rat q_exp;
    WVec weight;
    Rat coeff;
};
std::vector<PositivityViolation> positivity_report(const RootSystem& rs,
                                                   const AffineWeight& lambda,
                                                   const Rat& m_lambda,
                                                   const GradedSeries& character);
std::vector<PositivityViolation> positivity_report(const RootSystem& rs,
                                                   const BoundaryWeight& d, const Rat& order);

/// Weyl-Kac numerator sum for an integrable weight (full lattice u = 1), for
/// level-one cross-checks against known weight multiplicities.
GradedSeries integrable_rch(const RootSystem& rs, const AffineWeight& lambda, const Rat& order);

} // namespace thetachar
