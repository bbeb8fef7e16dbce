#pragma once

#include "thetachar/root_system.hpp"

namespace thetachar {

/// Weight of the untwisted affine algebra, written as
/// finite + level * Lambda_0 + delta * (imaginary root).
struct AffineWeight {
    WVec finite;
    Rat level;
    Rat delta;

    friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

/// (a | b) = (finite|finite') + level * delta' + level' * delta
Rat affine_inner(const RootSystem& rs, const AffineWeight& a, const AffineWeight& b);

AffineWeight rho_hat(const RootSystem& rs);                  // (rho, h-check, 0)
AffineWeight vacuum_weight(const RootSystem& rs, const Rat& level); // level * Lambda_0

/// Real affine root finite + n * delta (finite nonzero), or an imaginary
/// n * delta when finite vanishes.
struct AffineRoot {
    WVec finite;
    long n = 0;

    friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
};

/// The u-dilated simple system {u delta - theta, alpha_1 .. alpha_l}.
std::vector<AffineRoot> pi_hat_u(const RootSystem& rs, long u);

/// (t_beta y) on a real root: y first, then t_beta which shifts the delta
/// coefficient by -(y(alpha) | beta).
AffineRoot act_on_root(const RootSystem& rs, const WVec& beta, const WeylElement& y,
                       const AffineRoot& r);

/// alpha + n*delta with n >= 1, or n = 0 and alpha positive.
bool affine_root_positive(const RootSystem& rs, const AffineRoot& r);

/// Translation t_beta. Requires beta in the dual lattice Q* (the coweight
/// lattice), so that it normalizes the affine root system.
AffineWeight translate(const RootSystem& rs, const WVec& beta, const AffineWeight& w);
AffineWeight weyl_apply(const RootSystem& rs, const WeylElement& y, const AffineWeight& w);

/// Shifted action (t_beta y).lam = t_beta(y(lam + rho_hat)) - rho_hat.
AffineWeight shifted_act(const RootSystem& rs, const WeylElement& y, const WVec& beta,
                         const AffineWeight& lam);

/// k with k + h-check = h-check / u.
Rat boundary_level(const RootSystem& rs, long u);

/// Conformal weight offset m_Lambda = |lam+rho|^2 / (2(k+h)) + delta - dim g / 24.
/// Throws CriticalLevel at k = -h.
Rat normalization_exponent(const RootSystem& rs, const AffineWeight& lam);

/// Principal admissibility at the boundary level for u: (i) no pairing of
/// lam + rho_hat with a positive real coroot lands in the nonpositive
/// integers, (ii) the integral roots span full affine rank. Exact.
bool is_admissible(const RootSystem& rs, long u, const AffineWeight& lam);

struct BoundaryWeight {
    int y_index = 0; // into weyl_elements()
    WVec beta;       // coweight-lattice translation
    AffineWeight lambda;
};

/// All boundary principal admissible weights at level h/u - h, each as
/// (t_beta y).(k Lambda_0) with t_beta y mapping the u-dilated simple
/// system into positive roots. Requires u >= 1 coprime to the lacing.
std::vector<BoundaryWeight> boundary_weights(const RootSystem& rs, long u);

} // namespace thetachar
