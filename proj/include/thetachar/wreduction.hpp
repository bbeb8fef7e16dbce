#pragma once

#include "thetachar/characters.hpp"

namespace thetachar {

/// Eigenspace data of the ad x grading attached to an sl2 triple {f, x, e}.
/// Roots are kept in fundamental-weight coordinates; Delta_j is assumed to
/// lie in Delta_+ for j > 0.
struct NilpotentGrading {
    WVec x;                            // grading element
    std::vector<WVec> delta_zero;      // roots with alpha(x) = 0
    std::vector<WVec> delta_zero_plus; // the positive ones
    std::vector<WVec> delta_half;      // roots with alpha(x) = 1/2
    long dim_g0 = 0;
    long dim_g_half = 0;
    std::vector<WVec> h_f;             // basis of the f-centralizer in h
};

/// The grading with alpha_i(x) = 1 on every simple root: x is the dual Weyl
/// vector, every root eigenvalue is a nonzero integer, and h^f = 0.
NilpotentGrading principal_grading(const RootSystem& rs);

/// R^W = eta(tau)^{(3l - dim(g_0 + g_1/2))/2}
///         prod_{a in D0+} theta11(tau, a(z))
///         (prod_{a in D1/2} theta01(tau, a(z)))^{1/2},
/// restricted to h^f.  An sl2 grading always has dim(g_0 + g_1/2) = l mod 2
/// (opposite root pairs in g_0, a symplectic form on g_1/2); inputs with the
/// wrong parity leave a half-integral eta exponent and are rejected.
GradedSeries w_denominator(const NilpotentGrading& g, const Rat& order);

struct ReducedCharacter {
    BoundaryWeight descriptor;
    NilpotentGrading grading;
    GradedSeries series; // rank = dim h^f; empty when the reduction vanishes
};

/// Reduced character of a boundary weight through the closed product form
///   (-i)^{|D+|} q^{(hv/2u)|beta - x|^2} eta(u tau)^{l - |D+|}
///   prod_{a in D+} theta11(u tau, (y(a)|beta - x) tau)  /  R^W.
/// With h^f = 0 every theta argument is a pure tau multiple, so factors can
/// cancel exactly; a vanishing reduction comes back as the empty series.
ReducedCharacter reduced_character(const RootSystem& rs, const BoundaryWeight& d,
                                   const NilpotentGrading& g, const Rat& order);

/// Independent route: substitute z -> z - tau x and the third slot
/// t = tau (x|x)/2 into R ch_Lambda, collapse the weight directions onto
/// h^f, and divide by R^W.
GradedSeries reduced_by_substitution(const RootSystem& rs, const BoundaryWeight& d,
                                     const NilpotentGrading& g, const Rat& order);

/// 1 - 3(u-2)^2/u, the central charge of the boundary Virasoro vacua; only
/// odd u >= 3 are boundary for the Virasoro reduction.
Rat central_charge_boundary_virasoro(long u);

} // namespace thetachar
