#pragma once

#include <complex>

#include "thetachar/characters.hpp"

namespace thetachar {

/// Reading of the S-matrix entry formula. `calibrated` takes the phase and
/// lattice parts verbatim, reads sin(pi i u (rho|alpha)/hv) as an ordinary
/// sine, and fixes the global positive scale by unitarity; `verbatim` keeps
/// the literal i inside the sine (a hyperbolic, non-unitary matrix, kept as
/// a switchable reading).
enum class SConvention { calibrated, verbatim };

struct SMatrix {
    std::vector<BoundaryWeight> weights;
    std::vector<std::vector<std::complex<double>>> entries;
};

/// |Q / u hv Q*|: index of the dilated dual lattice inside the root lattice,
/// the product of the elementary divisors of the embedding.
long lattice_index(const RootSystem& rs, long u);

/// One entry before the global rescale:
///   |Q/u hv Q*|^{-1/2} eps(y y') prod_{alpha>0} 2 sin(pi u (rho|alpha)/hv)
///   e^{-2 pi i ((rho|beta+beta') + hv (beta|beta')/u)}.
std::complex<double> s_entry_raw(const RootSystem& rs, long u, const BoundaryWeight& a,
                                 const BoundaryWeight& b, SConvention conv);

/// Calibrated entry (raw divided by the square root of the unitarity defect
/// of its row). Throws LevelMismatch if the descriptors disagree on u.
std::complex<double> s_entry(const RootSystem& rs, const BoundaryWeight& a,
                             const BoundaryWeight& b,
                             SConvention conv = SConvention::calibrated);

/// Full matrix over boundary_weights(rs, u), in enumeration order.
SMatrix s_matrix(const RootSystem& rs, long u, SConvention conv = SConvention::calibrated);

/// Verlinde number  sum_mu a(d1,mu) a(d2,mu) a(d3,mu) / a(vac,mu),
/// rounded to the nearest integer; |value - round| must stay below 1e-6
/// or NonIntegerFusion is thrown.
long verlinde_fusion(const RootSystem& rs, const BoundaryWeight& d1, const BoundaryWeight& d2,
                     const BoundaryWeight& d3, SConvention conv = SConvention::calibrated);

} // namespace thetachar
