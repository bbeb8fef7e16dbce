#pragma once

#include <vector>

#include "thetachar/series.hpp"

namespace thetachar {

enum class ThetaKind { eta, theta11, theta01 };

/// One factor theta(u*tau, mu(z) + c*tau)^exponent or eta(u*tau)^exponent.
/// eta carries no argument fields.
struct ThetaFactor {
    ThetaKind kind = ThetaKind::eta;
    long tau_scale = 1; // u
    WVec arg;           // mu in fundamental-weight coordinates
    Rat tau_shift;      // c
    long exponent = 1;

    friend bool operator==(const ThetaFactor&, const ThetaFactor&) = default;
};

/// scalar * i^unit * q^q_exp * e^(w_exp) * e^(2 pi i t_exp t)
struct Prefactor {
    Rat t_exp;
    Rat q_exp;
    WVec w_exp;
    Rat scalar = Rat(1);
    int unit = 0;
};

struct ThetaProductForm {
    Prefactor pre;
    std::vector<ThetaFactor> factors;
};

/// eta(u tau) = q^(u/24) prod (1 - q^(u n)), expanded through the given
/// depth above the lowest exponent.
GradedSeries expand_eta(int rank, long u, const Rat& order);

/// theta11(u tau, mu(z) + c tau) as the signed half-integer power sum;
/// the overall unit i sits on the series' unit slot.
GradedSeries expand_theta11(int rank, long u, const WVec& mu, const Rat& c, const Rat& order);

/// theta01(u tau, mu(z) + c tau) as the signed integer power sum.
GradedSeries expand_theta01(int rank, long u, const WVec& mu, const Rat& c, const Rat& order);

GradedSeries expand_factor(int rank, const ThetaFactor& f, const Rat& order);

/// Exact monomial with theta11(u tau, arg + m*(u tau) + n) =
/// factor * theta11(u tau, arg) for arg = mu(z) + c tau.
struct EllipticFactor {
    int unit = 0; // power of i
    Rat q_shift;
    WVec w_shift;
};
EllipticFactor elliptic_transform(long m, long n, long u, const WVec& mu, const Rat& c);

/// Merge factor lists (exponents of identical factors add) and compose
/// prefactors; inverse negates every exponent.
ThetaProductForm form_mul(const ThetaProductForm& a, const ThetaProductForm& b);
ThetaProductForm form_inverse(const ThetaProductForm& a);

/// Multiply i^ipow into the prefactor, folding i^2 = -1 into the scalar.
void prefactor_times_unit(Prefactor& pre, long ipow);

/// Multiply one factor into the form, merging with an identical factor and
/// dropping it when the exponent cancels.
void form_push(ThetaProductForm& f, const ThetaFactor& t);

/// Evaluate the form to the given depth above its lowest stratum. Factors
/// with negative exponents are divided out: weightless denominators by
/// plain inversion, weighted ones by cone division (cone required, else
/// NotInvertible).
GradedSeries evaluate_product_form(const ThetaProductForm& f, int rank, const Rat& order,
                                   const ConeSpec* cone = nullptr);

} // namespace thetachar
