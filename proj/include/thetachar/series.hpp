#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "thetachar/rational.hpp"

namespace thetachar {

/// Key of one term. q is the q-exponent as an integer multiple of 1/qden,
/// w the weight exponent (fundamental-weight coordinates) as integer
/// multiples of 1/wden; the denominators live on the owning series.
struct Monomial {
    std::int64_t q = 0;
    std::vector<std::int64_t> w;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse exact series in q and formal weight exponents, with a rational
/// t-slot exponent and a power of i tracked separately so coefficients stay
/// rational. unit_pow is canonical in {0, 1}: factors of i^2 fold into the
/// coefficient signs.
///
/// trunc(): terms with qExp >= trunc are absent and carry no information.
/// An engaged nullopt means the series is exact (finite, untruncated).
class GradedSeries {
public:
    GradedSeries() = default;
    explicit GradedSeries(int rank, std::optional<Rat> trunc = std::nullopt)
        : rank_(rank), trunc_(std::move(trunc)) {}

    static GradedSeries constant(int rank, const Rat& c);
    /// c * i^unit * q^qexp * e^(wexp) * e^(2 pi i texp t)
    static GradedSeries monomial(int rank, const Rat& qexp, const WVec& wexp, const Rat& c,
                                 const Rat& texp = Rat(0), int unit = 0);

    int rank() const { return rank_; }
    long qden() const { return qden_; }
    long wden() const { return wden_; }
    const Rat& t_exp() const { return t_exp_; }
    void set_t_exp(const Rat& t) { t_exp_ = t; }
    int unit_pow() const { return unit_pow_; }
    void set_unit_pow(int u); // folds i^2 into coefficient signs
    const std::optional<Rat>& trunc() const { return trunc_; }
    void restrict_trunc(const Rat& order); // intersect validity with qExp < order

    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    Rat q_exp(const Monomial& m) const { return rat(Int(m.q), Int(qden_)); }
    WVec w_exp(const Monomial& m) const;
    std::optional<Rat> lowest_q_exp() const;

    /// Accumulate c * q^qexp * e^(wexp); enlarges qden/wden on demand,
    /// drops cancellations to zero and anything at/above trunc.
    void add_term(const Rat& qexp, const WVec& wexp, const Rat& c);
    Rat coeff(const Rat& qexp, const WVec& wexp) const;

    void rescale(long new_qden, long new_wden);
    void negate_coeffs();

    friend bool operator==(const GradedSeries& a, const GradedSeries& b);

private:
    int rank_ = 0;
    long qden_ = 1;
    long wden_ = 1;
    Rat t_exp_ = Rat(0);
    int unit_pow_ = 0;
    std::optional<Rat> trunc_;
    std::map<Monomial, Rat> terms_;

    friend GradedSeries add(const GradedSeries&, const GradedSeries&);
    friend GradedSeries mul_serial(const GradedSeries&, const GradedSeries&);
    friend GradedSeries mul_parallel(const GradedSeries&, const GradedSeries&);
    friend GradedSeries substitute_q_power(const GradedSeries&, long);
    friend GradedSeries scale(const GradedSeries&, const Rat&);
};

GradedSeries add(const GradedSeries& a, const GradedSeries& b);
GradedSeries sub(const GradedSeries& a, const GradedSeries& b);

/// Truncated Cauchy product. mul() dispatches between the serial reference
/// kernel and the OpenMP one on input size; both produce identical terms
/// (exact arithmetic, order-independent accumulation).
GradedSeries mul(const GradedSeries& a, const GradedSeries& b);
GradedSeries mul_serial(const GradedSeries& a, const GradedSeries& b);
GradedSeries mul_parallel(const GradedSeries& a, const GradedSeries& b);

GradedSeries scale(const GradedSeries& a, const Rat& c);
/// Multiply by i^ipow (ipow may be any integer, canonicalized mod 4).
GradedSeries scale_unit(const GradedSeries& a, int ipow);
/// Multiply by c * i^unit * q^qshift * e^(wshift) * e^(2 pi i tshift t).
GradedSeries mul_monomial(const GradedSeries& a, const Rat& qshift, const WVec& wshift,
                          const Rat& c, const Rat& tshift = Rat(0), int unit = 0);

/// Reciprocal. Requires a unique lowest term: exactly one monomial at the
/// minimal qExp, nonzero coefficient. Result valid below trunc - 2*lowest.
GradedSeries invert(const GradedSeries& a);
GradedSeries invert(const GradedSeries& a, const Rat& order);

/// q -> q^u (tau -> u tau); exponents and validity scale by u.
GradedSeries substitute_q_power(const GradedSeries& a, long u);

/// z -> z + tau*beta: each term's qExp grows by (wExp | beta). The caller
/// supplies the pairing as fw_pairings[i] = (omega_i | beta). Validity is
/// adjusted by the smallest shift seen among stored terms; callers verify
/// windows by recomputing from a deeper base when the shift can be negative.
GradedSeries shift_weight_by_tau(const GradedSeries& a, const std::vector<Rat>& fw_pairings);

/// w -> M w on weight exponents (rows = new coordinates); used for Weyl
/// action and for restricting z to a subspace. new rank = mat.size().
GradedSeries map_weights(const GradedSeries& a, const std::vector<WVec>& mat);

/// Restrict z to 0: collapse all weight exponents, summing coefficients.
GradedSeries collapse_weights(const GradedSeries& a);

GradedSeries truncate(const GradedSeries& a, const Rat& order);

/// Exact comparison of all terms with qExp < order. Both inputs must be
/// valid there. Units/t-exponents must agree unless a side is empty.
bool equal_below(const GradedSeries& a, const GradedSeries& b, const Rat& order);

/// Long division num/den expanding into the cone below the leading corner.
///
/// Division order: qExp ascending, then height descending, then weight lex;
/// height(w) = sum height[i] * wExp[i]. den's minimum in this order is the
/// corner; every other den term must sit strictly inside the positive-drop
/// cone, drop(dq, dw) = q_weight*dq - height(dw) > 0. The result contains
/// exactly the quotient terms with drop <= bound relative to the quotient's
/// own corner; deeper terms exist mathematically but are cut.
struct ConeSpec {
    std::vector<Rat> height;
    Rat q_weight;
    Rat bound;
};

GradedSeries divide_in_cone(const GradedSeries& num, const GradedSeries& den, const ConeSpec& spec);

/// Exact series square root; requires a unique lowest term with even
/// exponents and a square coefficient, else SquareRootNotSeries.
GradedSeries sqrt_series(const GradedSeries& a);

} // namespace thetachar
