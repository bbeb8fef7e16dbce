#include "thetachar/wreduction.hpp"

#include "thetachar/errors.hpp"

namespace thetachar {

namespace {

/// Shared input guards; returns the eta(tau) exponent (3l - dim(g0+g1/2))/2.
long half_eta_exponent(const NilpotentGrading& g) {
    if (g.x.empty()) fail(Errc::InvalidInput, "grading has no grading element");
    if (!g.h_f.empty())
        fail(Errc::UnsupportedType, "gradings with nonzero h^f are not supported");
    const long l = static_cast<long>(g.x.size());
    const long p2 = 3 * l - (g.dim_g0 + g.dim_g_half);
    if (((p2 % 2) + 2) % 2 != 0)
        fail(Errc::SquareRootNotSeries,
             "dim(g_0 + g_1/2) has the wrong parity for an sl2 grading, so the eta "
             "exponent is half-integral");
    if (!g.delta_zero_plus.empty())
        fail(Errc::UnsupportedType, "Delta_0+ theta factors vanish identically on h^f = 0");
    return p2 / 2;
}

void require_no_half_roots(const NilpotentGrading& g) {
    if (!g.delta_half.empty())
        fail(Errc::UnsupportedType, "only gradings with empty Delta_1/2 are enabled");
}

void require_matching_rank(const RootSystem& rs, const NilpotentGrading& g) {
    if (static_cast<int>(g.x.size()) != rs.rank())
        fail(Errc::InvalidInput, "grading element rank does not match the root system");
}

} // namespace

NilpotentGrading principal_grading(const RootSystem& rs) {
    NilpotentGrading g;
    g.x = rs.rho_check();
    for (const auto& r : rs.positive_roots()) {
        const Rat e = rs.inner(r.fw, g.x);
        if (e == 0) {
            g.delta_zero_plus.push_back(r.fw);
            g.delta_zero.push_back(r.fw);
            g.delta_zero.push_back(Rat(-1) * r.fw);
        } else if (e == rat(1, 2)) {
            g.delta_half.push_back(r.fw);
        }
    }
    g.dim_g0 = rs.rank() + static_cast<long>(g.delta_zero.size());
    g.dim_g_half = static_cast<long>(g.delta_half.size());
    return g;
}

GradedSeries w_denominator(const NilpotentGrading& g, const Rat& order) {
    const long e = half_eta_exponent(g);
    ThetaProductForm f;
    form_push(f, {ThetaKind::eta, 1, {}, Rat(0), e});
    GradedSeries out = evaluate_product_form(f, 0, order);
    if (!g.delta_half.empty()) {
        GradedSeries under_root = GradedSeries::constant(0, Rat(1));
        for (std::size_t i = 0; i < g.delta_half.size(); ++i)
            under_root = mul(under_root, expand_theta01(0, 1, {}, Rat(0), order));
        out = mul(out, sqrt_series(under_root));
    }
    return out;
}

ReducedCharacter reduced_character(const RootSystem& rs, const BoundaryWeight& d,
                                   const NilpotentGrading& g, const Rat& order) {
    require_no_half_roots(g);
    const long half_eta = half_eta_exponent(g);
    require_matching_rank(rs, g);
    const long u = descriptor_u(rs, d);
    const auto& y = rs.weyl_elements().at(static_cast<std::size_t>(d.y_index));
    const long np = static_cast<long>(rs.positive_roots().size());

    ReducedCharacter rc;
    rc.descriptor = d;
    rc.grading = g;

    ThetaProductForm f;
    prefactor_times_unit(f.pre, 3 * np); // (-i)^{|D+|}
    const WVec bx = d.beta - g.x;
    f.pre.q_exp = rat(rs.dual_coxeter(), 2 * u) * rs.norm2(bx);
    form_push(f, {ThetaKind::eta, u, {}, Rat(0), rs.rank() - np});
    form_push(f, {ThetaKind::eta, 1, {}, Rat(0), -half_eta});
    for (const auto& a : rs.positive_roots())
        form_push(f, {ThetaKind::theta11, u, {}, rs.inner(rs.apply(y, a.fw), bx), 1});
    rc.series = evaluate_product_form(f, 0, order);
    return rc;
}

GradedSeries reduced_by_substitution(const RootSystem& rs, const BoundaryWeight& d,
                                     const NilpotentGrading& g, const Rat& order) {
    require_no_half_roots(g);
    (void)half_eta_exponent(g); // same guards as the direct route
    require_matching_rank(rs, g);

    std::vector<Rat> pairings(static_cast<std::size_t>(rs.rank()));
    for (int i = 0; i < rs.rank(); ++i)
        pairings[static_cast<std::size_t>(i)] = -rs.inner(rs.fundamental_weight(i), g.x);
    const Rat level_t = rat(rs.dual_coxeter(), descriptor_u(rs, d));
    const Rat qshift = level_t * rs.norm2(g.x) / 2;

    Rat depth = order + 4;
    for (int attempt = 0; attempt < 20; ++attempt, depth = depth * 2) {
        GradedSeries s = shift_weight_by_tau(boundary_rch(rs, d, depth), pairings);
        s = collapse_weights(s);
        s = mul_monomial(s, qshift, WVec{}, Rat(1), -level_t);
        GradedSeries out = mul(s, invert(w_denominator(g, depth)));
        const Rat goal = out.empty() ? order : *out.lowest_q_exp() + order;
        if (out.trunc() && *out.trunc() < goal) continue;
        out.restrict_trunc(goal);
        return out;
    }
    fail(Errc::InvalidInput, "substitution window did not converge");
}

Rat central_charge_boundary_virasoro(long u) {
    if (u < 3 || u % 2 == 0)
        fail(Errc::InvalidU, "the Virasoro series needs odd u >= 3");
    return Rat(1) - rat(3 * (u - 2) * (u - 2), u);
}

} // namespace thetachar
