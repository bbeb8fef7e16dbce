#include "thetachar/characters.hpp"

#include <algorithm>

#include "thetachar/errors.hpp"

namespace thetachar {

namespace {

const WeylElement& identity_element(const RootSystem& rs) {
    for (const auto& w : rs.weyl_elements())
        if (w.word.empty()) return w;
    fail(Errc::InvalidInput, "Weyl element list lacks the identity");
}

// smallest integer >= sqrt(max(x, 0))
Int ceil_sqrt(const Rat& x) {
    if (x <= 0) return Int(0);
    Int c = ceil_int(x);
    Int s;
    mpz_sqrt(s.get_mpz_t(), c.get_mpz_t());
    while (s * s < c) ++s;
    return s;
}

std::vector<WVec> rational_rows(const std::vector<std::vector<long>>& m) {
    std::vector<WVec> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        WVec r;
        r.reserve(row.size());
        for (long v : row) r.push_back(Rat(v));
        out.push_back(std::move(r));
    }
    return out;
}

/// sum_{w in W, gamma in Q-check} eps(w) e^{t_beta y t_{u gamma} w (xi)},
/// realized as q^{q_base - delta} x^{finite}; complete for every term with
/// qExp < (lowest qExp) + order.  The box over gamma comes from completing
/// the square in the delta-degree, which is an inhomogeneous positive
/// quadratic in gamma.
GradedSeries affine_weyl_sum(const RootSystem& rs, long u, const WVec& beta,
                             const WeylElement& y, const AffineWeight& xi, const Rat& q_base,
                             const Rat& order) {
    const Rat lvl = xi.level;
    if (lvl <= 0) fail(Errc::CriticalLevel, "affine Weyl sums need a positive total level");
    const Rat a = lvl * u * u / 2;
    const Rat f2 = rs.norm2(xi.finite);
    const Rat b2 = rs.norm2(beta);
    // |v|^2 for v = w(finite)/(lvl u) + y^{-1}(beta)/u, bounded via
    // 2|f||b| <= |f|^2 + |b|^2 so everything stays rational
    const Rat rv2 = f2 / (lvl * lvl * u * u) + (f2 + b2) / (lvl * u * u) + b2 / (u * u);
    const Rat r2 = order / a;

    std::vector<Rat> box(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) {
        Rat scale2 = 2 / rs.d()[i];
        box[i] = Rat(ceil_sqrt(r2 * scale2) + ceil_sqrt(rv2 * scale2) + 1);
    }

    GradedSeries out(rs.rank());
    out.set_t_exp(lvl);
    const auto points = rs.coroot_box(box);
    for (const auto& w : rs.weyl_elements()) {
        const AffineWeight moved = weyl_apply(rs, w, xi);
        for (const auto& gamma : points) {
            AffineWeight nu = translate(rs, Rat(u) * gamma, moved);
            nu = weyl_apply(rs, y, nu);
            nu = translate(rs, beta, nu);
            out.add_term(q_base - nu.delta, nu.finite, Rat(w.sign));
        }
    }
    const auto low = out.lowest_q_exp();
    if (!low) fail(Errc::InvalidInput, "empty affine Weyl sum");
    out.restrict_trunc(*low + order);
    return out;
}

} // namespace

ConeSpec character_cone(const RootSystem& rs, const Rat& bound) {
    return {rs.height_covector(), Rat(rs.highest_root().height + 1), bound};
}

ThetaProductForm denominator_form(const RootSystem& rs) {
    const long np = static_cast<long>(rs.positive_roots().size());
    ThetaProductForm f;
    f.pre.t_exp = Rat(rs.dual_coxeter());
    f.pre.w_exp = WVec(rs.rank(), Rat(0));
    prefactor_times_unit(f.pre, 3 * np); // (-i)^{|D+|}
    const long e = rs.rank() - np;
    if (e != 0) form_push(f, {ThetaKind::eta, 1, {}, Rat(0), e});
    for (const auto& a : rs.positive_roots())
        form_push(f, {ThetaKind::theta11, 1, a.fw, Rat(0), 1});
    return f;
}

GradedSeries denominator(const RootSystem& rs, const Rat& order) {
    return evaluate_product_form(denominator_form(rs), rs.rank(), order);
}

GradedSeries denominator_sum(const RootSystem& rs, const Rat& order) {
    return affine_weyl_sum(rs, 1, WVec(rs.rank(), Rat(0)), identity_element(rs), rho_hat(rs),
                           rat(rs.dim_g(), 24), order);
}

long descriptor_u(const RootSystem& rs, const BoundaryWeight& d) {
    const Rat hv(rs.dual_coxeter());
    const Rat total = d.lambda.level + hv;
    if (total <= 0) fail(Errc::CriticalLevel, "descriptor level at or below critical");
    const Rat u = hv / total;
    if (!is_integer(u) || u < 1)
        fail(Errc::InvalidU, "descriptor level is not of boundary form h/u - h");
    return static_cast<long>(u.get_num().get_si());
}

namespace {

ThetaProductForm boundary_theta_form(const RootSystem& rs, const BoundaryWeight& d, long u) {
    const auto& y = rs.weyl_elements().at(static_cast<std::size_t>(d.y_index));
    const long e = rs.rank() - static_cast<long>(rs.positive_roots().size());
    const Rat hv(rs.dual_coxeter());

    ThetaProductForm f;
    f.pre.t_exp = boundary_level(rs, u);
    f.pre.q_exp = hv / (2 * u) * rs.norm2(d.beta);
    f.pre.w_exp = (hv / u) * d.beta;
    if (e != 0) {
        form_push(f, {ThetaKind::eta, u, {}, Rat(0), e});
        form_push(f, {ThetaKind::eta, 1, {}, Rat(0), -e});
    }
    for (const auto& a : rs.positive_roots()) {
        WVec mu = rs.apply(y, a.fw);
        Rat c = rs.inner(mu, d.beta);
        if (!rs.is_positive_root(mu)) { // theta11 is odd in its argument
            mu = Rat(-1) * mu;
            c = -c;
            f.pre.scalar = -f.pre.scalar;
        }
        form_push(f, {ThetaKind::theta11, u, mu, c, 1});
        form_push(f, {ThetaKind::theta11, 1, a.fw, Rat(0), -1});
    }
    return f;
}

} // namespace

CharacterResult boundary_character(const RootSystem& rs, const BoundaryWeight& d,
                                   const Rat& order) {
    const long u = descriptor_u(rs, d);

    CharacterResult cr;
    cr.descriptor = d;
    cr.u = u;
    cr.m_lambda = normalization_exponent(rs, d.lambda);
    cr.form = boundary_theta_form(rs, d, u);

    cr.rch_form = form_mul(cr.form, denominator_form(rs));
    cr.rch = evaluate_product_form(cr.rch_form, rs.rank(), order);
    const ConeSpec cone = character_cone(rs, Rat(rs.highest_root().height + 1) * order);
    cr.series = evaluate_product_form(cr.form, rs.rank(), order, &cone);
    return cr;
}

GradedSeries boundary_rch(const RootSystem& rs, const BoundaryWeight& d, const Rat& order) {
    const long u = descriptor_u(rs, d);
    const ThetaProductForm f = form_mul(boundary_theta_form(rs, d, u), denominator_form(rs));
    return evaluate_product_form(f, rs.rank(), order);
}

GradedSeries oracle_rch(const RootSystem& rs, const BoundaryWeight& d, const Rat& order) {
    const long u = descriptor_u(rs, d);
    const AffineWeight xi{rs.rho(), rat(rs.dual_coxeter(), u), Rat(0)};
    const Rat base = rat(rs.dim_g(), 24) + normalization_exponent(rs, d.lambda);
    return affine_weyl_sum(rs, u, d.beta,
                           rs.weyl_elements().at(static_cast<std::size_t>(d.y_index)), xi, base,
                           order);
}

GradedSeries oracle_character(const RootSystem& rs, const BoundaryWeight& d, const Rat& order) {
    const GradedSeries num = oracle_rch(rs, d, order);
    const GradedSeries den = denominator(rs, order);
    const ConeSpec cone = character_cone(rs, Rat(rs.highest_root().height + 1) * order);
    return divide_in_cone(num, den, cone);
}

bool substitution_identity_check(const RootSystem& rs, const BoundaryWeight& d,
                                 const Rat& order) {
    const long u = descriptor_u(rs, d);
    const auto& y = rs.weyl_elements().at(static_cast<std::size_t>(d.y_index));
    const Rat hv(rs.dual_coxeter());

    // the identity is about weights of translated-vacuum form, so the
    // descriptor triple must be coherent
    const AffineWeight vac = vacuum_weight(rs, boundary_level(rs, u));
    if (!(shifted_act(rs, y, d.beta, vac) == d.lambda)) return false;

    const GradedSeries lhs = boundary_rch(rs, d, order);
    const Rat target = *lhs.trunc();

    const auto ymat = rational_rows(y.mat); // e^{mu} at y^{-1}(z) = e^{y(mu)} at z
    std::vector<Rat> pairings(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) pairings[i] = rs.inner(rs.fundamental_weight(i), d.beta);
    const Rat qshift = hv / (2 * u) * rs.norm2(d.beta);
    const WVec wshift = (hv / u) * d.beta;
    const Rat tshift = hv / u - hv;

    Rat depth = order + 4;
    for (int attempt = 0; attempt < 20; ++attempt, depth = depth * 2) {
        GradedSeries rhs = substitute_q_power(denominator(rs, depth), u);
        rhs = map_weights(rhs, ymat);
        rhs = shift_weight_by_tau(rhs, pairings);
        rhs = mul_monomial(rhs, qshift, wshift, Rat(1), tshift);
        if (rhs.trunc() && *rhs.trunc() < target) continue; // shifts ate the window; go deeper
        return equal_below(lhs, rhs, target);
    }
    fail(Errc::InvalidInput, "substitution window did not converge");
}

ThetaProductForm example2_form(long n_value, int p) {
    if (n_value < 3 || n_value % 2 == 0)
        fail(Errc::InvalidInput, "closed form needs odd N >= 3");
    if (p < 0 || p >= n_value) fail(Errc::InvalidInput, "p must lie in 0..N-1");
    const int l = static_cast<int>(n_value) - 1;
    const RootSystem rs("A" + std::to_string(l));

    ThetaProductForm f;
    f.pre.t_exp = rat(-n_value, 2);
    f.pre.w_exp = WVec(l, Rat(0));
    prefactor_times_unit(f.pre, static_cast<long>(p) * (n_value - p));
    const long e = (n_value - 1) * (n_value - 2) / 2;
    if (e != 0) {
        form_push(f, {ThetaKind::eta, 2, {}, Rat(0), -e});
        form_push(f, {ThetaKind::eta, 1, {}, Rat(0), e});
    }
    for (int i = 1; i <= l; ++i) {
        WVec mu(l, Rat(0));
        for (int j = i; j <= l; ++j) {
            mu = mu + rs.simple_root(j - 1);
            const bool crosses = i <= p && p <= j;
            form_push(f, {crosses ? ThetaKind::theta01 : ThetaKind::theta11, 2, mu, Rat(0), 1});
            form_push(f, {ThetaKind::theta11, 1, mu, Rat(0), -1});
        }
    }
    return f;
}

GradedSeries example2_closed_form(long n_value, int p, const Rat& order) {
    const ThetaProductForm f = example2_form(n_value, p);
    const RootSystem rs("A" + std::to_string(n_value - 1));
    const ConeSpec cone = character_cone(rs, Rat(rs.highest_root().height + 1) * order);
    return evaluate_product_form(f, rs.rank(), order, &cone);
}

std::vector<PositivityViolation> positivity_report(const RootSystem& rs,
                                                   const AffineWeight& lambda,
                                                   const Rat& m_lambda,
                                                   const GradedSeries& character) {
    std::vector<PositivityViolation> out;
    const Rat lead = m_lambda - lambda.delta;
    const WVec theta = rs.highest_root().fw;
    for (const auto& [key, c] : character.terms()) {
        const Rat q = character.q_exp(key);
        const WVec w = character.w_exp(key);
        bool bad = !is_integer(c) || c < 0;
        const Rat n = q - lead;
        if (!is_integer(n) || n < 0) {
            bad = true;
        } else if (!bad) {
            const WVec drop = rs.alpha_coords(lambda.finite - w + n * theta);
            for (const auto& coord : drop)
                if (!is_integer(coord) || coord < 0) {
                    bad = true;
                    break;
                }
        }
        if (bad) out.push_back({q, w, c});
    }
    return out;
}

std::vector<PositivityViolation> positivity_report(const RootSystem& rs, const BoundaryWeight& d,
                                                   const Rat& order) {
    const CharacterResult cr = boundary_character(rs, d, order);
    return positivity_report(rs, d.lambda, cr.m_lambda, cr.series);
}

GradedSeries integrable_rch(const RootSystem& rs, const AffineWeight& lambda, const Rat& order) {
    const AffineWeight xi{lambda.finite + rs.rho(), lambda.level + rs.dual_coxeter(),
                          lambda.delta};
    const Rat base = rat(rs.dim_g(), 24) + normalization_exponent(rs, lambda);
    return affine_weyl_sum(rs, 1, WVec(rs.rank(), Rat(0)), identity_element(rs), xi, base,
                           order);
}

} // namespace thetachar
