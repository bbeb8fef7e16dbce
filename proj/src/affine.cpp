#include "thetachar/affine.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace thetachar {

Rat affine_inner(const RootSystem& rs, const AffineWeight& a, const AffineWeight& b) {
    return rs.inner(a.finite, b.finite) + a.level * b.delta + b.level * a.delta;
}

AffineWeight rho_hat(const RootSystem& rs) {
    return {rs.rho(), Rat(rs.dual_coxeter()), Rat(0)};
}

AffineWeight vacuum_weight(const RootSystem& rs, const Rat& level) {
    return {WVec(rs.rank(), Rat(0)), level, Rat(0)};
}

std::vector<AffineRoot> pi_hat_u(const RootSystem& rs, long u) {
    if (u < 1) fail(Errc::InvalidU, "u must be positive");
    std::vector<AffineRoot> out;
    out.push_back({Rat(-1) * rs.highest_root().fw, u});
    for (int i = 0; i < rs.rank(); ++i) out.push_back({rs.simple_root(i), 0});
    return out;
}

AffineRoot act_on_root(const RootSystem& rs, const WVec& beta, const WeylElement& y,
                       const AffineRoot& r) {
    WVec moved = rs.apply(y, r.finite);
    Rat shift = rs.inner(moved, beta);
    if (!is_integer(shift)) fail(Errc::NotInDualLattice, "beta pairs non-integrally with a root");
    return {std::move(moved), r.n - static_cast<long>(shift.get_num().get_si())};
}

bool affine_root_positive(const RootSystem& rs, const AffineRoot& r) {
    if (r.n >= 1) return true;
    return r.n == 0 && rs.is_positive_root(r.finite);
}

AffineWeight translate(const RootSystem& rs, const WVec& beta, const AffineWeight& w) {
    if (!rs.in_coweight_lattice(beta))
        fail(Errc::NotInDualLattice, "translation vector is not in the dual lattice");
    AffineWeight out;
    out.level = w.level;
    out.finite = w.finite + w.level * beta;
    out.delta = w.delta - rs.inner(w.finite, beta) - w.level * rs.norm2(beta) / 2;
    return out;
}

AffineWeight weyl_apply(const RootSystem& rs, const WeylElement& y, const AffineWeight& w) {
    return {rs.apply(y, w.finite), w.level, w.delta};
}

AffineWeight shifted_act(const RootSystem& rs, const WeylElement& y, const WVec& beta,
                         const AffineWeight& lam) {
    AffineWeight r = rho_hat(rs);
    AffineWeight shifted{lam.finite + r.finite, lam.level + r.level, lam.delta};
    AffineWeight moved = translate(rs, beta, weyl_apply(rs, y, shifted));
    return {moved.finite - r.finite, moved.level - r.level, moved.delta};
}

Rat boundary_level(const RootSystem& rs, long u) {
    if (u < 1) fail(Errc::InvalidU, "u must be positive");
    return rat(rs.dual_coxeter(), u) - rs.dual_coxeter();
}

Rat normalization_exponent(const RootSystem& rs, const AffineWeight& lam) {
    Rat shifted_level = lam.level + rs.dual_coxeter();
    if (shifted_level == 0) fail(Errc::CriticalLevel, "critical level has no normalization");
    WVec mu = lam.finite + rs.rho();
    return rs.norm2(mu) / (2 * shifted_level) + lam.delta - rat(rs.dim_g(), 24);
}

namespace {

// least n >= n_min with c + n*s integral, and the gap between solutions;
// nullopt if no n works
struct Progression {
    long first;
    long step;
};

std::optional<Progression> integral_steps(const Rat& c, const Rat& s, long n_min) {
    long q = static_cast<long>(s.get_den().get_si());
    Rat qc = c * q;
    if (!is_integer(qc)) return std::nullopt;
    long p = static_cast<long>(s.get_num().get_si());
    // solve n*p = -qc (mod q); p is invertible since s is reduced
    long target = static_cast<long>(Int(-qc.get_num() % q).get_si());
    long n0 = -1;
    for (long n = 0; n < q; ++n)
        if ((n * p - target) % q == 0) {
            n0 = n;
            break;
        }
    if (n0 < 0) return std::nullopt;
    while (n0 < n_min) n0 += q;
    return Progression{n0, q};
}

int rank_of(std::vector<std::vector<Rat>> rows) {
    int rk = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int col = 0; col < cols; ++col) {
        int pivot = -1;
        for (int r = rk; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rk], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rk || rows[r][col] == 0) continue;
            Rat f = rows[r][col] / rows[rk][col];
            for (int cc = col; cc < cols; ++cc) rows[r][cc] -= f * rows[rk][cc];
        }
        ++rk;
    }
    return rk;
}

} // namespace

bool is_admissible(const RootSystem& rs, long u, const AffineWeight& lam) {
    if (u < 1) fail(Errc::InvalidU, "u must be positive");
    if (lam.level != boundary_level(rs, u))
        fail(Errc::LevelMismatch, "weight level is not the boundary level for this u");
    WVec mu = lam.finite + rs.rho();
    Rat kplush = lam.level + rs.dual_coxeter();

    std::vector<std::vector<Rat>> integral_rows;
    for (const auto& root : rs.positive_roots()) {
        for (int sign = +1; sign >= -1; sign -= 2) {
            WVec alpha = sign > 0 ? root.fw : Rat(-1) * root.fw;
            Rat d_alpha = root.length2 / 2;
            Rat c = rs.inner(mu, alpha) / d_alpha;
            Rat s = kplush / d_alpha;
            long n_min = sign > 0 ? 0 : 1;
            // (i): c + n*s sits in the nonpositive integers for some valid n?
            Rat bound = -c / s;
            for (long n = n_min; Rat(n) <= bound; ++n)
                if (is_integer(c + n * s)) return false;
            // (ii): collect two points of the integral progression
            if (auto prog = integral_steps(c, s, n_min)) {
                for (long j = 0; j < 2; ++j) {
                    std::vector<Rat> row(alpha.begin(), alpha.end());
                    row.push_back(rat(prog->first + j * prog->step));
                    integral_rows.push_back(std::move(row));
                }
            }
        }
    }
    return rank_of(std::move(integral_rows)) == rs.rank() + 1;
}

std::vector<BoundaryWeight> boundary_weights(const RootSystem& rs, long u) {
    if (u < 1) fail(Errc::InvalidU, "u must be positive");
    if (std::gcd(u, rs.dual_coxeter()) != 1)
        fail(Errc::InvalidU, "u must be coprime to the dual Coxeter number");
    if (std::gcd(u, rs.lacing()) != 1)
        fail(Errc::InvalidU, "u must be coprime to the lacing number");
    const Rat k = boundary_level(rs, u);
    const AffineWeight vac = vacuum_weight(rs, k);
    const auto& weyl = rs.weyl_elements();
    const auto dilated = pi_hat_u(rs, u);
    const int ell = rs.rank();
    const long cap = u * rs.dual_coxeter();
    const auto cw_basis = rs.coweight_basis();

    std::vector<BoundaryWeight> out;
    std::map<std::pair<std::vector<Rat>, Rat>, std::size_t> seen; // (finite, delta)
    std::vector<long> b(ell, -cap);
    while (true) {
        WVec beta(ell, Rat(0));
        for (int i = 0; i < ell; ++i)
            if (b[i] != 0) beta = beta + rat(b[i]) * cw_basis[i];
        for (std::size_t yi = 0; yi < weyl.size(); ++yi) {
            const auto& y = weyl[yi];
            bool ok = true;
            for (const auto& r : dilated)
                if (!affine_root_positive(rs, act_on_root(rs, beta, y, r))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            AffineWeight lam = shifted_act(rs, y, beta, vac);
            auto key = std::make_pair(std::vector<Rat>(lam.finite), lam.delta);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), out.size());
            out.push_back({static_cast<int>(yi), beta, std::move(lam)});
        }
        int i = 0;
        while (i < ell && b[i] == cap) {
            b[i] = -cap;
            ++i;
        }
        if (i == ell) break;
        ++b[i];
    }
    std::sort(out.begin(), out.end(), [](const BoundaryWeight& x, const BoundaryWeight& y) {
        if (x.lambda.finite != y.lambda.finite) return x.lambda.finite < y.lambda.finite;
        return x.lambda.delta < y.lambda.delta;
    });
    return out;
}

} // namespace thetachar
