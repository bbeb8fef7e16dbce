#include "thetachar/modular.hpp"

#include <cmath>
#include <numbers>

#include "thetachar/errors.hpp"

namespace thetachar {

namespace {

long common_u(const RootSystem& rs, const BoundaryWeight& a, const BoundaryWeight& b) {
    const long ua = descriptor_u(rs, a);
    const long ub = descriptor_u(rs, b);
    if (ua != ub) fail(Errc::LevelMismatch, "descriptors live at different boundary levels");
    return ua;
}

Rat det_rat(std::vector<WVec> m) {
    const int n = static_cast<int>(m.size());
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        const Rat lead = m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rat f = m[r][col] / lead;
            for (int c = col; c < n; ++c) {
                const Rat sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    return det;
}

double unitarity_defect(const RootSystem& rs, long u, const BoundaryWeight& row,
                        const std::vector<BoundaryWeight>& all) {
    double c = 0;
    for (const auto& mu : all) c += std::norm(s_entry_raw(rs, u, row, mu, SConvention::calibrated));
    return c;
}

const BoundaryWeight& vacuum_descriptor(const std::vector<BoundaryWeight>& all) {
    for (const auto& d : all)
        if (is_zero(d.lambda.finite) && d.lambda.delta == 0) return d;
    fail(Errc::InvalidInput, "enumeration lacks the vacuum weight");
}

} // namespace

long lattice_index(const RootSystem& rs, long u) {
    std::vector<WVec> rows;
    for (const auto& w : rs.coweight_basis())
        rows.push_back(rs.alpha_coords(Rat(u * rs.dual_coxeter()) * w));
    Rat det = det_rat(std::move(rows));
    if (det < 0) det = -det;
    if (!is_integer(det) || det == 0)
        fail(Errc::InvalidInput, "dilated dual lattice does not embed in the root lattice");
    return static_cast<long>(det.get_num().get_si());
}

std::complex<double> s_entry_raw(const RootSystem& rs, long u, const BoundaryWeight& a,
                                 const BoundaryWeight& b, SConvention conv) {
    const long hv = rs.dual_coxeter();
    std::complex<double> prod(1, 0);
    for (const auto& alpha : rs.positive_roots()) {
        const double x =
            std::numbers::pi * static_cast<double>(u) * rs.inner(rs.rho(), alpha.fw).get_d() / hv;
        if (conv == SConvention::verbatim)
            prod *= std::complex<double>(0, 2 * std::sinh(x)); // literal sin(i x)
        else
            prod *= 2 * std::sin(x);
    }
    const auto& ya = rs.weyl_elements().at(static_cast<std::size_t>(a.y_index));
    const auto& yb = rs.weyl_elements().at(static_cast<std::size_t>(b.y_index));
    const Rat phase =
        rs.inner(rs.rho(), a.beta + b.beta) + rat(hv, u) * rs.inner(a.beta, b.beta);
    const double arg = -2 * std::numbers::pi * phase.get_d();
    return std::pow(static_cast<double>(lattice_index(rs, u)), -0.5) *
           static_cast<double>(ya.sign * yb.sign) * prod * std::polar(1.0, arg);
}

std::complex<double> s_entry(const RootSystem& rs, const BoundaryWeight& a,
                             const BoundaryWeight& b, SConvention conv) {
    const long u = common_u(rs, a, b);
    const std::complex<double> raw = s_entry_raw(rs, u, a, b, conv);
    if (conv == SConvention::verbatim) return raw;
    return raw / std::sqrt(unitarity_defect(rs, u, a, boundary_weights(rs, u)));
}

SMatrix s_matrix(const RootSystem& rs, long u, SConvention conv) {
    SMatrix out;
    out.weights = boundary_weights(rs, u);
    const std::size_t n = out.weights.size();
    double scale = 1;
    if (conv == SConvention::calibrated) {
        double c = 0;
        for (const auto& d : out.weights) c += unitarity_defect(rs, u, d, out.weights);
        scale = std::sqrt(c / static_cast<double>(n));
    }
    out.entries.assign(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.entries[i][j] =
                s_entry_raw(rs, u, out.weights[i], out.weights[j], conv) / scale;
    return out;
}

long verlinde_fusion(const RootSystem& rs, const BoundaryWeight& d1, const BoundaryWeight& d2,
                     const BoundaryWeight& d3, SConvention conv) {
    const long u = common_u(rs, d1, d2);
    if (descriptor_u(rs, d3) != u)
        fail(Errc::LevelMismatch, "descriptors live at different boundary levels");
    const auto all = boundary_weights(rs, u);
    const BoundaryWeight& vac = vacuum_descriptor(all);

    std::complex<double> total(0, 0);
    for (const auto& mu : all)
        total += s_entry_raw(rs, u, d1, mu, conv) * s_entry_raw(rs, u, d2, mu, conv) *
                 s_entry_raw(rs, u, d3, mu, conv) / s_entry_raw(rs, u, vac, mu, conv);
    if (conv == SConvention::calibrated) total /= unitarity_defect(rs, u, vac, all);

    const double rounded = std::round(total.real());
    if (std::abs(total - rounded) > 1e-6)
        fail(Errc::NonIntegerFusion, "Verlinde sum is not integral within tolerance");
    return static_cast<long>(rounded);
}

} // namespace thetachar
