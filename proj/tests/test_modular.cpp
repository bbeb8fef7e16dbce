#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "thetachar/errors.hpp"
#include "thetachar/modular.hpp"

using namespace thetachar;

namespace {

double unitarity_deviation(const SMatrix& s) {
    const std::size_t n = s.weights.size();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::complex<double> dot(0, 0);
            for (std::size_t m = 0; m < n; ++m)
                dot += s.entries[i][m] * std::conj(s.entries[j][m]);
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

long a1_j(const RootSystem& rs, const BoundaryWeight& d, long u) {
    const Rat j = Rat(-u) * d.lambda.finite[0] / 2;
    REQUIRE(is_integer(j));
    (void)rs;
    return j.get_num().get_si();
}

struct A2Class {
    int p;
    long k1, k2;
};

// Label a descriptor with the (p, k1, k2) class whose weight
// (t_beta r_theta^p).(k Lambda_0), beta = -(-1)^p (k1 w1 + k2 w2), matches.
A2Class a2_class(const RootSystem& rs, const BoundaryWeight& d, long u) {
    const WVec theta = rs.highest_root().fw;
    const WeylElement* id = nullptr;
    const WeylElement* rtheta = nullptr;
    for (const auto& w : rs.weyl_elements()) {
        if (w.word.empty()) id = &w;
        if (w.sign < 0 && rs.apply(w, theta) == Rat(-1) * theta) rtheta = &w;
    }
    REQUIRE(id != nullptr);
    REQUIRE(rtheta != nullptr);
    const AffineWeight vac = vacuum_weight(rs, boundary_level(rs, u));
    for (int p = 0; p <= 1; ++p)
        for (long k1 = p; k1 <= u; ++k1)
            for (long k2 = p; k1 + k2 <= u - (p == 0 ? 1 : 0); ++k2) {
                WVec beta = {Rat(k1), Rat(k2)};
                if (p == 0) beta = Rat(-1) * beta;
                if (shifted_act(rs, p == 0 ? *id : *rtheta, beta, vac) == d.lambda)
                    return {p, k1, k2};
            }
    REQUIRE(false);
    return {};
}

} // namespace

TEST_CASE("index of the dilated dual lattice") {
    const RootSystem a1("A1");
    for (long u : {1L, 3L, 5L}) CHECK(lattice_index(a1, u) == u);
    const RootSystem a2("A2");
    for (long u : {1L, 2L, 4L}) CHECK(lattice_index(a2, u) == 3 * u * u);
}

TEST_CASE("closed form of the A1 S-matrix") {
    const RootSystem rs("A1");
    for (long u : {3L, 5L, 7L}) {
        const SMatrix s = s_matrix(rs, u);
        const std::size_t n = s.weights.size();
        REQUIRE(n == static_cast<std::size_t>(u));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const long ji = a1_j(rs, s.weights[i], u);
                const long jj = a1_j(rs, s.weights[j], u);
                const double sgn = (ji + jj) % 2 == 0 ? 1.0 : -1.0;
                const std::complex<double> expect =
                    sgn * std::sin(u * std::numbers::pi / 2) / std::sqrt(double(u)) *
                    std::polar(1.0, -2 * std::numbers::pi * double(ji * jj) / double(u));
                CHECK(std::abs(s.entries[i][j] - expect) < 1e-12);
            }
    }
}

TEST_CASE("unitarity and symmetry of calibrated S") {
    struct Case {
        const char* type;
        long u;
    };
    for (const Case& c : {Case{"A1", 3}, Case{"A1", 5}, Case{"A1", 7}, Case{"A2", 2},
                          Case{"A2", 4}}) {
        const RootSystem rs(c.type);
        const SMatrix s = s_matrix(rs, c.u);
        CHECK(unitarity_deviation(s) < 1e-9);
        const std::size_t n = s.weights.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(s.entries[i][j] - s.entries[j][i]) < 1e-9);
    }
}

TEST_CASE("A1 fusion matches the sign-and-divisibility rule") {
    const RootSystem rs("A1");
    for (long u : {3L, 5L}) {
        const auto all = boundary_weights(rs, u);
        for (const auto& d1 : all)
            for (const auto& d2 : all)
                for (const auto& d3 : all) {
                    const long j1 = a1_j(rs, d1, u), j2 = a1_j(rs, d2, u),
                               j3 = a1_j(rs, d3, u);
                    long expect = 0;
                    if ((j1 + j2 + j3) % u == 0)
                        expect = (j1 + j2 + j3) % 2 == 0 ? 1 : -1;
                    CHECK(verlinde_fusion(rs, d1, d2, d3) == expect);
                }
    }
}

TEST_CASE("A2 fusion matches the two-component divisibility rule") {
    const RootSystem rs("A2");
    for (long u : {2L, 4L}) {
        const auto all = boundary_weights(rs, u);
        REQUIRE(all.size() == static_cast<std::size_t>(u * u));
        std::vector<A2Class> cls;
        for (const auto& d : all) cls.push_back(a2_class(rs, d, u));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j)
                for (std::size_t m = 0; m < all.size(); ++m) {
                    const A2Class &a = cls[i], &b = cls[j], &c = cls[m];
                    const long s1 = (a.p ? a.k1 : -a.k1) + (b.p ? b.k1 : -b.k1) +
                                    (c.p ? c.k1 : -c.k1);
                    const long s2 = (a.p ? a.k2 : -a.k2) + (b.p ? b.k2 : -b.k2) +
                                    (c.p ? c.k2 : -c.k2);
                    long expect = 0;
                    if (s1 % u == 0 && s2 % u == 0)
                        expect = (a.p + b.p + c.p) % 2 == 0 ? 1 : -1;
                    CHECK(verlinde_fusion(rs, all[i], all[j], all[m]) == expect);
                }
    }
}

TEST_CASE("verbatim reading is hyperbolic and fails integrality") {
    const RootSystem rs("A1");
    const SMatrix s = s_matrix(rs, 3, SConvention::verbatim);
    CHECK(unitarity_deviation(s) > 10.0);
    const auto all = boundary_weights(rs, 3);
    CHECK_THROWS_AS(verlinde_fusion(rs, all[1], all[1], all[1], SConvention::verbatim), Error);
}

TEST_CASE("mixed levels are rejected") {
    const RootSystem rs("A1");
    const auto u3 = boundary_weights(rs, 3);
    const auto u5 = boundary_weights(rs, 5);
    CHECK_THROWS_AS(s_entry(rs, u3[0], u5[0]), Error);
    CHECK_THROWS_AS(verlinde_fusion(rs, u3[0], u3[1], u5[0]), Error);
}
