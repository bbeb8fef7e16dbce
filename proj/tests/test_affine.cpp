#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thetachar/affine.hpp"

using namespace thetachar;

namespace {

WVec random_coweight(const RootSystem& rs, std::mt19937& rng, int span) {
    std::uniform_int_distribution<int> pick(-span, span);
    WVec beta(rs.rank(), Rat(0));
    auto basis = rs.coweight_basis();
    for (int i = 0; i < rs.rank(); ++i) beta = beta + rat(pick(rng)) * basis[i];
    return beta;
}

} // namespace

TEST_CASE("affine pairing extends the finite form") {
    RootSystem a2("A2");
    AffineWeight r = rho_hat(a2);
    CHECK(r.level == 3);
    CHECK(affine_inner(a2, r, r) == a2.norm2(a2.rho()));
    AffineWeight l0 = vacuum_weight(a2, Rat(1));
    AffineWeight d{WVec(2, Rat(0)), Rat(0), Rat(1)};
    CHECK(affine_inner(a2, l0, d) == 1);
    CHECK(affine_inner(a2, d, d) == 0);
}

TEST_CASE("dilated simple systems and the root action") {
    RootSystem a1("A1");
    auto sys = pi_hat_u(a1, 3);
    REQUIRE(sys.size() == 2);
    CHECK(sys[0] == AffineRoot{{rat(-2)}, 3});
    CHECK(sys[1] == AffineRoot{{rat(2)}, 0});
    // u = 1 reproduces the simple affine roots
    auto simple = pi_hat_u(a1, 1);
    CHECK(simple[0].n == 1);
    CHECK(simple[0].finite == Rat(-1) * a1.highest_root().fw);

    const auto& weyl = a1.weyl_elements();
    const WeylElement& id = weyl[0].word.empty() ? weyl[0] : weyl[1];
    WVec beta{rat(-1)}; // -alpha_1/2
    AffineRoot moved = act_on_root(a1, beta, id, sys[0]);
    CHECK(moved == AffineRoot{{rat(-2)}, 2});
    CHECK(affine_root_positive(a1, moved));
    // t_beta fixes nothing about the finite part, only the delta coefficient
    AffineRoot minus_theta{{rat(-2)}, 0};
    CHECK_FALSE(affine_root_positive(a1, minus_theta));
    CHECK(affine_root_positive(a1, AffineRoot{{rat(2)}, 0}));

    RootSystem a2("A2");
    auto sys2 = pi_hat_u(a2, 2);
    REQUIRE(sys2.size() == 3);
    CHECK(sys2[0] == AffineRoot{{rat(-1), rat(-1)}, 2});
    CHECK(sys2[1].finite == a2.simple_root(0));
    CHECK(sys2[2].finite == a2.simple_root(1));

    // non-lattice translations are rejected
    AffineWeight w{{rat(1)}, rat(2), rat(0)};
    CHECK_THROWS_AS(translate(a1, WVec{rat(2, 3)}, w), Error);
    CHECK_THROWS_AS(act_on_root(a1, WVec{rat(2, 3)}, id, sys[1]), Error);
}

TEST_CASE("translations compose and conjugate") {
    RootSystem b2("B2");
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        WVec beta = random_coweight(b2, rng, 3);
        WVec gamma = random_coweight(b2, rng, 3);
        AffineWeight w{{rat(pick(rng)), rat(pick(rng))}, rat(pick(rng)), rat(pick(rng), 2)};
        AffineWeight two_step = translate(b2, beta, translate(b2, gamma, w));
        AffineWeight one_step = translate(b2, beta + gamma, w);
        CHECK(two_step == one_step);
        // the pairing is invariant under every t_beta
        AffineWeight v{{rat(pick(rng)), rat(pick(rng))}, rat(pick(rng)), rat(pick(rng), 3)};
        CHECK(affine_inner(b2, translate(b2, beta, w), translate(b2, beta, v)) ==
              affine_inner(b2, w, v));
    }
    // w t_beta w^-1 = t_{w beta} on weights
    const auto& weyl = b2.weyl_elements();
    for (const auto& y : weyl) {
        WVec beta = b2.coweight_basis()[1];
        AffineWeight w{{rat(1), rat(-2)}, rat(2), rat(0)};
        AffineWeight lhs = weyl_apply(b2, y, translate(b2, beta, w));
        // compare against translating the transformed weight by y(beta)
        AffineWeight rhs = translate(b2, b2.apply(y, beta), weyl_apply(b2, y, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("boundary level sits h/u above critical") {
    RootSystem a1("A1");
    CHECK(boundary_level(a1, 3) == rat(-4, 3));
    RootSystem g2("G2");
    CHECK(boundary_level(g2, 5) == rat(4, 5) - 4);
    CHECK_THROWS_AS(boundary_level(a1, 0), Error);
}

TEST_CASE("normalization exponent and the critical level") {
    RootSystem a1("A1");
    AffineWeight crit = vacuum_weight(a1, Rat(-2));
    CHECK_THROWS_AS(normalization_exponent(a1, crit), Error);
    try {
        normalization_exponent(a1, crit);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CriticalLevel);
    }
    // basic level-1 weight: m = -1/24 for A1
    AffineWeight basic = vacuum_weight(a1, Rat(1));
    CHECK(normalization_exponent(a1, basic) == rat(-1, 24));
}

TEST_CASE("boundary weights of A1 at u=3") {
    RootSystem a1("A1");
    auto bw = boundary_weights(a1, 3);
    REQUIRE(bw.size() == 3);
    // j = 0,1,2: finite -2j/u, delta j/2 - j^2/(2u), found in sorted order
    std::map<std::vector<Rat>, Rat> got;
    for (const auto& w : bw) {
        CHECK(w.lambda.level == rat(-4, 3));
        got.emplace(w.lambda.finite, w.lambda.delta);
    }
    CHECK(got.at({rat(0)}) == 0);
    CHECK(got.at({rat(-2, 3)}) == rat(1, 3));
    CHECK(got.at({rat(-4, 3)}) == rat(1, 3));
    for (const auto& w : bw) {
        CHECK(is_admissible(a1, 3, w.lambda));
        CHECK(normalization_exponent(a1, w.lambda) == rat(2, 8));
    }
}

TEST_CASE("boundary weights of A2 at u=2") {
    RootSystem a2("A2");
    auto bw = boundary_weights(a2, 2);
    REQUIRE(bw.size() == 4);
    std::map<std::vector<Rat>, Rat> got;
    for (const auto& w : bw) got.emplace(w.lambda.finite, w.lambda.delta);
    CHECK(got.at({Rat(0), Rat(0)}) == 0);
    CHECK(got.at({rat(-3, 2), Rat(0)}) == rat(1, 2));
    CHECK(got.at({Rat(0), rat(-3, 2)}) == rat(1, 2));
    CHECK(got.at({rat(-1, 2), rat(-1, 2)}) == rat(1, 2));
    for (const auto& w : bw) {
        CHECK(is_admissible(a2, 2, w.lambda));
        CHECK(normalization_exponent(a2, w.lambda) == rat(1, 3));
    }
}

TEST_CASE("boundary counts follow u to the rank") {
    RootSystem a1("A1");
    CHECK(boundary_weights(a1, 1).size() == 1);
    CHECK(boundary_weights(a1, 5).size() == 5);
    RootSystem a2("A2");
    CHECK(boundary_weights(a2, 4).size() == 16);
    RootSystem b2("B2");
    auto bw = boundary_weights(b2, 5);
    CHECK(bw.size() == 25);
    for (const auto& w : bw) CHECK(is_admissible(b2, 5, w.lambda));
    RootSystem g2("G2");
    auto gw = boundary_weights(g2, 5);
    CHECK(gw.size() == 25);
    for (const auto& w : gw) CHECK(is_admissible(g2, 5, w.lambda));
}

TEST_CASE("u must respect both gcd conditions") {
    RootSystem a1("A1");
    CHECK_THROWS_AS(boundary_weights(a1, 2), Error); // gcd(2, h-check = 2)
    RootSystem b2("B2");
    CHECK_THROWS_AS(boundary_weights(b2, 2), Error); // lacing
    CHECK_THROWS_AS(boundary_weights(b2, 3), Error); // gcd(3, h-check = 3)
    RootSystem g2("G2");
    CHECK_THROWS_AS(boundary_weights(g2, 3), Error); // lacing
    CHECK_THROWS_AS(boundary_weights(g2, 2), Error); // gcd(2, h-check = 4)
    try {
        boundary_weights(g2, 6);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidU);
    }
}

TEST_CASE("admissibility rejections") {
    RootSystem a1("A1");
    AffineWeight wrong_level = vacuum_weight(a1, Rat(1));
    CHECK_THROWS_AS(is_admissible(a1, 3, wrong_level), Error);
    try {
        is_admissible(a1, 3, wrong_level);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::LevelMismatch);
    }
    // nonpositive integer pairing with alpha_1
    AffineWeight bad{{Rat(-2)}, boundary_level(a1, 3), Rat(0)};
    CHECK_FALSE(is_admissible(a1, 3, bad));
    // never-integral pairing: the integral roots lose a direction
    AffineWeight thin{{rat(1, 5)}, boundary_level(a1, 3), Rat(0)};
    CHECK_FALSE(is_admissible(a1, 3, thin));
}

TEST_CASE("two descriptors can land on the same weight") {
    RootSystem a1("A1");
    const auto& weyl = a1.weyl_elements();
    // y = id with beta = -omega-check, and the reflection with beta = 2 omega-check
    WVec omega_check = a1.coweight_basis()[0];
    AffineWeight vac = vacuum_weight(a1, boundary_level(a1, 3));
    std::size_t id_idx = 0, s_idx = 1;
    if (weyl[0].mat[0][0] != 1) std::swap(id_idx, s_idx);
    AffineWeight one = shifted_act(a1, weyl[id_idx], Rat(-1) * omega_check, vac);
    AffineWeight two = shifted_act(a1, weyl[s_idx], Rat(2) * omega_check, vac);
    CHECK(one == two);
    CHECK(one.delta == rat(1, 3));
}
