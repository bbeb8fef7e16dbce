#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thetachar/series.hpp"

using namespace thetachar;

namespace {

GradedSeries random_series(std::mt19937& rng, int rank, const Rat& trunc) {
    std::uniform_int_distribution<int> qnum(0, 11);
    std::uniform_int_distribution<int> wnum(-4, 4);
    std::uniform_int_distribution<int> cnum(-5, 5);
    std::uniform_int_distribution<int> nterms(1, 8);
    GradedSeries s(rank, trunc);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        WVec w(rank);
        for (int i = 0; i < rank; ++i) w[i] = rat(wnum(rng), 2);
        s.add_term(rat(qnum(rng), 2), w, rat(cnum(rng)));
    }
    return s;
}

GradedSeries geometric(int rank, int upto) {
    GradedSeries s(rank, Rat(upto));
    for (int n = 0; n < upto; ++n) s.add_term(Rat(n), WVec(rank, Rat(0)), Rat(1));
    return s;
}

} // namespace

TEST_CASE("rational helper canonicalizes") {
    CHECK(rat(2, 6) == rat(1, 3));
    CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
    CHECK(rat(-4, -8) == rat(1, 2));
    CHECK(is_integer(rat(6, 3)));
    CHECK(floor_int(rat(-7, 2)) == -4);
    CHECK(ceil_int(rat(-7, 2)) == -3);
    CHECK(common_denominator({rat(1, 4), rat(5, 6)}) == 12);
    CHECK(to_string(rat(-3, 9)) == "-1/3");
    CHECK_THROWS_AS(rat(1, 0), Error);
}

TEST_CASE("terms merge and cancel") {
    GradedSeries s(1);
    s.add_term(rat(1, 2), {rat(1)}, rat(3));
    s.add_term(rat(1, 2), {rat(1)}, rat(-3));
    CHECK(s.empty());
    s.add_term(rat(1, 3), {rat(1, 2)}, rat(2));
    CHECK(s.coeff(rat(1, 3), {rat(1, 2)}) == rat(2));
    CHECK(s.coeff(rat(1, 3), {rat(1, 3)}) == 0);
    CHECK(s.qden() % 3 == 0);
    CHECK(s.wden() % 2 == 0);
}

TEST_CASE("addition respects t-exponent and unit") {
    GradedSeries a = GradedSeries::monomial(1, Rat(0), {Rat(0)}, Rat(1), Rat(2));
    GradedSeries b = GradedSeries::monomial(1, Rat(1), {Rat(0)}, Rat(1), Rat(3));
    CHECK_THROWS_AS(add(a, b), Error);
    GradedSeries c = GradedSeries::monomial(1, Rat(1), {Rat(0)}, Rat(1), Rat(2), 1);
    CHECK_THROWS_AS(add(a, c), Error);
    GradedSeries empty(1);
    GradedSeries r = add(empty, a);
    CHECK(r.t_exp() == Rat(2));
    CHECK(r == a);
}

TEST_CASE("i-powers fold into signs") {
    GradedSeries a = GradedSeries::monomial(0, Rat(0), {}, Rat(2), Rat(0), 1);
    GradedSeries sq = mul(a, a); // (2i)^2 = -4
    CHECK(sq.unit_pow() == 0);
    CHECK(sq.coeff(Rat(0), {}) == Rat(-4));
    GradedSeries cube = mul(sq, a);
    CHECK(cube.unit_pow() == 1);
    CHECK(cube.coeff(Rat(0), {}) == Rat(-8));
    CHECK(scale_unit(a, 3).unit_pow() == 0); // i * i^3 = 1
    CHECK(scale_unit(a, 3).coeff(Rat(0), {}) == Rat(2));
    CHECK(scale_unit(a, 2).coeff(Rat(0), {}) == Rat(-2));
    CHECK(scale_unit(a, -1).unit_pow() == 0);
    CHECK(scale_unit(a, -1).coeff(Rat(0), {}) == Rat(2));
}

TEST_CASE("geometric series inverse") {
    GradedSeries a(1, Rat(10));
    a.add_term(Rat(0), {Rat(0)}, Rat(1));
    a.add_term(Rat(1), {Rat(1)}, Rat(-1)); // 1 - q x
    GradedSeries inv = invert(a);
    CHECK(inv.trunc().has_value());
    CHECK(*inv.trunc() == Rat(10));
    for (int n = 0; n < 10; ++n) CHECK(inv.coeff(Rat(n), {Rat(n)}) == Rat(1));
    GradedSeries prod = mul(a, inv);
    CHECK(equal_below(prod, GradedSeries::constant(1, Rat(1)), Rat(10)));
}

TEST_CASE("inverse of a shifted lead undoes exponents") {
    GradedSeries a(1, Rat(8));
    a.add_term(rat(-3, 2), {rat(5, 2)}, rat(2, 7));
    a.add_term(rat(1, 2), {rat(-1, 2)}, rat(1));
    GradedSeries inv = invert(a, Rat(5));
    GradedSeries prod = mul(a, inv);
    CHECK(equal_below(prod, GradedSeries::constant(1, Rat(1)), Rat(3)));
    CHECK(inv.lowest_q_exp() == rat(3, 2));
}

TEST_CASE("inverse needs a lone lowest monomial") {
    GradedSeries a(1, Rat(6));
    a.add_term(Rat(0), {Rat(1)}, Rat(1));
    a.add_term(Rat(0), {Rat(-1)}, Rat(-1)); // x - 1/x
    CHECK_THROWS_AS(invert(a), Error);
    try {
        invert(a);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvertible);
    }
    GradedSeries zero(1, Rat(6));
    CHECK_THROWS_AS(invert(zero), Error);
}

TEST_CASE("ring axioms on random truncated series") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 30; ++trial) {
        GradedSeries a = random_series(rng, 2, Rat(7));
        GradedSeries b = random_series(rng, 2, Rat(7));
        GradedSeries c = random_series(rng, 2, Rat(7));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        GradedSeries lhs = mul(add(a, b), c);
        GradedSeries rhs = add(mul(a, c), mul(b, c));
        Rat order = std::min(*lhs.trunc(), *rhs.trunc());
        CHECK(equal_below(lhs, rhs, order));
    }
}

TEST_CASE("serial and parallel products agree term for term") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        GradedSeries a = random_series(rng, 2, Rat(9));
        GradedSeries b = random_series(rng, 2, Rat(9));
        CHECK(mul_serial(a, b) == mul_parallel(a, b));
    }
    GradedSeries g = geometric(1, 40);
    CHECK(mul_serial(g, g) == mul_parallel(g, g));
}

TEST_CASE("product truncation from both factors") {
    GradedSeries a(0, Rat(5));
    a.add_term(Rat(2), {}, Rat(1));
    GradedSeries b(0, Rat(5));
    b.add_term(Rat(3), {}, Rat(1));
    GradedSeries p = mul(a, b);
    // unseen tails start at 5+3 and 5+2; products valid below 7
    CHECK(*p.trunc() == Rat(7));
    GradedSeries exact = GradedSeries::monomial(0, Rat(4), {}, Rat(7));
    GradedSeries q = mul(a, exact);
    CHECK(*q.trunc() == Rat(9));
    GradedSeries zero(0);
    CHECK_FALSE(mul(a, zero).trunc().has_value());
    CHECK(mul(a, zero).empty());
}

TEST_CASE("q-power substitution is a ring map") {
    std::mt19937 rng(7);
    GradedSeries a = random_series(rng, 1, Rat(6));
    GradedSeries b = random_series(rng, 1, Rat(6));
    GradedSeries lhs = substitute_q_power(mul(a, b), 3);
    GradedSeries rhs = mul(substitute_q_power(a, 3), substitute_q_power(b, 3));
    CHECK(lhs == rhs);
    CHECK(*substitute_q_power(a, 3).trunc() == Rat(18));
    CHECK_THROWS_AS(substitute_q_power(a, 0), Error);
}

TEST_CASE("tau shift of weights moves q-exponents") {
    GradedSeries a(2);
    a.add_term(Rat(0), {Rat(1), Rat(0)}, Rat(1));
    a.add_term(Rat(1), {Rat(0), Rat(2)}, Rat(5));
    GradedSeries s = shift_weight_by_tau(a, {rat(1, 2), rat(-1, 4)});
    CHECK(s.coeff(rat(1, 2), {Rat(1), Rat(0)}) == Rat(1));
    CHECK(s.coeff(rat(1, 2), {Rat(0), Rat(2)}) == Rat(5));
    CHECK_FALSE(s.trunc().has_value());

    GradedSeries b(1, Rat(4));
    b.add_term(Rat(0), {Rat(2)}, Rat(1));
    GradedSeries t = shift_weight_by_tau(b, {Rat(-1)});
    // the stored term dropped by 2, so only qExp < 2 is guaranteed
    CHECK(*t.trunc() == Rat(2));
    CHECK(t.coeff(Rat(-2), {Rat(2)}) == Rat(1));
}

TEST_CASE("weight maps compose and collapse") {
    GradedSeries a(2);
    a.add_term(Rat(1), {Rat(1), Rat(-1)}, Rat(2));
    a.add_term(Rat(1), {Rat(-1), Rat(1)}, Rat(3));
    GradedSeries swapped = map_weights(a, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    CHECK(swapped.coeff(Rat(1), {Rat(-1), Rat(1)}) == Rat(2));
    GradedSeries z = collapse_weights(a);
    CHECK(z.rank() == 0);
    CHECK(z.coeff(Rat(1), {}) == Rat(5));
}

TEST_CASE("cone division recovers an exact cofactor") {
    // (1 - q^2 x^2) / (1 - q x) = 1 + q x
    GradedSeries num(1);
    num.add_term(Rat(0), {Rat(0)}, Rat(1));
    num.add_term(Rat(2), {Rat(2)}, Rat(-1));
    GradedSeries den(1);
    den.add_term(Rat(0), {Rat(0)}, Rat(1));
    den.add_term(Rat(1), {Rat(1)}, Rat(-1));
    ConeSpec spec{{Rat(1)}, Rat(2), Rat(100)};
    GradedSeries qt = divide_in_cone(num, den, spec);
    GradedSeries expect(1);
    expect.add_term(Rat(0), {Rat(0)}, Rat(1));
    expect.add_term(Rat(1), {Rat(1)}, Rat(1));
    CHECK(qt == expect);
}

TEST_CASE("cone division of a series by itself is one") {
    GradedSeries den(1);
    den.add_term(Rat(0), {Rat(1)}, Rat(1));
    den.add_term(Rat(1), {Rat(-1)}, Rat(-1)); // x - q/x
    ConeSpec spec{{Rat(1)}, Rat(3), Rat(50)};
    GradedSeries qt = divide_in_cone(den, den, spec);
    CHECK(qt == GradedSeries::constant(1, Rat(1)));
}

TEST_CASE("cone division expands into falling weights") {
    // 1 / (x - q/x) = x^-1 + q x^-3 + q^2 x^-5 + ...
    GradedSeries num(1, Rat(6));
    num.add_term(Rat(0), {Rat(0)}, Rat(1));
    GradedSeries den(1);
    den.add_term(Rat(0), {Rat(1)}, Rat(1));
    den.add_term(Rat(1), {Rat(-1)}, Rat(-1));
    ConeSpec spec{{Rat(1)}, Rat(3), Rat(40)};
    GradedSeries qt = divide_in_cone(num, den, spec);
    for (int n = 0; n < 6; ++n) CHECK(qt.coeff(Rat(n), {Rat(-1 - 2 * n)}) == Rat(1));
    GradedSeries back = mul(qt, den);
    CHECK(equal_below(back, num, Rat(6)));
}

TEST_CASE("cone division window cuts deep terms only") {
    GradedSeries num(1, Rat(20));
    num.add_term(Rat(0), {Rat(0)}, Rat(1));
    GradedSeries den(1);
    den.add_term(Rat(0), {Rat(1)}, Rat(1));
    den.add_term(Rat(1), {Rat(-1)}, Rat(-1));
    // drop per step is 3*1 + 2 = 5; bound 12 keeps exactly steps 0, 1, 2
    ConeSpec spec{{Rat(1)}, Rat(3), Rat(12)};
    GradedSeries qt = divide_in_cone(num, den, spec);
    CHECK(qt.term_count() == 3);
    CHECK(qt.coeff(Rat(2), {Rat(-5)}) == Rat(1));
    CHECK(qt.coeff(Rat(3), {Rat(-7)}) == Rat(0));
}

TEST_CASE("cone division rejects a divisor outside its cone") {
    GradedSeries num = GradedSeries::constant(1, Rat(1));
    GradedSeries den(1);
    den.add_term(Rat(0), {Rat(0)}, Rat(1));
    den.add_term(Rat(1), {Rat(4)}, Rat(-1));
    // the second term climbs 4 in weight height against 1 in q: drop 1 - 8 < 0
    ConeSpec spec{{Rat(2)}, Rat(1), Rat(10)};
    CHECK_THROWS_AS(divide_in_cone(num, den, spec), Error);
}

TEST_CASE("square root of a perfect square") {
    GradedSeries a(1);
    a.add_term(Rat(0), {Rat(0)}, Rat(1));
    a.add_term(Rat(1), {Rat(1)}, Rat(1)); // 1 + q x
    GradedSeries sq = mul(a, a);
    CHECK(sqrt_series(sq) == a);

    GradedSeries m = GradedSeries::monomial(1, Rat(3), {Rat(1)}, rat(9, 4), Rat(2));
    GradedSeries r = sqrt_series(m);
    CHECK(r.coeff(rat(3, 2), {rat(1, 2)}) == rat(3, 2));
    CHECK(r.t_exp() == Rat(1));

    GradedSeries trunc_sq = truncate(sq, Rat(3));
    GradedSeries root = sqrt_series(trunc_sq);
    CHECK(equal_below(root, a, Rat(2)));
}

TEST_CASE("square root failures are reported") {
    GradedSeries two = GradedSeries::constant(0, Rat(2));
    CHECK_THROWS_AS(sqrt_series(two), Error);
    GradedSeries pair(1);
    pair.add_term(Rat(0), {Rat(1)}, Rat(1));
    pair.add_term(Rat(0), {Rat(-1)}, Rat(1));
    CHECK_THROWS_AS(sqrt_series(pair), Error);
    GradedSeries iu = GradedSeries::monomial(0, Rat(0), {}, Rat(1), Rat(0), 1);
    CHECK_THROWS_AS(sqrt_series(iu), Error);
    GradedSeries nonsq(0);
    nonsq.add_term(Rat(0), {}, Rat(1));
    nonsq.add_term(Rat(1), {}, Rat(1)); // exact 1 + q has no polynomial root
    CHECK_THROWS_AS(sqrt_series(nonsq), Error);
}

TEST_CASE("equality below an order ignores deeper terms") {
    GradedSeries a(0, Rat(10));
    a.add_term(Rat(0), {}, Rat(1));
    a.add_term(Rat(5), {}, Rat(9));
    GradedSeries b(0, Rat(10));
    b.add_term(Rat(0), {}, Rat(1));
    CHECK(equal_below(a, b, Rat(5)));
    CHECK_FALSE(equal_below(a, b, Rat(6)));
    CHECK_THROWS_AS(equal_below(a, b, Rat(11)), Error);
}
