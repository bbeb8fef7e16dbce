#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetachar/errors.hpp"
#include "thetachar/output.hpp"

using namespace thetachar;

namespace {

const BoundaryWeight& pick(const std::vector<BoundaryWeight>& all, std::size_t i) {
    REQUIRE(i < all.size());
    return all[i];
}

} // namespace

TEST_CASE("records round-trip through JSON") {
    const RootSystem rs("A1");
    const auto all = boundary_weights(rs, 3);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const BoundaryWeight& d = pick(all, i);
        const CharacterResult cr = boundary_character(rs, d, Rat(8));
        const OutputRecord rec = make_record("A1", d, 3, Rat(8), cr.series);
        CHECK(rec.u == 3);
        CHECK(rec.y_index == d.y_index);
        CHECK(rec.beta == d.beta);
        CHECK(rec.terms.size() == cr.series.term_count());

        const OutputRecord back = record_from_json(record_to_json(rec));
        CHECK(rec == back);
        CHECK(record_to_json(rec) == record_to_json(back));

        const GradedSeries rebuilt = record_series(back, rs.rank());
        CHECK(!rebuilt.trunc());
        const Rat win = cr.series.trunc() ? *cr.series.trunc() : Rat(8);
        CHECK(equal_below(rebuilt, cr.series, win));
    }
}

TEST_CASE("rank-two records keep every weight coordinate") {
    const RootSystem rs("A2");
    const auto all = boundary_weights(rs, 2);
    const BoundaryWeight& d = pick(all, 2);
    const CharacterResult cr = boundary_character(rs, d, Rat(6));
    const OutputRecord rec = make_record("A2", d, 2, Rat(6), cr.series);
    for (const auto& t : rec.terms) CHECK(t.weight.size() == 2);
    const OutputRecord back = record_from_json(record_to_json(rec));
    CHECK(rec == back);
    const Rat win = cr.series.trunc() ? *cr.series.trunc() : Rat(6);
    CHECK(equal_below(record_series(back, 2), cr.series, win));
}

TEST_CASE("text rendering is one line per term plus a two-line header") {
    const RootSystem rs("A1");
    const auto all = boundary_weights(rs, 3);
    const CharacterResult cr = boundary_character(rs, pick(all, 0), Rat(5));
    const OutputRecord rec = make_record("A1", pick(all, 0), 3, Rat(5), cr.series);
    const std::string text = record_to_text(rec);
    CHECK(text.rfind("algebra A1", 0) == 0);
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == rec.terms.size() + 2);
}

TEST_CASE("serialization refuses rationals beyond 64 bits") {
    OutputRecord rec;
    rec.algebra = "A1";
    Rat big = rat(1L << 40, 1);
    big = big * big;
    rec.order = Rat(4);
    rec.terms.push_back({big, {}, Rat(1)});
    CHECK_THROWS_AS(record_to_json(rec), Error);
}
