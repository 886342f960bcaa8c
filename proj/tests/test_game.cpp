#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hatlab/errors.hpp"
#include "hatlab/game.hpp"
#include "hatlab/rng.hpp"

#include <algorithm>

using namespace hatlab;
using namespace hatlab::game;

namespace {

Bitset set_of(std::size_t size, std::initializer_list<Point> points)
{
    Bitset s(size);
    for (Point p : points)
        s.set(p);
    return s;
}

bool member_of(const WinningFamily & family, const Bitset & set)
{
    return std::any_of(family.sets.begin(), family.sets.end(), [&](const Bitset & s) { return s == set; });
}

} // namespace

TEST_CASE("points and tuples")
{
    CHECK(point_string(0b001, 3) == "100");
    CHECK(parse_point("100") == 0b001);
    CHECK(parse_point(point_string(0b1101, 4)) == 0b1101);
    CHECK(complement(0b0110, 4) == 0b1001);

    const std::vector<Point> tuple{3, 0, 2};
    const TupleIndex idx = flatten(tuple, 2);
    CHECK(idx == 0b110010);
    CHECK(unflatten(idx, 3, 2) == tuple);
    CHECK(coordinate(idx, 0, 3, 2) == 3);
    CHECK(drop_coordinate(idx, 1, 3, 2) == 0b1110);
    CHECK(insert_coordinate(drop_coordinate(idx, 1, 3, 2), 1, 0, 3, 2) == idx);

    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const TupleIndex x = rng.below(std::uint64_t{1} << 12);
        CHECK(flatten(unflatten(x, 4, 3), 3) == x);
    }
}

TEST_CASE("dictator family")
{
    const auto fam = enumerate_family(FamilyKind::dictator, 2);
    REQUIRE(fam.r() == 2);
    // W_1 = {x : x_1 = 1} = {10, 11}
    CHECK(fam.sets[0] == set_of(4, {parse_point("10"), parse_point("11")}));
    CHECK(fam.sets[1] == set_of(4, {parse_point("01"), parse_point("11")}));
}

TEST_CASE("intersecting family at n = 3")
{
    const auto fam = enumerate_family(FamilyKind::intersecting, 3);
    REQUIRE(fam.r() == 4);
    const auto dict = enumerate_family(FamilyKind::dictator, 3);
    for (const auto & d : dict.sets)
        CHECK(member_of(fam, d));
    const Bitset majority = set_of(8, {parse_point("110"), parse_point("101"), parse_point("011"), parse_point("111")});
    CHECK(member_of(fam, majority));
    CHECK(std::is_sorted(fam.sets.begin(), fam.sets.end(), mask_less));
}

TEST_CASE("monotone family at n = 2 is the dictators")
{
    const auto mono = enumerate_family(FamilyKind::monotone, 2);
    const auto dict = enumerate_family(FamilyKind::dictator, 2);
    CHECK(mono.sets == dict.sets);
}

TEST_CASE("family sizes and measure 1/2")
{
    // independently enumerated counts
    const std::size_t intersecting[] = {0, 1, 2, 4, 12};
    const std::size_t monotone[] = {0, 1, 2, 4, 24};
    for (unsigned n = 1; n <= 4; ++n) {
        const auto i = enumerate_family(FamilyKind::intersecting, n);
        const auto m = enumerate_family(FamilyKind::monotone, n);
        CHECK(i.r() == intersecting[n]);
        CHECK(m.r() == monotone[n]);
        for (const auto * fam : {&i, &m})
            for (const auto & s : fam->sets)
                CHECK(s.count() * 2 == fam->ground_size());
    }
}

TEST_CASE("dictators within intersecting within monotone")
{
    for (unsigned n = 1; n <= 4; ++n) {
        const auto d = enumerate_family(FamilyKind::dictator, n);
        const auto i = enumerate_family(FamilyKind::intersecting, n);
        const auto m = enumerate_family(FamilyKind::monotone, n);
        for (const auto & s : d.sets)
            CHECK(member_of(i, s));
        for (const auto & s : i.sets)
            CHECK(member_of(m, s));
    }
}

TEST_CASE("intersecting members are maximal intersecting")
{
    const unsigned n = 4;
    for (const auto & s : enumerate_family(FamilyKind::intersecting, n).sets) {
        const auto pts = s.indices();
        for (auto a : pts)
            for (auto b : pts)
                CHECK((a & b) != 0);
        for (Point p = 0; p < (1u << n); ++p)
            if (! s.test(p))
                CHECK(std::any_of(pts.begin(), pts.end(), [&](std::size_t a) { return (a & p) == 0; }));
    }
}

TEST_CASE("size limits")
{
    CHECK_THROWS_AS(enumerate_family(FamilyKind::intersecting, 5), UnsupportedSize);
    CHECK_THROWS_AS(enumerate_family(FamilyKind::monotone, 5), UnsupportedSize);
    CHECK_THROWS_AS(enumerate_family(FamilyKind::dictator, 21), UnsupportedSize);
    CHECK_THROWS_AS(enumerate_family(FamilyKind::dictator, 0), UnsupportedSize);
    CHECK(parse_family_kind("mono") == FamilyKind::monotone);
    CHECK_THROWS_AS(parse_family_kind("majority"), std::invalid_argument);
}

TEST_CASE("winning sets from the definition")
{
    const auto d2 = enumerate_family(FamilyKind::dictator, 2);

    SUBCASE("one player")
    {
        Strategy s = constant_strategy(1, 2, 0);
        const auto w = winning_set(s, d2);
        CHECK(w.members == d2.sets[0]);
        CHECK(w.measure == Rational(1, 2));
    }
    SUBCASE("n = 1 forces constant tables")
    {
        const auto d1 = enumerate_family(FamilyKind::dictator, 1);
        const auto w = winning_set(constant_strategy(2, 1, 0), d1);
        CHECK(w.members.indices() == std::vector<std::size_t>{flatten(std::vector<Point>{1, 1}, 1)});
        CHECK(w.measure == Rational(1, 4));
    }
    SUBCASE("f1 = W_1, f2 = W_2")
    {
        Strategy s = constant_strategy(2, 2, 0);
        std::fill(s.tables[1].begin(), s.tables[1].end(), FamilyIndex{1});
        const auto w = winning_set(s, d2);
        CHECK(w.measure == Rational(1, 4));
        w.members.for_each([](std::size_t x) {
            CHECK((coordinate(x, 0, 2, 2) & 1u) == 1u);
            CHECK((coordinate(x, 1, 2, 2) & 2u) == 2u);
        });
    }
    SUBCASE("random strategy equals a direct count")
    {
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            Strategy s = random_strategy(2, 2, 2, rng);
            std::size_t count = 0;
            for (Point x1 = 0; x1 < 4; ++x1)
                for (Point x2 = 0; x2 < 4; ++x2)
                    count += d2.sets[s.tables[0][x2]].test(x1) && d2.sets[s.tables[1][x1]].test(x2);
            CHECK(success_probability(s, d2) == ratio(count, 16));
        }
    }
}

TEST_CASE("malformed strategies")
{
    const auto d2 = enumerate_family(FamilyKind::dictator, 2);
    Strategy s = constant_strategy(2, 2, 0);
    s.tables[1][3] = 2;
    CHECK_THROWS_AS(winning_set(s, d2), MalformedStrategy);
    s = constant_strategy(2, 2, 0);
    s.tables[0].pop_back();
    CHECK_THROWS_AS(winning_set(s, d2), MalformedStrategy);
    CHECK_THROWS_AS(winning_set(constant_strategy(2, 3, 0), d2), MalformedStrategy);
}

TEST_CASE("tuple and inductive formulations agree")
{
    Rng rng(2024);
    for (unsigned t : {1u, 2u, 3u})
        for (unsigned n : {1u, 2u})
            for (auto kind : {FamilyKind::dictator, FamilyKind::intersecting, FamilyKind::monotone}) {
                const auto fam = enumerate_family(kind, n);
                for (int trial = 0; trial < 25; ++trial) {
                    const Strategy s = random_strategy(t, n, fam.r(), rng);
                    const auto a = winning_set(s, fam);
                    const auto b = winning_set_inductive(s, fam);
                    CHECK(a.members == b.members);
                    CHECK(a.measure == b.measure);
                }
            }
}

TEST_CASE("permuting players permutes the winning set")
{
    Rng rng(8);
    const auto fam = enumerate_family(FamilyKind::dictator, 2);
    const std::vector<unsigned> order{2, 0, 1};
    for (int trial = 0; trial < 10; ++trial) {
        const Strategy s = random_strategy(3, 2, fam.r(), rng);
        const Strategy p = permute_players(s, order);
        const auto ws = winning_set(s, fam);
        const auto wp = winning_set(p, fam);
        CHECK(ws.measure == wp.measure);
        for (TupleIndex y = 0; y < 64; ++y) {
            std::vector<Point> x(3);
            for (unsigned j = 0; j < 3; ++j)
                x[order[j]] = coordinate(y, j, 3, 2);
            CHECK(wp.members.test(y) == ws.members.test(flatten(x, 2)));
        }
    }
    CHECK_THROWS_AS(permute_players(constant_strategy(3, 2, 0), std::vector<unsigned>{0, 0, 1}), std::invalid_argument);
}

TEST_CASE("one player always wins with probability 1/2")
{
    for (auto kind : {FamilyKind::dictator, FamilyKind::intersecting, FamilyKind::monotone}) {
        const auto fam = enumerate_family(kind, 3);
        for (std::size_t i = 0; i < fam.r(); ++i)
            CHECK(success_probability(constant_strategy(1, 3, static_cast<FamilyIndex>(i)), fam) == Rational(1, 2));
    }
}
