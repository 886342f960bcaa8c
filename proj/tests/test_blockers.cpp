#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "hatlab/blockers.hpp"
#include "hatlab/errors.hpp"
#include "hatlab/rng.hpp"
#include "hatlab/solver.hpp"

#include <algorithm>
#include <set>

using namespace hatlab;
using namespace hatlab::blockers;
using game::FamilyKind;
using game::Point;

namespace {

bool winning_set_meets(const game::Strategy & s, const game::WinningFamily & fam, const Blocker & a)
{
    return std::any_of(a.points.begin(), a.points.end(), [&](game::TupleIndex x) { return game::wins_at(s, fam, x); });
}

} // namespace

TEST_CASE("k sequence")
{
    CHECK(k_sequence(1) == 2);
    CHECK(k_sequence(2) == 12);
    CHECK(k_sequence(3) == 32449872);
    CHECK_THROWS_AS(k_sequence(5), UnsupportedSize);
    CHECK_THROWS_AS(k_sequence(0), UnsupportedSize);
}

TEST_CASE("decrement bounds")
{
    CHECK(decrement_bound(2, 1) == Rational(1, 128));
    CHECK(decrement_bound(12, Rational(1, 6)) == Rational(1, mpz_class(72) << 26));
    for (std::uint64_t k : {2u, 3u, 12u, 40u})
        CHECK(decrement_bound(k, ratio(2, k)) == corollary_bound(k));
    CHECK_THROWS_AS(decrement_bound(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(decrement_bound(0, 1), std::invalid_argument);
}

TEST_CASE("base pairs")
{
    for (unsigned n = 1; n <= 6; ++n) {
        const auto fam = base_blockers(n);
        CHECK(fam.size() == (std::size_t{1} << (n - 1)));
        CHECK(fam.k == 2);
        const auto dict = game::enumerate_family(FamilyKind::dictator, n);
        const auto v = verify_family(fam, dict);
        CHECK(v.certified == fam.size());
        CHECK(v.disjoint);
        CHECK(v.uniform_size);
        CHECK(v.beta == 1);
        // every dictator holds exactly one point of each pair
        for (const auto & b : fam.listed)
            for (const auto & w : dict.sets)
                CHECK(w.test(b.points[0]) + w.test(b.points[1]) == 1);
    }
    const auto b2 = base_blockers(2);
    CHECK(b2.listed[0].points == std::vector<game::TupleIndex>{0b00, 0b11});
    CHECK(b2.listed[1].points == std::vector<game::TupleIndex>{0b01, 0b10});
}

TEST_CASE("singletons are not blockers")
{
    for (unsigned n = 2; n <= 5; ++n) {
        const auto dict = game::enumerate_family(FamilyKind::dictator, n);
        for (Point x = 0; x + 1 < (1u << n); ++x) {
            const Blocker a{1, n, {x}, false};
            const auto v = verify_blocker(a, dict);
            REQUIRE_FALSE(v.certified);
            REQUIRE(v.counterexample);
            const auto s = v.counterexample->extend();
            CHECK_FALSE(winning_set_meets(s, dict, a));
            CHECK(((x >> s.tables[0][0]) & 1u) == 0);
        }
        // the all-ones point lies in every dictator
        CHECK(verify_blocker(Blocker{1, n, {(1u << n) - 1}, false}, dict).certified);
    }
}

TEST_CASE("tuples from partitions")
{
    const auto y = tuple_from_parts({0b0001, 0b0010, 0b0100, 0b1000});
    CHECK(std::vector<Point>(y.begin(), y.end()) == std::vector<Point>{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100});
}

TEST_CASE("two-player certification against brute force")
{
    Rng rng(31);
    const unsigned n = 3;
    const auto dict = game::enumerate_family(FamilyKind::dictator, n);
    int certified = 0, refuted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::set<game::TupleIndex> pts;
        const std::size_t size = 1 + rng.below(7);
        while (pts.size() < size)
            pts.insert(rng.below(64));
        const Blocker a{2, n, {pts.begin(), pts.end()}, false};
        const auto v = verify_blocker(a, dict);
        CHECK(v.certified == oracle::brute_force_blocks(a));
        if (v.certified) {
            ++certified;
        }
        else {
            ++refuted;
            REQUIRE(v.counterexample);
            for (game::FamilyIndex fill = 0; fill < n; ++fill)
                CHECK_FALSE(winning_set_meets(v.counterexample->extend(fill), dict, a));
        }
    }
    CHECK(certified > 0);
    CHECK(refuted > 0);
}

TEST_CASE("construction at n = 4 against full enumeration")
{
    const auto built = construct_blockers(4, 1, 0.5);
    const auto & fam = built.family;
    CHECK_FALSE(built.report.stalled);
    CHECK(built.report.tuples_kept == 1);
    CHECK(fam.k == 12);
    CHECK(fam.size() == 8);
    CHECK(fam.beta == Rational(3, 8));
    const auto dict = game::enumerate_family(FamilyKind::dictator, 4);
    const auto v = verify_family(fam, dict, 2);
    CHECK(v.failed == 0);
    CHECK(v.disjoint);
    CHECK(v.uniform_size);
    CHECK(v.common_reply_every_probe);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto b = fam.member(i);
        CHECK(b.points.size() == 12);
        CHECK(oracle::brute_force_blocks(b));
        // the six vectors are the weight-two points
        for (auto p : b.points)
            CHECK(std::popcount(game::coordinate(p, 1, 2, 4)) == 2);
    }
}

TEST_CASE("construction at n = 8")
{
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        const auto built = construct_blockers(8, seed, 0.5);
        const auto & fam = built.family;
        CHECK(fam.k == 12);
        CHECK(fam.beta >= Rational(1, 12));
        CHECK(fam.beta <= Rational(1, 6));
        const auto dict = game::enumerate_family(FamilyKind::dictator, 8);
        const auto v = verify_family(fam, dict, 4);
        CHECK(v.failed == 0);
        CHECK(v.certified == fam.size());
        CHECK(v.disjoint);
        CHECK(v.beta == fam.beta);

        // random strategies always meet the certified blockers
        Rng rng(seed);
        for (int trial = 0; trial < 200; ++trial) {
            const auto b = fam.member(rng.below(fam.size()));
            game::Strategy s = game::constant_strategy(2, 8, 0);
            for (auto & table : s.tables)
                for (auto p : b.points) {
                    table[game::coordinate(p, 0, 2, 8)] = static_cast<game::FamilyIndex>(rng.below(8));
                    table[game::coordinate(p, 1, 2, 8)] = static_cast<game::FamilyIndex>(rng.below(8));
                }
            CHECK(winning_set_meets(s, dict, b));
        }
    }
}

TEST_CASE("construction is seeded and stalls are reported")
{
    const auto a = construct_blockers(10, 5, 0.3);
    const auto b = construct_blockers(10, 5, 0.3);
    CHECK(a.report.partitions == b.report.partitions);
    CHECK(a.family.beta == b.family.beta);
    // at n = 4 one tuple covers 3/8 of B and nothing else fits; any target is met
    const auto tight = construct_blockers(4, 3, 0.01);
    CHECK_FALSE(tight.report.stalled);
    CHECK_THROWS_AS(construct_blockers(3, 0, 0.5), UnsupportedSize);
    CHECK_THROWS_AS(construct_blockers(8, 0, 1.5), std::invalid_argument);
}

TEST_CASE("failed members are located")
{
    BlockerFamily fam;
    fam.t = 2;
    fam.n = 3;
    fam.k = 1;
    fam.listed = {Blocker{2, 3, {63}, false}, Blocker{2, 3, {5}, false}};
    const auto v = verify_family(fam, game::enumerate_family(FamilyKind::dictator, 3));
    CHECK(v.certified == 1);
    CHECK(v.failed == 1);
    CHECK(v.first_failure == std::optional<std::size_t>{1});
}

TEST_CASE("finite-n decrement check")
{
    const Rational ceiling = Rational(1, 2) - decrement_bound(2, 1);
    for (unsigned n = 1; n <= 3; ++n)
        CHECK(solver::exact_p(2, n, FamilyKind::dictator).value <= ceiling);
}

TEST_CASE("graph blockers")
{
    const auto k4 = min_graph_blocker(graph::complete_graph(4));
    CHECK(k4.size == 4);
    CHECK(k4.alpha == 1);
    CHECK(min_graph_blocker(graph::edgeless_graph(5)).size == 1);

    // independent brute force (Python) against maximum independent sets
    const auto s4 = min_graph_blocker(graph::shift_graph(4));
    CHECK(s4.alpha == 4);
    CHECK(s4.target_sets == 16);
    CHECK(s4.size == 5);
    const auto s6 = min_graph_blocker(graph::shift_graph(6));
    CHECK(s6.alpha == 9);
    CHECK(s6.size == 4);

    // every maximum set is hit
    for (const auto & set : graph::independent_sets_of_size(graph::shift_graph(4), 4, 1000))
        CHECK(set.intersects(s4.witness));

    const auto maximal = min_graph_blocker(graph::shift_graph(4), GraphBlockerTarget::maximal);
    CHECK(maximal.size >= 1);
    graph::for_each_maximal_independent_set(graph::shift_graph(4), [&](const Bitset & s) {
        CHECK(s.intersects(maximal.witness));
        return true;
    });
    CHECK_THROWS_AS(min_graph_blocker(graph::edgeless_graph(2000)), UnsupportedSize);
}
