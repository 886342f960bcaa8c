#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/solver.hpp"

#include <sstream>

using namespace hatlab;
using namespace hatlab::graph;

namespace {

Graph k2()
{
    Graph g(2, "K2");
    g.add_edge(0, 1);
    return g;
}

bool same_edges(const Graph & a, const Graph & b)
{
    if (a.vcount() != b.vcount())
        return false;
    for (std::size_t u = 0; u < a.vcount(); ++u)
        if (! (a.row(u) == b.row(u)))
            return false;
    return true;
}

} // namespace

TEST_CASE("kneser graphs")
{
    const Graph g1 = kneser(1);
    CHECK(g1.vcount() == 2);
    CHECK(g1.has_loop(0));
    CHECK(g1.adjacent(0, 1));
    CHECK_FALSE(g1.has_loop(1));

    const Graph g2 = kneser(2);
    CHECK(g2.adjacent(0b01, 0b10));
    for (std::size_t v = 0; v < 4; ++v)
        CHECK(g2.adjacent(0, v));
    CHECK_FALSE(g2.adjacent(0b11, 0b01));
    CHECK(g2.loop_count() == 1);

    const Graph g3 = kneser(3);
    std::size_t edges = 0;
    for (std::size_t u = 0; u < 8; ++u)
        for (std::size_t v = u + 1; v < 8; ++v)
            edges += (u & v) == 0;
    CHECK(g3.edge_count() == edges);
    CHECK_THROWS_AS(kneser(14), UnsupportedSize);
}

TEST_CASE("hamming products")
{
    const Graph c4 = hamming_product(k2(), k2());
    CHECK(c4.vcount() == 4);
    CHECK(c4.edge_count() == 4);
    for (std::size_t v = 0; v < 4; ++v)
        CHECK(c4.degree(v) == 2);
    CHECK_FALSE(c4.adjacent(0, 3));

    const Graph p = hamming_product(kneser(1), kneser(1));
    // (x, v) looped iff x or v is
    CHECK(p.has_loop(0));
    CHECK(p.has_loop(1));
    CHECK(p.has_loop(2));
    CHECK_FALSE(p.has_loop(3));
    CHECK(p.adjacent(3, 1));
    CHECK(p.adjacent(3, 2));
    CHECK_FALSE(p.adjacent(3, 0));

    CHECK(same_edges(hamming_power(kneser(2), 1), kneser(2)));

    // (G x H) x M against G x (H x M): same row-major index
    const Graph g = kneser(1), h = shift_graph(2), m = k2();
    const Graph left = hamming_product(hamming_product(g, h), m);
    const Graph right = hamming_product(g, hamming_product(h, m));
    CHECK(same_edges(left, right));
    CHECK(left.loops() == right.loops());
}

TEST_CASE("shift graphs")
{
    const Graph s2 = shift_graph(2);
    REQUIRE(s2.vcount() == 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t i = a / 2, j = a % 2, j2 = b / 2, k = b % 2;
            const bool edge = (j == j2 && i != k) || (k == i && j2 != j);
            CHECK(s2.adjacent(a, b) == edge);
        }
    const Graph s4 = shift_graph(4);
    CHECK(s4.loop_count() == 0);
    // (i, j) and (j, i) are not adjacent
    CHECK_FALSE(s4.adjacent(0 * 4 + 1, 1 * 4 + 0));
    CHECK(max_independent_set(s4).alpha_bar == Rational(1, 4));

    // A x B for A = {1, 2}, B = {3, 4} (0-based {0,1} x {2,3})
    Bitset ab(16);
    for (std::size_t i : {0, 1})
        for (std::size_t j : {2, 3})
            ab.set(i * 4 + j);
    CHECK(s4.is_independent(ab));
    CHECK_THROWS_AS(shift_graph(1), UnsupportedSize);
    CHECK_THROWS_AS(shift_graph(65), UnsupportedSize);
}

TEST_CASE("maximum independent sets")
{
    CHECK(max_independent_set(kneser(2)).size == 2);
    CHECK(max_independent_set(kneser(3)).size == 4);
    CHECK(max_independent_set(kneser(4)).size == 8);
    CHECK(max_independent_set(kneser(3)).alpha_bar == Rational(1, 2));
    CHECK(max_independent_set(complete_graph(5)).size == 1);
    CHECK(max_independent_set(edgeless_graph(7)).size == 7);

    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (double p : {0.2, 0.5, 0.8}) {
            const Graph g = random_graph(14, p, seed);
            const auto mis = max_independent_set(g);
            CHECK(g.is_independent(mis.set));
            CHECK(mis.set.count() == mis.size);
            CHECK(mis.size == oracle::alpha_brute(g));
        }
    for (auto g : {kneser(3), shift_graph(3), hamming_product(kneser(2), kneser(2)), shift_graph(4)}) {
        const auto mis = max_independent_set(g);
        CHECK(mis.size == oracle::alpha_brute(g));
        CHECK(g.is_independent(mis.set));
    }
}

TEST_CASE("restricted search")
{
    const Graph g = edgeless_graph(10);
    Bitset within(10);
    within.set(2);
    within.set(7);
    const auto mis = max_independent_set(g, &within);
    CHECK(mis.size == 2);
    CHECK(mis.alpha_bar == Rational(1, 5));
}

TEST_CASE("kneser powers match the intersecting game")
{
    for (auto [n, t] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}}) {
        const auto a = max_independent_set(hamming_power(kneser(n), t)).alpha_bar;
        CHECK(a == solver::exact_p(t, n, game::FamilyKind::intersecting).value);
    }
}

TEST_CASE("fiber bound and power monotonicity")
{
    const Graph g = kneser(2), h = shift_graph(3);
    const auto ag = max_independent_set(g).alpha_bar, ah = max_independent_set(h).alpha_bar;
    CHECK(max_independent_set(hamming_product(g, h)).alpha_bar <= std::min(ag, ah));
    for (unsigned n : {2u, 3u}) {
        Rational prev = 1;
        for (unsigned t = 1; t <= 3; ++t) {
            const auto a = max_independent_set(hamming_power(kneser(n), t)).alpha_bar;
            CHECK(a <= prev);
            prev = a;
        }
    }
}

TEST_CASE("random graphs")
{
    CHECK(random_graph(8, 0.0, 1).edge_count() == 0);
    CHECK(random_graph(8, 1.0, 1).edge_count() == 28);
    CHECK(random_graph(8, 0.5, 42) == random_graph(8, 0.5, 42));

    // frozen from the first run of the seeded generator
    const Graph g = random_graph(8, 0.5, 42);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < 8; ++u)
        for (std::size_t v = u + 1; v < 8; ++v)
            if (g.adjacent(u, v))
                edges.emplace_back(u, v);
    std::ostringstream s;
    for (auto [u, v] : edges)
        s << u << v << ' ';
    CHECK(s.str() == "01 04 07 12 13 14 15 16 17 24 25 27 35 36 45 47 56 57 ");
}

TEST_CASE("maximal independent sets")
{
    std::vector<Bitset> sets;
    for_each_maximal_independent_set(kneser(3), [&](const Bitset & s) {
        sets.push_back(s);
        return true;
    });
    CHECK(sets.size() == 4);

    // C4 has two maximal independent sets
    std::size_t count = 0;
    for_each_maximal_independent_set(hamming_product(k2(), k2()), [&](const Bitset &) {
        ++count;
        return true;
    });
    CHECK(count == 2);

    CHECK(independent_sets_of_size(shift_graph(4), 4, 1000).size() == 16);
    CHECK(independent_sets_of_size(complete_graph(4), 1, 10).size() == 4);
    CHECK_THROWS_AS(independent_sets_of_size(edgeless_graph(10), 3, 5), UnsupportedSize);
}

TEST_CASE("graph files round-trip")
{
    for (const Graph & g : {kneser(3), shift_graph(5), random_graph(70, 0.3, 9)}) {
        std::stringstream text;
        write_adjacency_text(g, text);
        CHECK(read_adjacency_text(text) == g);

        std::stringstream bin;
        write_binary(g, bin);
        const std::string bytes = bin.str();
        CHECK(bytes.substr(0, 4) == "HLG1");
        CHECK(bytes.size() == 8 + g.vcount() * ((g.vcount() + 63) / 64) * 8);
        CHECK(read_binary(bin) == g);
    }

    std::stringstream asym("hatlab-graph 2\n0: 1\n1:\n");
    CHECK_THROWS(read_adjacency_text(asym));
}
