#include "hatlab/game.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hatlab::game {

std::string point_string(Point x, unsigned n)
{
    std::string out(n, '0');
    for (unsigned i = 0; i < n; ++i)
        if ((x >> i) & 1u)
            out[i] = '1';
    return out;
}

Point parse_point(std::string_view bits)
{
    if (bits.empty() || bits.size() > 32)
        throw std::invalid_argument("point must have 1..32 coordinates");
    Point x = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            x |= Point{1} << i;
        else if (bits[i] != '0')
            throw std::invalid_argument("point coordinates must be 0 or 1");
    }
    return x;
}

TupleIndex flatten(std::span<const Point> points, unsigned n)
{
    TupleIndex index = 0;
    for (Point p : points)
        index = (index << n) | p;
    return index;
}

std::vector<Point> unflatten(TupleIndex index, unsigned t, unsigned n)
{
    std::vector<Point> out(t);
    for (unsigned i = 0; i < t; ++i)
        out[i] = coordinate(index, i, t, n);
    return out;
}

std::string_view to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::dictator: return "dictator";
    case FamilyKind::intersecting: return "intersecting";
    case FamilyKind::monotone: return "monotone";
    }
    return "?";
}

FamilyKind parse_family_kind(std::string_view text)
{
    if (text == "dictator" || text == "dict")
        return FamilyKind::dictator;
    if (text == "intersecting" || text == "int")
        return FamilyKind::intersecting;
    if (text == "monotone" || text == "mono")
        return FamilyKind::monotone;
    throw std::invalid_argument("unknown family kind '" + std::string(text) + "'");
}

bool mask_less(const Bitset & a, const Bitset & b)
{
    auto wa = a.words(), wb = b.words();
    for (std::size_t i = wa.size(); i-- > 0;)
        if (wa[i] != wb[i])
            return wa[i] < wb[i];
    return false;
}

namespace {

WinningFamily dictators(unsigned n)
{
    WinningFamily family{FamilyKind::dictator, n, {}};
    const std::size_t size = std::size_t{1} << n;
    for (unsigned i = 0; i < n; ++i) {
        Bitset set(size);
        for (std::size_t x = 0; x < size; ++x)
            if ((x >> i) & 1u)
                set.set(x);
        family.sets.push_back(std::move(set));
    }
    return family;
}

WinningFamily maximal_intersecting(unsigned n)
{
    WinningFamily family{FamilyKind::intersecting, n, {}};
    // the all-zero vertex is looped in K(n), so it never appears
    graph::for_each_maximal_independent_set(graph::kneser(n), [&](const Bitset & set) {
        family.sets.push_back(set);
        return true;
    });
    return family;
}

// Up-sets of {0,1}^m as integer masks over 2^m points (m <= 4, so 16 bits).
// An up-set splits on the top coordinate as U = U0 + U1 (x_m = 0 / 1 halves)
// with U0, U1 up-sets of {0,1}^{m-1} and U0 contained in U1.
std::vector<std::uint32_t> upsets(unsigned m)
{
    if (m == 0)
        return {0u, 1u};
    auto lower = upsets(m - 1);
    const unsigned half = 1u << (m - 1);
    std::vector<std::uint32_t> out;
    for (auto u0 : lower)
        for (auto u1 : lower)
            if ((u0 & ~u1) == 0)
                out.push_back(u0 | (u1 << half));
    return out;
}

WinningFamily balanced_monotone(unsigned n)
{
    WinningFamily family{FamilyKind::monotone, n, {}};
    const std::size_t size = std::size_t{1} << n;
    for (auto mask : upsets(n)) {
        if (static_cast<std::size_t>(std::popcount(mask)) != size / 2)
            continue;
        Bitset set(size);
        for (std::size_t x = 0; x < size; ++x)
            if ((mask >> x) & 1u)
                set.set(x);
        family.sets.push_back(std::move(set));
    }
    return family;
}

} // namespace

WinningFamily enumerate_family(FamilyKind kind, unsigned n)
{
    if (n < 1)
        throw UnsupportedSize("enumerate_family: n must be >= 1");
    WinningFamily family;
    switch (kind) {
    case FamilyKind::dictator:
        if (n > max_dictator_n)
            throw UnsupportedSize("enumerate_family(dictator): n = " + std::to_string(n) + " exceeds the limit "
                                  + std::to_string(max_dictator_n));
        family = dictators(n);
        break;
    case FamilyKind::intersecting:
    case FamilyKind::monotone:
        if (n > max_enumerated_n)
            throw UnsupportedSize("enumerate_family(" + std::string(to_string(kind)) + "): n = " + std::to_string(n)
                                  + " exceeds the exhaustive enumeration limit " + std::to_string(max_enumerated_n));
        family = kind == FamilyKind::intersecting ? maximal_intersecting(n) : balanced_monotone(n);
        break;
    }
    std::sort(family.sets.begin(), family.sets.end(), mask_less);
    return family;
}

Strategy constant_strategy(unsigned t, unsigned n, FamilyIndex index)
{
    Strategy s{t, n, {}};
    s.tables.assign(t, std::vector<FamilyIndex>(s.table_size(), index));
    return s;
}

Strategy random_strategy(unsigned t, unsigned n, std::size_t r, Rng & rng)
{
    Strategy s{t, n, {}};
    s.tables.assign(t, std::vector<FamilyIndex>(s.table_size()));
    for (auto & table : s.tables)
        for (auto & entry : table)
            entry = static_cast<FamilyIndex>(rng.below(r));
    return s;
}

void validate(const Strategy & strategy, const WinningFamily & family)
{
    if (strategy.t < 1)
        throw MalformedStrategy("strategy needs at least one player");
    if (strategy.n != family.n)
        throw MalformedStrategy("strategy is for n = " + std::to_string(strategy.n) + " but family has n = "
                                + std::to_string(family.n));
    if (strategy.n * strategy.t > max_tuple_bits)
        throw UnsupportedSize("n * t = " + std::to_string(strategy.n * strategy.t) + " exceeds "
                              + std::to_string(max_tuple_bits) + " tuple bits");
    if (strategy.tables.size() != strategy.t)
        throw MalformedStrategy("expected " + std::to_string(strategy.t) + " tables, got "
                                + std::to_string(strategy.tables.size()));
    for (std::size_t i = 0; i < strategy.tables.size(); ++i) {
        const auto & table = strategy.tables[i];
        if (table.size() != strategy.table_size())
            throw MalformedStrategy("table " + std::to_string(i) + " has " + std::to_string(table.size())
                                    + " entries, expected " + std::to_string(strategy.table_size()));
        for (auto entry : table)
            if (entry >= family.r())
                throw MalformedStrategy("table " + std::to_string(i) + " references family index "
                                        + std::to_string(entry) + " but r = " + std::to_string(family.r()));
    }
}

Strategy permute_players(const Strategy & strategy, std::span<const unsigned> order)
{
    const unsigned t = strategy.t, n = strategy.n;
    if (order.size() != t)
        throw std::invalid_argument("permute_players: order must list every player once");
    std::vector<bool> seen(t, false);
    for (auto p : order) {
        if (p >= t || seen[p])
            throw std::invalid_argument("permute_players: order must be a permutation");
        seen[p] = true;
    }

    Strategy out{t, n, {}};
    out.tables.assign(t, std::vector<FamilyIndex>(strategy.table_size()));
    // new tuple y has y_j = x_{order[j]}
    const TupleIndex tuples = TupleIndex{1} << (n * t);
    std::vector<Point> x(t), y(t);
    for (TupleIndex idx = 0; idx < tuples; ++idx) {
        for (unsigned j = 0; j < t; ++j)
            y[j] = coordinate(idx, j, t, n);
        for (unsigned j = 0; j < t; ++j)
            x[order[j]] = y[j];
        const TupleIndex old_idx = flatten(x, n);
        for (unsigned j = 0; j < t; ++j)
            out.tables[j][drop_coordinate(idx, j, t, n)] = strategy.tables[order[j]][drop_coordinate(old_idx, order[j], t, n)];
    }
    return out;
}

bool wins_at(const Strategy & strategy, const WinningFamily & family, TupleIndex x)
{
    const unsigned t = strategy.t, n = strategy.n;
    for (unsigned i = 0; i < t; ++i)
        if (! family.contains(strategy.tables[i][drop_coordinate(x, i, t, n)], coordinate(x, i, t, n)))
            return false;
    return true;
}

PointSet winning_set(const Strategy & strategy, const WinningFamily & family)
{
    validate(strategy, family);
    const unsigned t = strategy.t, n = strategy.n;
    const TupleIndex tuples = TupleIndex{1} << (n * t);
    PointSet out{t, n, Bitset(tuples), {}};
    for (TupleIndex x = 0; x < tuples; ++x)
        if (wins_at(strategy, family, x))
            out.members.set(x);
    out.measure = dyadic(out.members.count(), n * t);
    return out;
}

namespace {

Bitset inductive_members(const Strategy & strategy, const WinningFamily & family)
{
    const unsigned t = strategy.t, n = strategy.n;
    const std::size_t ground = std::size_t{1} << n;
    if (t == 1)
        return family.sets[strategy.tables[0][0]];

    // X1 = B^{t-1} (players 1..t-1), X2 = B (player t)
    const std::size_t inner_tuples = std::size_t{1} << (n * (t - 1));
    Bitset out(inner_tuples * ground);
    Strategy inner{t - 1, n, {}};
    inner.tables.assign(t - 1, std::vector<FamilyIndex>(inner.table_size()));
    for (Point last = 0; last < ground; ++last) {
        // f_1(last): each of the first t-1 players sees `last` as her final visible coordinate
        for (unsigned i = 0; i + 1 < t; ++i)
            for (std::size_t v = 0; v < inner.table_size(); ++v)
                inner.tables[i][v] = strategy.tables[i][(v << n) | last];
        const Bitset inner_set = inductive_members(inner, family);
        inner_set.for_each([&](std::size_t y) {
            // f_2(y): the last player sees the first t-1 coordinates
            if (family.contains(strategy.tables[t - 1][y], last))
                out.set((y << n) | last);
        });
    }
    return out;
}

} // namespace

PointSet winning_set_inductive(const Strategy & strategy, const WinningFamily & family)
{
    validate(strategy, family);
    PointSet out{strategy.t, strategy.n, inductive_members(strategy, family), {}};
    out.measure = dyadic(out.members.count(), strategy.n * strategy.t);
    return out;
}

Rational success_probability(const Strategy & strategy, const WinningFamily & family)
{
    return winning_set(strategy, family).measure;
}

} // namespace hatlab::game
