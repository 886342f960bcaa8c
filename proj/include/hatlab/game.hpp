#pragma once

// The general game of "points on foreheads": each of t players receives a
// uniform point of B = {0,1}^n, sees everybody else's point, and names one
// set from a fixed winning family W(1).  The collective wins iff every player
// named a set containing her own point.
//
// Conventions used throughout the library:
//   * coordinate i (1-based) of a point is bit i-1 of its integer value;
//   * a tuple (x_1, ..., x_t) in B^t is flattened big-endian in player order,
//     index = ((x_1 * 2^n + x_2) * 2^n + ...) + x_t;
//   * player i's table is indexed by the flattened tuple x^{-i}, i.e. the
//     tuple with coordinate i deleted and the player order preserved.

#include "hatlab/bitset.hpp"
#include "hatlab/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hatlab {

class Rng;

namespace game {

using Point = std::uint32_t;
using TupleIndex = std::uint64_t;
using FamilyIndex = std::uint16_t;

inline constexpr unsigned max_tuple_bits = 26;

/// x_1 x_2 ... x_n as a 0/1 string (coordinate order, not bit order).
std::string point_string(Point x, unsigned n);
Point parse_point(std::string_view bits);

inline Point complement(Point x, unsigned n) { return x ^ ((Point{1} << n) - 1); }

TupleIndex flatten(std::span<const Point> points, unsigned n);
std::vector<Point> unflatten(TupleIndex index, unsigned t, unsigned n);

/// Coordinate `player` (0-based) of a flattened tuple.
inline Point coordinate(TupleIndex index, unsigned player, unsigned t, unsigned n)
{
    return static_cast<Point>((index >> (n * (t - 1 - player))) & ((TupleIndex{1} << n) - 1));
}

/// x^{-player}: the (t-1)-tuple with coordinate `player` removed.
inline TupleIndex drop_coordinate(TupleIndex index, unsigned player, unsigned t, unsigned n)
{
    const unsigned low_bits = n * (t - 1 - player);
    const TupleIndex low = index & ((TupleIndex{1} << low_bits) - 1);
    const TupleIndex high = index >> (low_bits + n);
    return (high << low_bits) | low;
}

/// Inverse of drop_coordinate: put `value` back as coordinate `player`.
inline TupleIndex insert_coordinate(TupleIndex visible, unsigned player, Point value, unsigned t, unsigned n)
{
    const unsigned low_bits = n * (t - 1 - player);
    const TupleIndex low = visible & ((TupleIndex{1} << low_bits) - 1);
    const TupleIndex high = visible >> low_bits;
    return (((high << n) | value) << low_bits) | low;
}

enum class FamilyKind
{
    dictator,
    intersecting,
    monotone,
};

std::string_view to_string(FamilyKind kind);
/// Accepts dictator/dict, intersecting/int, monotone/mono.
FamilyKind parse_family_kind(std::string_view text);

/// The first-level winning sets W(1), each a bitmask over the 2^n points.
struct WinningFamily
{
    FamilyKind kind;
    unsigned n = 0;
    std::vector<Bitset> sets;

    std::size_t r() const { return sets.size(); }
    std::size_t ground_size() const { return std::size_t{1} << n; }
    bool contains(std::size_t set, Point x) const { return sets[set].test(x); }
};

/// Numeric order of masks read as integers with point 2^n - 1 most significant.
bool mask_less(const Bitset & a, const Bitset & b);

/// All sets of the given kind, sorted by mask_less.  Dictators are listed by
/// coordinate, which coincides with mask order.  Intersecting and monotone
/// kinds are exhaustive and limited to n <= 4.
WinningFamily enumerate_family(FamilyKind kind, unsigned n);

inline constexpr unsigned max_dictator_n = 20;
inline constexpr unsigned max_enumerated_n = 4;

struct Strategy
{
    unsigned t = 0;
    unsigned n = 0;
    /// tables[i][x^{-i}] = family index chosen by player i.
    std::vector<std::vector<FamilyIndex>> tables;

    std::size_t table_size() const { return std::size_t{1} << (n * (t - 1)); }
};

/// Every player picks `index` regardless of what she sees.
Strategy constant_strategy(unsigned t, unsigned n, FamilyIndex index);
Strategy random_strategy(unsigned t, unsigned n, std::size_t r, Rng & rng);

/// Throws MalformedStrategy if shapes or indices do not fit the family.
void validate(const Strategy & strategy, const WinningFamily & family);

/// Reorders players: new player j is old player order[j].
Strategy permute_players(const Strategy & strategy, std::span<const unsigned> order);

struct PointSet
{
    unsigned t = 0;
    unsigned n = 0;
    Bitset members;
    Rational measure;
};

/// {x in B^t : x_i in f_i(x^{-i}) for every i}, from the t-tuple definition.
PointSet winning_set(const Strategy & strategy, const WinningFamily & family);

/// Same set, built by the inductive split B^t = B^{t-1} x B: the first t-1
/// players form a strategy for B^{t-1} parameterized by x_t.
PointSet winning_set_inductive(const Strategy & strategy, const WinningFamily & family);

Rational success_probability(const Strategy & strategy, const WinningFamily & family);

/// Membership of a single tuple, without materializing the set.
bool wins_at(const Strategy & strategy, const WinningFamily & family, TupleIndex x);

} // namespace game
} // namespace hatlab
