#pragma once

// Blockers: point sets in B^t that meet the winning set of every strategy of
// the hats game (dictator family), and the product construction that lifts
// blockers of B to blockers of B^2.

#include "hatlab/game.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace hatlab::blockers {

using game::Point;
using game::TupleIndex;

struct Blocker
{
    unsigned t = 1;
    unsigned n = 0;
    std::vector<TupleIndex> points;
    /// Only set by verification.
    bool certified = false;
};

/// Blockers b x Y for every b in `first` (point sets of B) and Y in `second`.
struct ProductForm
{
    std::vector<std::vector<Point>> first;
    std::vector<std::vector<Point>> second;
};

/// Equal-size disjoint blockers.  Either listed explicitly or, for the
/// constructed t = 2 families, kept in factored product form.
struct BlockerFamily
{
    unsigned t = 1;
    unsigned n = 0;
    std::size_t k = 0;
    Rational beta;
    std::vector<Blocker> listed;
    std::optional<ProductForm> product;

    std::size_t size() const;
    /// i-th member; product members are ordered first-factor-major.
    Blocker member(std::size_t i) const;
};

/// k(1) = 2, k(d+1) = k(d) * C(2k(d), k(d)).  1 <= d <= 4.
BigInt k_sequence(unsigned d);

/// The 2^{n-1} complementary pairs {x, ~x}, x with top coordinate 0.
BlockerFamily base_blockers(unsigned n);

struct ConstructionReport
{
    bool stalled = false;
    std::size_t tuples_kept = 0;
    std::size_t proposals = 0;
    std::size_t rejections = 0;
    std::size_t stall_limit = 0;
    Rational target;
    Rational achieved;
    /// Coordinate masks of the four parts behind each kept tuple.
    std::vector<std::array<std::uint32_t, 4>> partitions;
};

struct Construction
{
    BlockerFamily family;
    ConstructionReport report;
};

/// Number of parts (2k(1)) and vectors per tuple (C(4, 2)) in the lift to B^2.
inline constexpr unsigned lift_parts = 4;
inline constexpr unsigned lift_tuple_size = 6;

/// The six vectors of a tuple: union of two parts, pairs in lexicographic
/// order (01, 02, 03, 12, 13, 23).
std::array<Point, lift_tuple_size> tuple_from_parts(const std::array<std::uint32_t, lift_parts> & parts);

/// Lifts the base pairs of B to blockers b x Y of B^2.  Tuples Y come from
/// uniformly labelled partitions of the n coordinates into four nonempty
/// parts and are kept only if disjoint from every earlier tuple, until the
/// tuples cover a (1 - delta)/6 fraction of B.  A run of rejections longer
/// than the stall limit ends the construction early with report.stalled.
Construction construct_blockers(unsigned n, std::uint64_t seed, double delta);

/// A strategy fragment fixing only the entries that decide membership of a
/// given blocker's points.  assignments[i] maps player i's visible tuple to
/// her dictator.
struct PartialStrategy
{
    unsigned t = 1;
    unsigned n = 0;
    std::vector<std::map<TupleIndex, game::FamilyIndex>> assignments;

    /// Complete to a full strategy, unassigned entries = `fill`.
    game::Strategy extend(game::FamilyIndex fill = 0) const;
};

struct Verdict
{
    bool certified = false;
    std::optional<PartialStrategy> counterexample;
    /// Second-player assignments examined (t = 2) or dictators tried (t = 1).
    std::uint64_t probes = 0;
    /// t = 2: every probe had a y in Y lying in every set the second player
    /// names for the first coordinates of A.
    bool common_reply_every_probe = false;
};

/// Decides whether A meets every winning set of the dictator game on B^t,
/// t in {1, 2}, by searching for a strategy that avoids it.  For t = 2 the
/// search enumerates the second player's choices on A's first coordinates up
/// to interchangeable coordinates, then asks pointwise whether the first
/// player can dodge every point of A at each second coordinate.
Verdict verify_blocker(const Blocker & blocker, const game::WinningFamily & family);

struct FamilyVerdict
{
    std::size_t certified = 0;
    std::size_t failed = 0;
    std::optional<std::size_t> first_failure;
    bool disjoint = false;
    bool uniform_size = false;
    Rational beta;
    bool common_reply_every_probe = true;
};

/// Certifies every member, checks pairwise disjointness and equal sizes, and
/// recomputes the union measure.  Product members are disjoint iff any two
/// distinct members differ in a factor whose blocks are disjoint, which is
/// checked on the factors.
FamilyVerdict verify_family(const BlockerFamily & family, const game::WinningFamily & winning, unsigned threads = 1);

/// beta / (k * 2^{2k+2}): the drop p(t) - p(t+1) guaranteed by r disjoint
/// size-k blockers covering measure beta.
Rational decrement_bound(std::uint64_t k, const Rational & beta);

/// 2^{-2k-1} / k^2, the decrement for beta = 2/k.
Rational corollary_bound(std::uint64_t k);

enum class GraphBlockerTarget
{
    maximum,
    maximal,
};

struct GraphBlocker
{
    std::size_t size = 0;
    Bitset witness;
    std::size_t alpha = 0;
    std::size_t target_sets = 0;
};

inline constexpr std::size_t max_graph_blocker_vertices = 1024;

/// Smallest vertex set meeting every maximum (or every inclusion-maximal)
/// independent set, by iterative deepening over the sets' members.
GraphBlocker min_graph_blocker(const graph::Graph & g, GraphBlockerTarget target = GraphBlockerTarget::maximum,
                               std::size_t cap = 200000);

} // namespace hatlab::blockers
