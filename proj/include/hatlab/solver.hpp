#pragma once

#include "hatlab/game.hpp"
#include "hatlab/rational.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hatlab::solver {

enum class SolveMethod
{
    exhaustive,
    best_response_exact,
    local_search,
};

std::string_view to_string(SolveMethod method);

struct SolveResult
{
    Rational value;
    game::Strategy witness;
    SolveMethod method = SolveMethod::exhaustive;
    /// Candidate tables (exact) or best-response sweeps (local search).
    std::uint64_t work = 0;
};

/// Cells V_i = f^{-1}(W_i) of the last player's table over B^{t-1}.
struct PartitionView
{
    unsigned n = 0;
    unsigned t = 2;
    std::vector<Bitset> cells;
};

PartitionView partition_from_table(std::span<const game::FamilyIndex> table, std::size_t r, unsigned n);

/// E_{x_2}[ max_W mu(W n U_{x_2}) ] with U_{x_2} the union of the cells whose
/// set contains x_2: the success probability of the best reply to a fixed
/// second-player table in the two-player game.
Rational best_response_value(const PartitionView & partition, const game::WinningFamily & family);

/// Player 1's optimal table against `partition`; ties go to the lowest index.
std::vector<game::FamilyIndex> best_response_table(const PartitionView & partition,
                                                   const game::WinningFamily & family);

struct ExactOptions
{
    unsigned threads = 1;
    /// Permits enumerations estimated above the default work budget.
    bool allow_long = false;
};

/// p(t, n) for the given family, exactly.  t = 1 and n = 1 are direct; other
/// instances enumerate the last player's table and recurse into the
/// remaining players' best reply, with player 1 answering pointwise.
SolveResult exact_p(unsigned t, unsigned n, game::FamilyKind kind, const ExactOptions & options = {});
SolveResult exact_p(unsigned t, const game::WinningFamily & family, const ExactOptions & options = {});

/// Estimated primitive steps exact_p would take; 0 if it cannot run at all.
double exact_work_estimate(unsigned t, unsigned n, std::size_t r);

inline constexpr double default_work_budget = 2e9;
inline constexpr double long_work_budget = 5e12;

struct SearchOptions
{
    std::uint64_t seed = 0;
    unsigned restarts = 8;
    unsigned threads = 1;
};

/// Alternating pointwise best-response ascent from random tables.  The value
/// is a certified lower bound (it is the exact measure of the witness).
SolveResult local_search_p(unsigned t, unsigned n, game::FamilyKind kind, const SearchOptions & options);
SolveResult local_search_p(unsigned t, const game::WinningFamily & family, const SearchOptions & options);

struct DominanceChain
{
    Rational monotone;
    Rational intersecting;
    Rational dictator;

    bool holds() const { return monotone >= intersecting && intersecting >= dictator; }
};

DominanceChain dominance_chain(unsigned t, unsigned n, const ExactOptions & options = {});

} // namespace hatlab::solver
