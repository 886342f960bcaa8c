#include "hatlab/solver.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/rng.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace hatlab::solver {

using game::FamilyIndex;
using game::Point;
using game::Strategy;
using game::TupleIndex;
using game::WinningFamily;

std::string_view to_string(SolveMethod method)
{
    switch (method) {
    case SolveMethod::exhaustive: return "exhaustive";
    case SolveMethod::best_response_exact: return "best-response-exact";
    case SolveMethod::local_search: return "local-search";
    }
    return "?";
}

PartitionView partition_from_table(std::span<const FamilyIndex> table, std::size_t r, unsigned n)
{
    PartitionView view{n, 2, std::vector<Bitset>(r, Bitset(table.size()))};
    for (std::size_t y = 0; y < table.size(); ++y) {
        if (table[y] >= r)
            throw MalformedStrategy("table entry " + std::to_string(table[y]) + " out of range for r = "
                                    + std::to_string(r));
        view.cells[table[y]].set(y);
    }
    return view;
}

namespace {

void check_partition(const PartitionView & partition, const WinningFamily & family)
{
    if (partition.t != 2)
        throw MalformedPartition("best_response_value is defined for the two-player split only");
    if (partition.n != family.n)
        throw MalformedPartition("partition and family disagree on n");
    if (partition.cells.size() != family.r())
        throw MalformedPartition("expected one cell per family set (" + std::to_string(family.r()) + "), got "
                                 + std::to_string(partition.cells.size()));
    const std::size_t ground = family.ground_size();
    Bitset seen(ground);
    for (const auto & cell : partition.cells) {
        if (cell.size() != ground)
            throw MalformedPartition("cell is not a subset of B");
        if (cell.intersects(seen))
            throw MalformedPartition("cells are not disjoint");
        seen |= cell;
    }
    if (seen.count() != ground)
        throw MalformedPartition("cells do not cover B");
}

// Per-x_2 union U_{x_2} of the cells whose family set contains x_2, and the
// pointwise best reply to it.
template <typename Visit>
void for_each_reply(const PartitionView & partition, const WinningFamily & family, Visit && visit)
{
    const std::size_t ground = family.ground_size();
    Bitset reach(ground);
    for (Point x2 = 0; x2 < ground; ++x2) {
        reach.clear();
        for (std::size_t i = 0; i < family.r(); ++i)
            if (family.contains(i, x2))
                reach |= partition.cells[i];
        std::size_t best = 0, best_count = 0;
        for (std::size_t j = 0; j < family.r(); ++j) {
            std::size_t c = family.sets[j].and_count(reach);
            if (j == 0 || c > best_count) {
                best = j;
                best_count = c;
            }
        }
        visit(x2, static_cast<FamilyIndex>(best), best_count);
    }
}

} // namespace

Rational best_response_value(const PartitionView & partition, const WinningFamily & family)
{
    check_partition(partition, family);
    std::uint64_t total = 0;
    for_each_reply(partition, family, [&](Point, FamilyIndex, std::size_t count) { total += count; });
    return dyadic(total, 2 * family.n);
}

std::vector<FamilyIndex> best_response_table(const PartitionView & partition, const WinningFamily & family)
{
    check_partition(partition, family);
    std::vector<FamilyIndex> table(family.ground_size());
    for_each_reply(partition, family, [&](Point x2, FamilyIndex j, std::size_t) { table[x2] = j; });
    return table;
}

namespace {

// Exact solver for the recursion
//   best(1, U) = max_j |W_j n U|
//   best(L, U) = max over tables f: B^{L-1} -> [r] of sum_x best(L-1, U_x(f)),
//   U_x(f) = { y in B^{L-1} : (y, x) in U and x in W_{f(y)} },
// over masks U of B^L packed into one 64-bit word (so 2^{nL} <= 64).
class BestResponseEngine
{
public:
    BestResponseEngine(const WinningFamily & family, unsigned t) :
        n_(family.n), r_(family.r()), t_(t), ground_(std::size_t{1} << family.n)
    {
        for (const auto & set : family.sets)
            masks_.push_back(set.words()[0]);
        memo_.resize(t);
        for (unsigned level = 2; level < t; ++level) {
            const std::size_t bits = std::size_t{1} << (n_ * level);
            if (bits <= 16)
                memo_[level].assign(std::size_t{1} << bits, -1);
        }
    }

    std::size_t table_size(unsigned level) const { return std::size_t{1} << (n_ * (level - 1)); }

    /// Number of tables at `level` (r^{2^{n(level-1)}}), saturating.
    std::uint64_t table_count(unsigned level) const
    {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < table_size(level); ++i) {
            if (count > ~std::uint64_t{0} / r_)
                return ~std::uint64_t{0};
            count *= r_;
        }
        return count;
    }

    void decode(std::uint64_t index, std::vector<FamilyIndex> & table) const
    {
        for (std::size_t i = table.size(); i-- > 0;) {
            table[i] = static_cast<FamilyIndex>(index % r_);
            index /= r_;
        }
    }

    bool advance(std::vector<FamilyIndex> & table) const
    {
        for (std::size_t i = table.size(); i-- > 0;) {
            if (++table[i] < r_)
                return true;
            table[i] = 0;
        }
        return false;
    }

    std::uint64_t slice(std::uint64_t u, const std::vector<FamilyIndex> & table, Point x) const
    {
        std::uint64_t out = 0;
        for (std::size_t y = 0; y < table.size(); ++y)
            if (((u >> ((y << n_) | x)) & 1u) && ((masks_[table[y]] >> x) & 1u))
                out |= std::uint64_t{1} << y;
        return out;
    }

    /// slice() of the whole of B^level, for the outermost level where the
    /// mask would not fit in a word.
    std::uint64_t slice_all(const std::vector<FamilyIndex> & table, Point x) const
    {
        std::uint64_t out = 0;
        for (std::size_t y = 0; y < table.size(); ++y)
            if ((masks_[table[y]] >> x) & 1u)
                out |= std::uint64_t{1} << y;
        return out;
    }

    std::uint64_t top_value(const std::vector<FamilyIndex> & table)
    {
        std::uint64_t total = 0;
        for (Point x = 0; x < ground_; ++x)
            total += best(t_ - 1, slice_all(table, x));
        return total;
    }

    std::uint64_t table_value(unsigned level, std::uint64_t u, const std::vector<FamilyIndex> & table)
    {
        std::uint64_t total = 0;
        for (Point x = 0; x < ground_; ++x)
            total += best(level - 1, slice(u, table, x));
        return total;
    }

    std::uint64_t best(unsigned level, std::uint64_t u)
    {
        if (u == 0)
            return 0;
        if (level == 1) {
            std::uint64_t top = 0;
            for (auto m : masks_)
                top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(std::popcount(m & u)));
            return top;
        }
        auto & memo = memo_[level];
        if (! memo.empty() && memo[u] >= 0)
            return static_cast<std::uint64_t>(memo[u]);

        const std::uint64_t ceiling = static_cast<std::uint64_t>(std::popcount(u));
        std::vector<FamilyIndex> table(table_size(level), 0);
        std::uint64_t top = 0;
        do {
            top = std::max(top, table_value(level, u, table));
        } while (top < ceiling && advance(table));

        if (! memo.empty())
            memo[u] = static_cast<std::int64_t>(top);
        return top;
    }

    std::vector<FamilyIndex> argbest_table(unsigned level, std::uint64_t u)
    {
        std::vector<FamilyIndex> table(table_size(level), 0), chosen = table;
        std::uint64_t top = 0;
        bool first = true;
        do {
            std::uint64_t v = table_value(level, u, table);
            if (first || v > top) {
                top = v;
                chosen = table;
                first = false;
            }
        } while (advance(table));
        return chosen;
    }

    /// Fills the tables of players 1..level for the context whose later
    /// coordinates flatten to `suffix`, given the chosen table at `level`.
    /// `u` is ignored at the outermost level (everything is reachable there).
    void record(unsigned level, std::uint64_t u, const std::vector<FamilyIndex> & table, TupleIndex suffix,
                Strategy & out)
    {
        const unsigned suffix_bits = n_ * (t_ - level);
        for (std::size_t y = 0; y < table.size(); ++y)
            out.tables[level - 1][(TupleIndex{y} << suffix_bits) | suffix] = table[y];
        for (Point x = 0; x < ground_; ++x) {
            const std::uint64_t sub = level == t_ ? slice_all(table, x) : slice(u, table, x);
            const TupleIndex sub_suffix = (TupleIndex{x} << suffix_bits) | suffix;
            if (level == 2) {
                FamilyIndex best_j = 0;
                int best_count = -1;
                for (std::size_t j = 0; j < r_; ++j) {
                    int c = std::popcount(masks_[j] & sub);
                    if (c > best_count) {
                        best_count = c;
                        best_j = static_cast<FamilyIndex>(j);
                    }
                }
                out.tables[0][sub_suffix] = best_j;
            }
            else {
                record(level - 1, sub, argbest_table(level - 1, sub), sub_suffix, out);
            }
        }
    }

private:
    unsigned n_;
    std::size_t r_;
    unsigned t_;
    std::size_t ground_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::vector<std::int64_t>> memo_;
};

bool engine_fits(unsigned t, unsigned n)
{
    return t >= 2 && n * (t - 1) <= 6;
}

} // namespace

double exact_work_estimate(unsigned t, unsigned n, std::size_t r)
{
    if (t == 1)
        return static_cast<double>(r);
    if (r == 1)
        return std::ldexp(1.0, static_cast<int>(n * t));
    if (! engine_fits(t, n))
        return 0.0;
    double cost = static_cast<double>(r);
    for (unsigned level = 2; level <= t; ++level) {
        double tables = std::pow(static_cast<double>(r), std::ldexp(1.0, static_cast<int>(n * (level - 1))));
        cost = tables * std::ldexp(1.0, static_cast<int>(n)) * cost;
    }
    return cost;
}

SolveResult exact_p(unsigned t, const WinningFamily & family, const ExactOptions & options)
{
    const unsigned n = family.n;
    const std::size_t r = family.r();
    if (t < 1)
        throw std::invalid_argument("exact_p: t must be >= 1");

    SolveResult result;
    if (t == 1) {
        if (n > 16)
            throw UnsupportedSize("exact_p: t = 1 is supported for n <= 16");
        std::size_t best = 0;
        for (std::size_t j = 1; j < r; ++j)
            if (family.sets[j].count() > family.sets[best].count())
                best = j;
        result.witness = game::constant_strategy(1, n, static_cast<FamilyIndex>(best));
        result.value = dyadic(family.sets[best].count(), n);
        result.method = SolveMethod::exhaustive;
        result.work = r;
        return result;
    }

    if (r == 1) {
        if (n * t > game::max_tuple_bits)
            throw UnsupportedSize("exact_p: n * t exceeds the tuple budget");
        result.witness = game::constant_strategy(t, n, 0);
        result.value = game::success_probability(result.witness, family);
        result.method = SolveMethod::exhaustive;
        result.work = 1;
        return result;
    }

    const double estimate = exact_work_estimate(t, n, r);
    const double budget = options.allow_long ? long_work_budget : default_work_budget;
    if (estimate <= 0.0 || estimate > budget)
        throw UnsupportedSize("exact_p: (t = " + std::to_string(t) + ", n = " + std::to_string(n) + ", r = "
                              + std::to_string(r) + ") is outside the exact budget"
                              + (estimate > 0.0 && ! options.allow_long ? " (allow_long may enable it)" : "")
                              + "; use local_search_p for a lower bound");

    // Enumerate the last player's table; the rest reply optimally.
    const unsigned threads = std::max(1u, options.threads);
    BestResponseEngine probe(family, t);
    const std::uint64_t candidates = probe.table_count(t);

    struct Best
    {
        std::uint64_t value = 0;
        std::uint64_t index = 0;
        bool found = false;
    };
    std::vector<Best> per_worker(threads);
    parallel_chunks(candidates, threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
        if (begin >= end)
            return;
        BestResponseEngine engine(family, t);
        std::vector<FamilyIndex> table(engine.table_size(t));
        engine.decode(begin, table);
        Best local;
        for (std::uint64_t k = begin; k < end; ++k) {
            std::uint64_t v = engine.top_value(table);
            if (! local.found || v > local.value)
                local = Best{v, k, true};
            engine.advance(table);
        }
        per_worker[worker] = local;
    });

    Best overall;
    for (const auto & b : per_worker)
        if (b.found && (! overall.found || b.value > overall.value))
            overall = b;

    Strategy witness{t, n, {}};
    witness.tables.assign(t, std::vector<FamilyIndex>(witness.table_size(), 0));
    std::vector<FamilyIndex> table(probe.table_size(t));
    probe.decode(overall.index, table);
    probe.record(t, 0, table, 0, witness);

    result.value = dyadic(overall.value, n * t);
    result.witness = std::move(witness);
    result.method = SolveMethod::best_response_exact;
    result.work = candidates;
    return result;
}

SolveResult exact_p(unsigned t, unsigned n, game::FamilyKind kind, const ExactOptions & options)
{
    return exact_p(t, game::enumerate_family(kind, n), options);
}

namespace {

struct SearchOutcome
{
    Strategy strategy;
    std::uint64_t wins = 0;
    std::uint64_t sweeps = 0;
};

SearchOutcome ascend(Strategy strategy, const WinningFamily & family)
{
    const unsigned t = strategy.t, n = strategy.n;
    const std::size_t ground = family.ground_size();
    const std::size_t visible_count = strategy.table_size();
    Bitset ok(ground);
    std::vector<std::size_t> counts(family.r());
    std::uint64_t sweeps = 0;

    bool changed = true;
    while (changed) {
        changed = false;
        ++sweeps;
        for (unsigned i = 0; i < t; ++i) {
            auto & table = strategy.tables[i];
            for (std::size_t v = 0; v < visible_count; ++v) {
                ok.clear();
                for (Point xi = 0; xi < ground; ++xi) {
                    const TupleIndex x = game::insert_coordinate(v, i, xi, t, n);
                    bool others = true;
                    for (unsigned j = 0; j < t && others; ++j)
                        if (j != i)
                            others = family.contains(strategy.tables[j][game::drop_coordinate(x, j, t, n)],
                                                     game::coordinate(x, j, t, n));
                    if (others)
                        ok.set(xi);
                }
                std::size_t best = table[v];
                std::size_t best_count = family.sets[best].and_count(ok);
                for (std::size_t j = 0; j < family.r(); ++j) {
                    std::size_t c = family.sets[j].and_count(ok);
                    if (c > best_count) {
                        best = j;
                        best_count = c;
                    }
                }
                if (best != table[v]) {
                    table[v] = static_cast<FamilyIndex>(best);
                    changed = true;
                }
            }
        }
    }

    SearchOutcome out;
    out.wins = game::winning_set(strategy, family).members.count();
    out.strategy = std::move(strategy);
    out.sweeps = sweeps;
    return out;
}

bool better(const SearchOutcome & a, const SearchOutcome & b)
{
    if (a.wins != b.wins)
        return a.wins > b.wins;
    return a.strategy.tables < b.strategy.tables;
}

} // namespace

SolveResult local_search_p(unsigned t, const WinningFamily & family, const SearchOptions & options)
{
    const unsigned n = family.n;
    if (t < 2)
        throw std::invalid_argument("local_search_p: t must be >= 2");
    if (n * (t - 1) > 16 || n * t > 22)
        throw UnsupportedSize("local_search_p: needs n(t-1) <= 16 and nt <= 22");
    if (options.restarts == 0)
        throw std::invalid_argument("local_search_p: restarts must be >= 1");

    const unsigned threads = std::max(1u, options.threads);
    std::vector<SearchOutcome> per_worker(threads);
    std::vector<bool> filled(threads, false);
    std::vector<std::uint64_t> sweeps(threads, 0);
    parallel_chunks(options.restarts, threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
        for (std::size_t restart = begin; restart < end; ++restart) {
            Rng rng(counter_word(options.seed, 0x10ca15ea7c4ULL, restart));
            auto outcome = ascend(game::random_strategy(t, n, family.r(), rng), family);
            sweeps[worker] += outcome.sweeps;
            if (! filled[worker] || better(outcome, per_worker[worker])) {
                per_worker[worker] = std::move(outcome);
                filled[worker] = true;
            }
        }
    });

    SolveResult result;
    const SearchOutcome * best = nullptr;
    for (unsigned w = 0; w < threads; ++w) {
        result.work += sweeps[w];
        if (filled[w] && (! best || better(per_worker[w], *best)))
            best = &per_worker[w];
    }
    result.value = dyadic(best->wins, n * t);
    result.witness = best->strategy;
    result.method = SolveMethod::local_search;
    return result;
}

SolveResult local_search_p(unsigned t, unsigned n, game::FamilyKind kind, const SearchOptions & options)
{
    return local_search_p(t, game::enumerate_family(kind, n), options);
}

DominanceChain dominance_chain(unsigned t, unsigned n, const ExactOptions & options)
{
    DominanceChain chain;
    chain.monotone = exact_p(t, n, game::FamilyKind::monotone, options).value;
    chain.intersecting = exact_p(t, n, game::FamilyKind::intersecting, options).value;
    chain.dictator = exact_p(t, n, game::FamilyKind::dictator, options).value;
    return chain;
}

} // namespace hatlab::solver
