#include "hatlab/blockers.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/rng.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace hatlab::blockers {

std::size_t BlockerFamily::size() const
{
    if (product)
        return product->first.size() * product->second.size();
    return listed.size();
}

Blocker BlockerFamily::member(std::size_t i) const
{
    if (! product)
        return listed.at(i);
    const auto & first = product->first.at(i / product->second.size());
    const auto & second = product->second.at(i % product->second.size());
    Blocker b{t, n, {}, false};
    for (Point x : first)
        for (Point y : second)
            b.points.push_back((TupleIndex{x} << n) | y);
    std::sort(b.points.begin(), b.points.end());
    return b;
}

BigInt k_sequence(unsigned d)
{
    if (d < 1 || d > 4)
        throw UnsupportedSize("k_sequence: d must be in [1, 4]");
    BigInt k = 2;
    for (unsigned i = 1; i < d; ++i) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * k.get_ui(), k.get_ui());
        k *= c;
    }
    return k;
}

BlockerFamily base_blockers(unsigned n)
{
    if (n < 1 || n > 20)
        throw UnsupportedSize("base_blockers: n must be in [1, 20]");
    BlockerFamily family;
    family.t = 1;
    family.n = n;
    family.k = 2;
    const Point half = Point{1} << (n - 1);
    for (Point x = 0; x < half; ++x)
        family.listed.push_back(Blocker{1, n, {x, game::complement(x, n)}, false});
    family.beta = 1;
    return family;
}

std::array<Point, lift_tuple_size> tuple_from_parts(const std::array<std::uint32_t, lift_parts> & parts)
{
    std::array<Point, lift_tuple_size> out{};
    std::size_t next = 0;
    for (unsigned a = 0; a < lift_parts; ++a)
        for (unsigned b = a + 1; b < lift_parts; ++b)
            out[next++] = parts[a] | parts[b];
    return out;
}

Construction construct_blockers(unsigned n, std::uint64_t seed, double delta)
{
    if (n < lift_parts || n > 24)
        throw UnsupportedSize("construct_blockers: n must be in [4, 24] (four nonempty parts)");
    if (! (delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("construct_blockers: delta must be in (0, 1)");

    Construction out;
    auto & report = out.report;
    report.target = (Rational(1) - Rational(delta)) / lift_tuple_size;
    const std::uint64_t ground = std::uint64_t{1} << n;

    // smallest vector count reaching the target, and the tuples that takes
    Rational needed = report.target * Rational(mpz_class(std::to_string(ground)));
    mpz_class needed_vectors;
    mpz_cdiv_q(needed_vectors.get_mpz_t(), needed.get_num_mpz_t(), needed.get_den_mpz_t());
    const std::size_t expected_tuples = (needed_vectors.get_ui() + lift_tuple_size - 1) / lift_tuple_size;
    report.stall_limit = 50 * std::max<std::size_t>(1, expected_tuples);

    Rng rng(seed);
    Bitset used(ground);
    std::vector<std::vector<Point>> tuples;
    std::size_t kept_vectors = 0;
    std::size_t consecutive = 0;

    while (kept_vectors < needed_vectors.get_ui()) {
        std::array<std::uint32_t, lift_parts> parts{};
        do {
            parts.fill(0);
            for (unsigned c = 0; c < n; ++c)
                parts[rng.below(lift_parts)] |= std::uint32_t{1} << c;
        } while (std::any_of(parts.begin(), parts.end(), [](std::uint32_t p) { return p == 0; }));

        ++report.proposals;
        const auto tuple = tuple_from_parts(parts);
        const bool fresh = std::none_of(tuple.begin(), tuple.end(), [&](Point y) { return used.test(y); });
        if (! fresh) {
            ++report.rejections;
            if (++consecutive >= report.stall_limit) {
                report.stalled = true;
                break;
            }
            continue;
        }
        consecutive = 0;
        for (Point y : tuple)
            used.set(y);
        kept_vectors += lift_tuple_size;
        tuples.emplace_back(tuple.begin(), tuple.end());
        std::sort(tuples.back().begin(), tuples.back().end());
        report.partitions.push_back(parts);
    }

    report.tuples_kept = tuples.size();
    report.achieved = dyadic(kept_vectors, n);

    const BlockerFamily base = base_blockers(n);
    ProductForm product;
    for (const auto & b : base.listed)
        product.first.emplace_back(b.points.begin(), b.points.end());
    product.second = std::move(tuples);

    auto & family = out.family;
    family.t = 2;
    family.n = n;
    family.k = base.k * lift_tuple_size;
    family.beta = base.beta * report.achieved;
    family.product = std::move(product);
    return out;
}

game::Strategy PartialStrategy::extend(game::FamilyIndex fill) const
{
    game::Strategy s = game::constant_strategy(t, n, fill);
    for (unsigned i = 0; i < t; ++i)
        for (const auto & [visible, choice] : assignments[i])
            s.tables[i][visible] = choice;
    return s;
}

namespace {

constexpr std::uint64_t probe_limit = 50'000'000;

// Dictator coordinates grouped by their column over the second coordinates:
// two coordinates with equal columns are interchangeable as the second
// player's choice.
struct Columns
{
    std::vector<std::uint64_t> patterns;
    std::vector<game::FamilyIndex> representative;
};

Columns columns_of(std::span<const Point> ys, unsigned n)
{
    Columns out;
    for (unsigned c = 0; c < n; ++c) {
        std::uint64_t pattern = 0;
        for (std::size_t j = 0; j < ys.size(); ++j)
            if ((ys[j] >> c) & 1u)
                pattern |= std::uint64_t{1} << j;
        if (std::find(out.patterns.begin(), out.patterns.end(), pattern) == out.patterns.end()) {
            out.patterns.push_back(pattern);
            out.representative.push_back(static_cast<game::FamilyIndex>(c));
        }
    }
    return out;
}

struct PairSearch
{
    bool certified = true;
    std::uint64_t probes = 0;
    bool common_reply_every_probe = true;
    // when not certified: column index per x, dodge coordinate per y
    std::vector<std::size_t> choice;
    std::vector<game::FamilyIndex> dodge;
};

/// rows[i]: mask over ys of the points (xs[i], ys[j]) in A.
PairSearch search_pairs(std::span<const Point> xs, std::span<const std::uint64_t> rows, std::size_t y_count,
                        const Columns & columns, unsigned n)
{
    PairSearch out;
    const Point full = static_cast<Point>((std::uint64_t{1} << n) - 1);
    const std::uint64_t all_y = y_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << y_count) - 1;
    const std::size_t values = columns.patterns.size();

    double combos = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
        combos *= static_cast<double>(values);
    if (combos > static_cast<double>(probe_limit))
        throw UnsupportedSize("verify_blocker: " + std::to_string(static_cast<std::uint64_t>(combos))
                              + " second-player assignments exceeds the probe limit");

    std::vector<std::size_t> choice(xs.size(), 0);
    while (true) {
        ++out.probes;
        std::uint64_t common = all_y;
        for (std::size_t i = 0; i < xs.size(); ++i)
            common &= columns.patterns[choice[i]];
        if (common == 0)
            out.common_reply_every_probe = false;

        bool blocked = false;
        for (std::size_t j = 0; j < y_count && ! blocked; ++j) {
            Point forbidden = 0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (((rows[i] & columns.patterns[choice[i]]) >> j) & 1u)
                    forbidden |= xs[i];
            blocked = forbidden == full;
        }

        if (! blocked) {
            out.certified = false;
            out.choice = choice;
            out.dodge.assign(y_count, 0);
            for (std::size_t j = 0; j < y_count; ++j) {
                Point forbidden = 0;
                for (std::size_t i = 0; i < xs.size(); ++i)
                    if (((rows[i] & columns.patterns[choice[i]]) >> j) & 1u)
                        forbidden |= xs[i];
                out.dodge[j] = static_cast<game::FamilyIndex>(std::countr_one(forbidden));
            }
            return out;
        }

        std::size_t pos = xs.size();
        while (pos > 0) {
            if (++choice[pos - 1] < values)
                break;
            choice[pos - 1] = 0;
            --pos;
        }
        if (pos == 0)
            return out;
    }
}

void check_dictator_family(const game::WinningFamily & family, unsigned n)
{
    if (family.kind != game::FamilyKind::dictator)
        throw std::invalid_argument("verify_blocker: only the dictator (hats) game is supported");
    if (family.n != n)
        throw std::invalid_argument("verify_blocker: blocker and family disagree on n");
}

} // namespace

Verdict verify_blocker(const Blocker & blocker, const game::WinningFamily & family)
{
    check_dictator_family(family, blocker.n);
    const unsigned n = blocker.n;
    Verdict verdict;

    if (blocker.t == 1) {
        for (unsigned j = 0; j < n; ++j) {
            ++verdict.probes;
            bool dodges = std::none_of(blocker.points.begin(), blocker.points.end(),
                                       [&](TupleIndex x) { return (x >> j) & 1u; });
            if (dodges) {
                PartialStrategy partial{1, n, std::vector<std::map<TupleIndex, game::FamilyIndex>>(1)};
                partial.assignments[0][0] = static_cast<game::FamilyIndex>(j);
                verdict.counterexample = std::move(partial);
                return verdict;
            }
        }
        verdict.certified = true;
        return verdict;
    }

    if (blocker.t != 2)
        throw UnsupportedSize("verify_blocker: only t = 1 and t = 2 are supported");

    std::vector<Point> xs, ys;
    for (TupleIndex p : blocker.points) {
        xs.push_back(game::coordinate(p, 0, 2, n));
        ys.push_back(game::coordinate(p, 1, 2, n));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (ys.size() > 64)
        throw UnsupportedSize("verify_blocker: more than 64 distinct second coordinates");

    std::vector<std::uint64_t> rows(xs.size(), 0);
    for (TupleIndex p : blocker.points) {
        auto xi = std::lower_bound(xs.begin(), xs.end(), game::coordinate(p, 0, 2, n)) - xs.begin();
        auto yi = std::lower_bound(ys.begin(), ys.end(), game::coordinate(p, 1, 2, n)) - ys.begin();
        rows[static_cast<std::size_t>(xi)] |= std::uint64_t{1} << yi;
    }

    const Columns columns = columns_of(ys, n);
    PairSearch search = search_pairs(xs, rows, ys.size(), columns, n);
    verdict.probes = search.probes;
    verdict.common_reply_every_probe = search.common_reply_every_probe;
    verdict.certified = search.certified;
    if (! search.certified) {
        // player 1 sees the second coordinate, player 2 the first
        PartialStrategy partial{2, n, std::vector<std::map<TupleIndex, game::FamilyIndex>>(2)};
        for (std::size_t j = 0; j < ys.size(); ++j)
            partial.assignments[0][ys[j]] = search.dodge[j];
        for (std::size_t i = 0; i < xs.size(); ++i)
            partial.assignments[1][xs[i]] = columns.representative[search.choice[i]];
        verdict.counterexample = std::move(partial);
    }
    return verdict;
}

namespace {

bool pairwise_disjoint(const std::vector<std::vector<Point>> & blocks, std::size_t & union_size)
{
    std::vector<Point> all;
    for (const auto & b : blocks)
        all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    union_size = all.size();
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

template <typename Blocks>
bool uniform(const Blocks & blocks, std::size_t size)
{
    return std::all_of(blocks.begin(), blocks.end(), [&](const auto & b) { return b.size() == size; });
}

} // namespace

FamilyVerdict verify_family(const BlockerFamily & family, const game::WinningFamily & winning, unsigned threads)
{
    check_dictator_family(winning, family.n);
    threads = std::max(1u, threads);
    FamilyVerdict out;

    struct Tally
    {
        std::size_t certified = 0, failed = 0;
        std::optional<std::size_t> first_failure;
        bool common = true;
    };
    std::vector<Tally> tallies(threads);

    if (family.product) {
        const auto & first = family.product->first;
        const auto & second = family.product->second;
        std::size_t first_union = 0, second_union = 0;
        const bool first_ok = pairwise_disjoint(first, first_union);
        const bool second_ok = pairwise_disjoint(second, second_union);
        out.disjoint = first_ok && second_ok;
        const std::size_t first_k = first.empty() ? 0 : first.front().size();
        const std::size_t second_k = second.empty() ? 0 : second.front().size();
        out.uniform_size = uniform(first, first_k) && uniform(second, second_k) && first_k * second_k == family.k;
        out.beta = ratio(first_union, std::uint64_t{1} << family.n) * ratio(second_union, std::uint64_t{1} << family.n);

        parallel_chunks(second.size(), threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
            Tally & tally = tallies[worker];
            for (std::size_t j = begin; j < end; ++j) {
                const auto & ys = second[j];
                if (ys.size() > 64)
                    throw UnsupportedSize("verify_family: tuple with more than 64 points");
                const Columns columns = columns_of(ys, family.n);
                const std::uint64_t all_y = ys.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ys.size()) - 1;
                for (std::size_t a = 0; a < first.size(); ++a) {
                    std::vector<Point> xs = first[a];
                    std::sort(xs.begin(), xs.end());
                    std::vector<std::uint64_t> rows(xs.size(), all_y);
                    PairSearch s = search_pairs(xs, rows, ys.size(), columns, family.n);
                    tally.common = tally.common && s.common_reply_every_probe;
                    if (s.certified) {
                        ++tally.certified;
                    }
                    else {
                        ++tally.failed;
                        const std::size_t index = a * second.size() + j;
                        if (! tally.first_failure || index < *tally.first_failure)
                            tally.first_failure = index;
                    }
                }
            }
        });
    }
    else {
        const auto & members = family.listed;
        std::vector<TupleIndex> all;
        for (const auto & b : members)
            all.insert(all.end(), b.points.begin(), b.points.end());
        std::sort(all.begin(), all.end());
        out.disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();
        out.uniform_size = std::all_of(members.begin(), members.end(), [&](const Blocker & b) {
            std::vector<TupleIndex> p = b.points;
            std::sort(p.begin(), p.end());
            return p.size() == family.k && std::adjacent_find(p.begin(), p.end()) == p.end();
        });
        all.erase(std::unique(all.begin(), all.end()), all.end());
        out.beta = dyadic(all.size(), family.n * family.t);

        parallel_chunks(members.size(), threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
            Tally & tally = tallies[worker];
            for (std::size_t i = begin; i < end; ++i) {
                Verdict v = verify_blocker(members[i], winning);
                if (members[i].t == 2)
                    tally.common = tally.common && v.common_reply_every_probe;
                if (v.certified) {
                    ++tally.certified;
                }
                else {
                    ++tally.failed;
                    if (! tally.first_failure)
                        tally.first_failure = i;
                }
            }
        });
    }

    for (const auto & t : tallies) {
        out.certified += t.certified;
        out.failed += t.failed;
        out.common_reply_every_probe = out.common_reply_every_probe && t.common;
        if (t.first_failure && (! out.first_failure || *t.first_failure < *out.first_failure))
            out.first_failure = t.first_failure;
    }
    return out;
}

Rational decrement_bound(std::uint64_t k, const Rational & beta)
{
    if (k < 1)
        throw std::invalid_argument("decrement_bound: k must be >= 1");
    if (beta <= 0 || beta > 1)
        throw std::invalid_argument("decrement_bound: beta must be in (0, 1]");
    mpz_class den = k;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * k + 2);
    Rational out = beta / Rational(den);
    out.canonicalize();
    return out;
}

Rational corollary_bound(std::uint64_t k)
{
    if (k < 1)
        throw std::invalid_argument("corollary_bound: k must be >= 1");
    mpz_class den = k;
    den *= k;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * k + 1);
    Rational out(1, den);
    out.canonicalize();
    return out;
}

namespace {

bool hitting_search(const std::vector<Bitset> & sets, std::vector<std::size_t> & open, std::size_t budget,
                    std::vector<std::size_t> & chosen)
{
    if (open.empty())
        return true;
    if (budget == 0)
        return false;
    // branch on the members of the first set nobody hits yet
    const Bitset & pivot = sets[open.front()];
    for (std::size_t v = pivot.first(); v != Bitset::npos; v = pivot.next(v + 1)) {
        std::vector<std::size_t> rest;
        for (auto i : open)
            if (! sets[i].test(v))
                rest.push_back(i);
        chosen.push_back(v);
        if (hitting_search(sets, rest, budget - 1, chosen))
            return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

GraphBlocker min_graph_blocker(const graph::Graph & g, GraphBlockerTarget target, std::size_t cap)
{
    if (g.vcount() > max_graph_blocker_vertices)
        throw UnsupportedSize("min_graph_blocker: at most " + std::to_string(max_graph_blocker_vertices)
                              + " vertices");
    GraphBlocker out;
    out.alpha = graph::max_independent_set(g).size;

    std::vector<Bitset> sets;
    if (target == GraphBlockerTarget::maximum) {
        sets = graph::independent_sets_of_size(g, out.alpha, cap);
    }
    else {
        graph::for_each_maximal_independent_set(g, [&](const Bitset & s) {
            if (sets.size() == cap)
                throw UnsupportedSize("min_graph_blocker: more than " + std::to_string(cap)
                                      + " maximal independent sets");
            sets.push_back(s);
            return true;
        });
    }
    out.target_sets = sets.size();
    out.witness = Bitset(g.vcount());
    if (sets.empty())
        return out;

    std::vector<std::size_t> chosen;
    for (std::size_t budget = 1;; ++budget) {
        std::vector<std::size_t> open(sets.size());
        for (std::size_t i = 0; i < open.size(); ++i)
            open[i] = i;
        chosen.clear();
        if (hitting_search(sets, open, budget, chosen))
            break;
    }
    out.size = chosen.size();
    for (auto v : chosen)
        out.witness.set(v);
    return out;
}

} // namespace hatlab::blockers
