#include "hatlab/random_subgraph.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hatlab::random_subgraph {

namespace {

constexpr std::uint64_t rv_stream = 0x5a3b1e;
constexpr std::uint64_t binomial_stream = 0xa1fa55;

} // namespace

std::vector<std::size_t> rv_of(const game::WinningFamily & family, game::Point v)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < family.r(); ++i)
        if (family.contains(i, v))
            out.push_back(i);
    return out;
}

RvSample sample_Rv(const game::WinningFamily & family, std::uint64_t seed)
{
    Rng rng(seed);
    const auto v = static_cast<game::Point>(rng.below(family.ground_size()));
    return RvSample{v, rv_of(family, v)};
}

RvReport check_Rv_statistics(const game::WinningFamily & family, std::size_t samples, std::uint64_t seed,
                             unsigned threads)
{
    const std::size_t r = family.r();
    const std::uint64_t ground = family.ground_size();
    RvReport report;
    report.r = r;
    report.samples = samples;
    report.seed = seed;

    for (std::size_t i = 0; i < r; ++i)
        report.marginals.push_back(ratio(family.sets[i].count(), ground));
    report.covariance.assign(r, std::vector<Rational>(r));
    bool any_pair = false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Rational joint = ratio(family.sets[i].and_count(family.sets[j]), ground);
            report.covariance[i][j] = joint - report.marginals[i] * report.marginals[j];
            if (i != j && (! any_pair || report.covariance[i][j] < report.min_covariance)) {
                report.min_covariance = report.covariance[i][j];
                any_pair = true;
            }
        }
    const Rational half(1, 2);
    report.marginals_half = std::all_of(report.marginals.begin(), report.marginals.end(),
                                        [&](const Rational & m) { return m == half; });
    report.covariances_nonnegative = ! any_pair || report.min_covariance >= 0;

    if (samples == 0)
        return report;
    threads = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(r, 0));
    parallel_chunks(samples, threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
        for (std::size_t s = begin; s < end; ++s) {
            // 2^n divides 2^64, so the low bits are uniform
            const auto v = static_cast<game::Point>(counter_word(seed, rv_stream, s) & (ground - 1));
            for (std::size_t i = 0; i < r; ++i)
                if (family.contains(i, v))
                    ++counts[worker][i];
        }
    });
    for (std::size_t i = 0; i < r; ++i) {
        std::uint64_t c = 0;
        for (const auto & w : counts)
            c += w[i];
        const double observed = static_cast<double>(c) / static_cast<double>(samples);
        const double p = to_double(report.marginals[i]);
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(samples));
        report.sampled_marginals.push_back(observed);
        if (std::abs(observed - p) > 5 * se + 1e-12)
            report.sampling_consistent = false;
    }
    return report;
}

std::string_view to_string(SubsetOrigin origin)
{
    return origin == SubsetOrigin::binomial ? "binomial" : "family-induced";
}

SubsetSample induced_sample(const game::WinningFamily & family, const std::vector<Bitset> & cells, game::Point v)
{
    if (cells.size() != family.r())
        throw std::invalid_argument("induced_sample: need one cell per family set");
    if (cells.empty())
        throw std::invalid_argument("induced_sample: no cells");
    SubsetSample out{Bitset(cells.front().size()), SubsetOrigin::family_induced, v};
    for (std::size_t i : rv_of(family, v))
        out.W |= cells[i];
    return out;
}

SubsetSample binomial_sample(std::size_t vcount, std::uint64_t seed, std::uint64_t index)
{
    SubsetSample out{Bitset(vcount), SubsetOrigin::binomial, 0};
    const std::size_t words = (vcount + 63) / 64;
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t bits = counter_word(seed, binomial_stream, index * words + w);
        for (std::size_t b = 0; b < 64 && w * 64 + b < vcount; ++b)
            if ((bits >> b) & 1u)
                out.W.set(w * 64 + b);
    }
    return out;
}

AlphaStarStarExact alpha_star_star_exact(const graph::Graph & g)
{
    const std::size_t V = g.vcount();
    if (V == 0 || V > max_exact_vertices)
        throw UnsupportedSize("alpha_star_star_exact: needs 1.." + std::to_string(max_exact_vertices)
                              + " vertices (use the Monte Carlo mode)");
    std::vector<std::uint32_t> closed(V, 0);
    for (std::size_t v = 0; v < V; ++v) {
        closed[v] = std::uint32_t{1} << v;
        g.row(v).for_each([&](std::size_t u) { closed[v] |= std::uint32_t{1} << u; });
    }

    // mis[W] over subsets W, branching on the lowest vertex of W
    const std::size_t subsets = std::size_t{1} << V;
    std::vector<std::uint8_t> mis(subsets, 0);
    AlphaStarStarExact out;
    for (std::size_t W = 1; W < subsets; ++W) {
        const auto v = static_cast<std::size_t>(std::countr_zero(W));
        const std::size_t without = W & ~(std::size_t{1} << v);
        std::uint8_t best = mis[without];
        if (! g.has_loop(v))
            best = std::max<std::uint8_t>(best, static_cast<std::uint8_t>(1 + mis[W & ~std::size_t{closed[v]}]));
        mis[W] = best;
        out.total += best;
    }
    out.value = Rational(mpz_class(static_cast<unsigned long>(out.total)),
                         mpz_class(static_cast<unsigned long>(subsets * V)));
    out.value.canonicalize();
    out.alpha_bar = ratio(mis[subsets - 1], V);
    return out;
}

AlphaStarStarEstimate alpha_star_star_mc(const graph::Graph & g, std::size_t samples, std::uint64_t seed,
                                         unsigned threads)
{
    const std::size_t V = g.vcount();
    if (V == 0 || V > graph::max_mis_vertices)
        throw UnsupportedSize("alpha_star_star_mc: needs 1.." + std::to_string(graph::max_mis_vertices) + " vertices");
    if (samples < 2)
        throw std::invalid_argument("alpha_star_star_mc: need at least 2 samples");
    threads = std::max(1u, threads);

    struct Sums
    {
        std::uint64_t sum = 0, squares = 0;
    };
    std::vector<Sums> sums(threads);
    parallel_chunks(samples, threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
        for (std::size_t s = begin; s < end; ++s) {
            const Bitset W = binomial_sample(V, seed, s).W;
            const std::uint64_t size = graph::max_independent_set(g, &W).size;
            sums[worker].sum += size;
            sums[worker].squares += size * size;
        }
    });

    AlphaStarStarEstimate out;
    out.samples = samples;
    out.seed = seed;
    for (const auto & s : sums) {
        out.sum += s.sum;
        out.sum_squares += s.squares;
    }
    const double N = static_cast<double>(samples);
    const double sum = static_cast<double>(out.sum), sq = static_cast<double>(out.sum_squares);
    const double vc = static_cast<double>(V);
    out.mean = sum / (N * vc);
    const double variance = std::max(0.0, (sq - sum * sum / N) / (N - 1)) / (vc * vc);
    out.stderr_ = std::sqrt(variance / N);
    out.exact_mean = Rational(mpz_class(static_cast<unsigned long>(out.sum)),
                              mpz_class(static_cast<unsigned long>(samples * V)));
    out.exact_mean.canonicalize();
    return out;
}

std::string_view to_string(Mode mode)
{
    return mode == Mode::exact ? "exact" : "mc";
}

Gap epsilon_gap(const graph::Graph & g, Mode mode, std::size_t samples, std::uint64_t seed, unsigned threads)
{
    Gap out;
    out.mode = mode;
    if (mode == Mode::exact) {
        out.exact = alpha_star_star_exact(g);
        out.alpha_bar = out.exact.alpha_bar;
        out.exact_gap = out.alpha_bar - out.exact.value;
        out.gap = to_double(out.exact_gap);
        return out;
    }
    out.alpha_bar = graph::max_independent_set(g).alpha_bar;
    out.estimate = alpha_star_star_mc(g, samples, seed, threads);
    out.gap = to_double(out.alpha_bar) - out.estimate.mean;
    out.gap_stderr = out.estimate.stderr_;
    return out;
}

} // namespace hatlab::random_subgraph
