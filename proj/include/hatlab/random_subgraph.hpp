#pragma once

// Random vertex subsets: the index set R_v = {i : v in W_i} for uniform v,
// and the expected normalized independence number of a uniformly random
// vertex subset (alpha**), exactly by enumeration or by Monte Carlo.

#include "hatlab/game.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/rational.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hatlab::random_subgraph {

struct RvSample
{
    game::Point v = 0;
    /// Ascending family indices.
    std::vector<std::size_t> R;
};

std::vector<std::size_t> rv_of(const game::WinningFamily & family, game::Point v);

/// v uniform on B from the seed.
RvSample sample_Rv(const game::WinningFamily & family, std::uint64_t seed);

struct RvReport
{
    std::size_t r = 0;
    /// P(i in R_v), exact.
    std::vector<Rational> marginals;
    /// cov[i][j] = P(i, j in R_v) - P(i) P(j); the diagonal holds variances.
    std::vector<std::vector<Rational>> covariance;
    bool marginals_half = true;
    bool covariances_nonnegative = true;
    Rational min_covariance;

    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> sampled_marginals;
    /// Every sampled marginal within 5 standard errors of its exact value.
    bool sampling_consistent = true;
};

RvReport check_Rv_statistics(const game::WinningFamily & family, std::size_t samples, std::uint64_t seed,
                             unsigned threads = 1);

enum class SubsetOrigin
{
    binomial,
    family_induced,
};

std::string_view to_string(SubsetOrigin origin);

struct SubsetSample
{
    Bitset W;
    SubsetOrigin origin = SubsetOrigin::binomial;
    /// The point behind a family-induced sample.
    game::Point v = 0;
};

/// W = union of cells[i] over i in R_v.  cells has one entry per family set.
SubsetSample induced_sample(const game::WinningFamily & family, const std::vector<Bitset> & cells, game::Point v);

/// Each vertex in W independently with probability 1/2, from the counter
/// stream keyed by (seed, index).
SubsetSample binomial_sample(std::size_t vcount, std::uint64_t seed, std::uint64_t index);

inline constexpr std::size_t max_exact_vertices = 16;

struct AlphaStarStarExact
{
    Rational value;
    Rational alpha_bar;
    /// Sum over all 2^V subsets W of alpha(G[W]).
    std::uint64_t total = 0;
};

/// E_W[alpha(G[W])] / |V| over all 2^|V| subsets, by a subset recurrence.
AlphaStarStarExact alpha_star_star_exact(const graph::Graph & g);

struct AlphaStarStarEstimate
{
    double mean = 0;
    double stderr_ = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    /// Integer sums of alpha(G[W]) and its square; the mean is exactly
    /// sum / (samples * |V|).
    std::uint64_t sum = 0;
    std::uint64_t sum_squares = 0;
    Rational exact_mean;
};

AlphaStarStarEstimate alpha_star_star_mc(const graph::Graph & g, std::size_t samples, std::uint64_t seed,
                                         unsigned threads = 1);

enum class Mode
{
    exact,
    monte_carlo,
};

std::string_view to_string(Mode mode);

struct Gap
{
    Mode mode = Mode::exact;
    Rational alpha_bar;
    /// Exact mode only.
    AlphaStarStarExact exact;
    Rational exact_gap;
    /// Monte Carlo mode only.
    AlphaStarStarEstimate estimate;
    double gap = 0;
    double gap_stderr = 0;
};

/// alpha_bar(G) - alpha**(G).
Gap epsilon_gap(const graph::Graph & g, Mode mode, std::size_t samples = 10000, std::uint64_t seed = 0,
                unsigned threads = 1);

} // namespace hatlab::random_subgraph
