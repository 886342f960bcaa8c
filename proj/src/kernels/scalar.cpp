#include "hatlab/kernels.hpp"

#include <bit>

namespace hatlab::kernels {

namespace {

std::size_t popcount_scalar(const std::uint64_t * a, std::size_t words)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < words; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_scalar(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < words; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool intersects_scalar(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    for (std::size_t i = 0; i < words; ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

bool is_subset_scalar(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    for (std::size_t i = 0; i < words; ++i)
        if (a[i] & ~b[i])
            return false;
    return true;
}

void and_into_scalar(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    for (std::size_t i = 0; i < words; ++i)
        dst[i] = a[i] & b[i];
}

void or_into_scalar(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    for (std::size_t i = 0; i < words; ++i)
        dst[i] = a[i] | b[i];
}

void andnot_into_scalar(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    for (std::size_t i = 0; i < words; ++i)
        dst[i] = a[i] & ~b[i];
}

constexpr BitsetKernels scalar_table{
    "scalar",
    popcount_scalar,
    and_popcount_scalar,
    intersects_scalar,
    is_subset_scalar,
    and_into_scalar,
    or_into_scalar,
    andnot_into_scalar,
};

} // namespace

const BitsetKernels & scalar()
{
    return scalar_table;
}

} // namespace hatlab::kernels
