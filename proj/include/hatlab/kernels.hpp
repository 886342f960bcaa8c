#pragma once

// Word-level bitset kernels.
//
// Every routine operates on arrays of 64-bit words of equal length.  The
// scalar table is the reference; vector variants must agree with it bit for
// bit (see tests/test_kernels.cpp).  The active table is chosen once at
// startup from the CPU's feature flags and can be pinned with the
// HATLAB_SIMD environment variable ("scalar" or "avx2").

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hatlab::kernels {

struct BitsetKernels
{
    const char * name;

    std::size_t (*popcount)(const std::uint64_t * a, std::size_t words);
    std::size_t (*and_popcount)(const std::uint64_t * a, const std::uint64_t * b, std::size_t words);
    bool (*intersects)(const std::uint64_t * a, const std::uint64_t * b, std::size_t words);
    // true iff a & ~b == 0
    bool (*is_subset)(const std::uint64_t * a, const std::uint64_t * b, std::size_t words);

    void (*and_into)(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words);
    void (*or_into)(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words);
    // dst = a & ~b
    void (*andnot_into)(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words);
};

const BitsetKernels & scalar();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const BitsetKernels * avx2();

// The table used by Bitset and everything built on it.
const BitsetKernels & active();

// Pins the active table by name; returns false (and changes nothing) if the
// variant is unavailable on this machine.
bool select(std::string_view name);

} // namespace hatlab::kernels
