// AVX2 variants of the bitset kernels.  This translation unit is compiled
// with -mavx2 -mpopcnt; nothing here may run before dispatch has confirmed
// the CPU supports AVX2.

#include "hatlab/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace hatlab::kernels::detail {

namespace {

constexpr std::size_t lanes = 4;

// Nibble-lookup popcount (Mula): per-byte counts via vpshufb, then summed
// into 64-bit lanes with vpsadbw.
inline __m256i popcount_bytes(__m256i v)
{
    const __m256i lookup = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::size_t horizontal_sum(__m256i acc)
{
    alignas(32) std::uint64_t parts[lanes];
    _mm256_store_si256(reinterpret_cast<__m256i *>(parts), acc);
    return static_cast<std::size_t>(parts[0] + parts[1] + parts[2] + parts[3]);
}

inline __m256i load(const std::uint64_t * p)
{
    return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p));
}

inline void store(std::uint64_t * p, __m256i v)
{
    _mm256_storeu_si256(reinterpret_cast<__m256i *>(p), v);
}

std::size_t popcount_avx2(const std::uint64_t * a, std::size_t words)
{
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + lanes <= words; i += lanes)
        acc = _mm256_add_epi64(acc, popcount_bytes(load(a + i)));
    std::size_t total = horizontal_sum(acc);
    for (; i < words; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_avx2(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + lanes <= words; i += lanes)
        acc = _mm256_add_epi64(acc, popcount_bytes(_mm256_and_si256(load(a + i), load(b + i))));
    std::size_t total = horizontal_sum(acc);
    for (; i < words; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool intersects_avx2(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t i = 0;
    for (; i + lanes <= words; i += lanes)
        if (! _mm256_testz_si256(load(a + i), load(b + i)))
            return true;
    for (; i < words; ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

bool is_subset_avx2(const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t i = 0;
    // testc(b, a) is 1 iff a & ~b == 0
    for (; i + lanes <= words; i += lanes)
        if (! _mm256_testc_si256(load(b + i), load(a + i)))
            return false;
    for (; i < words; ++i)
        if (a[i] & ~b[i])
            return false;
    return true;
}

void and_into_avx2(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t i = 0;
    for (; i + lanes <= words; i += lanes)
        store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < words; ++i)
        dst[i] = a[i] & b[i];
}

void or_into_avx2(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t i = 0;
    for (; i + lanes <= words; i += lanes)
        store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < words; ++i)
        dst[i] = a[i] | b[i];
}

void andnot_into_avx2(std::uint64_t * dst, const std::uint64_t * a, const std::uint64_t * b, std::size_t words)
{
    std::size_t i = 0;
    // andnot(x, y) computes ~x & y
    for (; i + lanes <= words; i += lanes)
        store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
    for (; i < words; ++i)
        dst[i] = a[i] & ~b[i];
}

} // namespace

extern const BitsetKernels avx2_table{
    "avx2",
    popcount_avx2,
    and_popcount_avx2,
    intersects_avx2,
    is_subset_avx2,
    and_into_avx2,
    or_into_avx2,
    andnot_into_avx2,
};

} // namespace hatlab::kernels::detail
