#include "hatlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hatlab::kernels {

#ifdef HATLAB_WITH_AVX2
namespace detail {
extern const BitsetKernels avx2_table;
}
#endif

namespace {

bool cpu_has_avx2()
{
#if defined(HATLAB_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}

const BitsetKernels * initial_choice()
{
    const char * forced = std::getenv("HATLAB_SIMD");
    if (forced && std::string(forced) == "scalar")
        return &scalar();
    if (const auto * v = avx2())
        return v;
    return &scalar();
}

std::atomic<const BitsetKernels *> & current()
{
    static std::atomic<const BitsetKernels *> table{initial_choice()};
    return table;
}

} // namespace

const BitsetKernels * avx2()
{
#ifdef HATLAB_WITH_AVX2
    static const bool supported = cpu_has_avx2();
    return supported ? &detail::avx2_table : nullptr;
#else
    return nullptr;
#endif
}

const BitsetKernels & active()
{
    return *current().load(std::memory_order_relaxed);
}

bool select(std::string_view name)
{
    if (name == "scalar") {
        current().store(&scalar());
        return true;
    }
    if (name == "avx2") {
        if (const auto * v = avx2()) {
            current().store(v);
            return true;
        }
    }
    return false;
}

} // namespace hatlab::kernels
