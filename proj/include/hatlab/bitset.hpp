#pragma once

#include "hatlab/kernels.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hatlab {

/// Fixed-size dynamic bitset over [0, size()).  Bits past size() in the last
/// word are always zero, so word-level kernels never see garbage.
class Bitset
{
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

    void set_all()
    {
        for (auto & w : words_)
            w = ~std::uint64_t{0};
        trim();
    }
    void clear()
    {
        for (auto & w : words_)
            w = 0;
    }

    std::size_t count() const { return kernels::active().popcount(words_.data(), words_.size()); }
    bool none() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }
    bool any() const { return ! none(); }

    std::size_t and_count(const Bitset & other) const
    {
        return kernels::active().and_popcount(words_.data(), other.words_.data(), words_.size());
    }
    bool intersects(const Bitset & other) const
    {
        return kernels::active().intersects(words_.data(), other.words_.data(), words_.size());
    }
    bool is_subset_of(const Bitset & other) const
    {
        return kernels::active().is_subset(words_.data(), other.words_.data(), words_.size());
    }

    Bitset & operator&=(const Bitset & other)
    {
        kernels::active().and_into(words_.data(), words_.data(), other.words_.data(), words_.size());
        return *this;
    }
    Bitset & operator|=(const Bitset & other)
    {
        kernels::active().or_into(words_.data(), words_.data(), other.words_.data(), words_.size());
        return *this;
    }
    Bitset & subtract(const Bitset & other)
    {
        kernels::active().andnot_into(words_.data(), words_.data(), other.words_.data(), words_.size());
        return *this;
    }

    // this = a & b / a & ~b without reallocating
    void assign_and(const Bitset & a, const Bitset & b)
    {
        kernels::active().and_into(words_.data(), a.words_.data(), b.words_.data(), words_.size());
    }
    void assign_andnot(const Bitset & a, const Bitset & b)
    {
        kernels::active().andnot_into(words_.data(), a.words_.data(), b.words_.data(), words_.size());
    }

    friend Bitset operator&(Bitset a, const Bitset & b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset & b) { return a |= b; }

    std::size_t first() const { return next(0); }

    /// Smallest set index >= from, or npos.
    std::size_t next(std::size_t from) const
    {
        if (from >= bits_)
            return npos;
        std::size_t w = from >> 6;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (word)
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            if (++w == words_.size())
                return npos;
            word = words_[w];
        }
    }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                f((w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const Bitset &, const Bitset &) = default;

    /// Total order: the set holding the lowest differing element is smaller.
    friend bool lex_less(const Bitset & a, const Bitset & b)
    {
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            if (a.words_[w] == b.words_[w])
                continue;
            std::uint64_t diff = a.words_[w] ^ b.words_[w];
            return (a.words_[w] >> std::countr_zero(diff)) & 1u;
        }
        return false;
    }

private:
    void trim()
    {
        if (bits_ & 63)
            words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace hatlab
