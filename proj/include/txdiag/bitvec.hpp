#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace txdiag {

// Fixed-length packed bit vector. Bits past size() in the last word are kept
// zero so word-level comparisons and popcounts stay exact.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size, bool value = false);

    static BitVector from_string(const std::string& bits);  // "0101..."

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool test(std::size_t i) const noexcept {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
    }
    void set(std::size_t i, bool value = true) noexcept {
        const Word mask = Word{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }

    std::size_t count() const noexcept;
    bool none() const noexcept;
    bool all() const noexcept;

    // Hamming distance; both operands must have equal size.
    std::size_t xor_distance(const BitVector& other) const noexcept;
    // True iff every set bit of *this is also set in other.
    bool is_subset_of(const BitVector& other) const noexcept;

    BitVector& operator|=(const BitVector& other) noexcept;
    BitVector& operator&=(const BitVector& other) noexcept;
    BitVector& operator^=(const BitVector& other) noexcept;

    friend BitVector operator|(BitVector a, const BitVector& b) noexcept { return a |= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) noexcept { return a &= b; }
    friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }

    bool operator==(const BitVector& other) const = default;
    std::strong_ordering operator<=>(const BitVector& other) const;

    std::string to_string() const;
    std::vector<std::size_t> ones() const;
    std::size_t hash() const noexcept;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

}  // namespace txdiag
