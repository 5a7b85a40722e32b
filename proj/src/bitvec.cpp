#include "txdiag/bitvec.hpp"

#include "txdiag/error.hpp"

namespace txdiag {

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_((size + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
    if (value && size % kWordBits != 0) {
        words_.back() &= (Word{1} << (size % kWordBits)) - 1;
    }
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw Error(ErrorCode::Format, "bit string may only contain 0 and 1: " + bits);
        }
    }
    return v;
}

std::size_t BitVector::count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitVector::none() const noexcept {
    for (Word w : words_) {
        if (w != 0) return false;
    }
    return true;
}

bool BitVector::all() const noexcept { return count() == size_; }

std::size_t BitVector::xor_distance(const BitVector& other) const noexcept {
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        n += static_cast<std::size_t>(std::popcount(words_[k] ^ other.words_[k]));
    }
    return n;
}

bool BitVector::is_subset_of(const BitVector& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        if ((words_[k] & ~other.words_[k]) != 0) return false;
    }
    return true;
}

BitVector& BitVector::operator|=(const BitVector& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
}

std::strong_ordering BitVector::operator<=>(const BitVector& other) const {
    if (auto c = size_ <=> other.size_; c != 0) return c;
    // Compare in bit order so that sorting matches the textual rendering.
    for (std::size_t i = 0; i < size_; ++i) {
        const bool a = test(i);
        const bool b = other.test(i);
        if (a != b) return a ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) s[i] = '1';
    }
    return s;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        Word w = words_[k];
        while (w != 0) {
            out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t BitVector::hash() const noexcept {
    // FNV-1a over the words.
    std::size_t h = 1469598103934665603ULL ^ size_;
    for (Word w : words_) {
        h ^= static_cast<std::size_t>(w);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace txdiag
