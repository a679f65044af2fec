#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mincw {

/// Fixed-size bit vector used for point-set membership and subspace incidence.
/// Comparisons follow "index-word" order: interpreting a set as its sorted
/// index sequence, the set whose sequence is lexicographically smaller compares
/// less. Equivalently, at the first index where the two vectors differ, the
/// one containing that index is the smaller.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(uint32_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    uint32_t size() const { return n_; }
    bool empty_bits() const { return count() == 0; }

    bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(uint32_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(uint32_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    uint64_t count() const {
        uint64_t c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    BitVec& operator&=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitVec& operator|=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    BitVec& andnot_assign(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool is_subset_of(const BitVec& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    /// -1 if *this is the smaller index word, 0 if equal, +1 otherwise.
    int cmp_indexword(const BitVec& o) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t d = w_[i] ^ o.w_[i];
            if (d) {
                uint64_t low = d & (~d + 1);
                return (w_[i] & low) ? -1 : 1;
            }
        }
        return 0;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t x = w_[i];
            while (x) {
                f(uint32_t(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<uint32_t> indices() const {
        std::vector<uint32_t> out;
        out.reserve(count());
        for_each([&](uint32_t i) { out.push_back(i); });
        return out;
    }

    static BitVec from_indices(uint32_t nbits, const std::vector<uint32_t>& idx) {
        BitVec b(nbits);
        for (uint32_t i : idx) b.set(i);
        return b;
    }

    uint64_t word(size_t i) const { return w_[i]; }
    size_t nwords() const { return w_.size(); }

private:
    uint32_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace mincw
