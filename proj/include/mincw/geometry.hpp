#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "mincw/bitvec.hpp"
#include "mincw/linalg.hpp"

namespace mincw {

/// Exact binomial coefficient; Overflow error instead of wrapping.
uint64_t binomial(uint64_t n, uint64_t k);
/// Binomial capped at `cap` (no overflow error; saturates).
uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap);

/// Gaussian binomial [k; l]_q, the number of l-dimensional (equivalently
/// codimension-l) subspaces of a k-dimensional space over GF(q).
uint64_t gaussian_binomial(int k, int l, uint64_t q);

/// A projective subspace of given codimension. The dual basis rows are
/// linear forms vanishing on the subspace, kept in rref (unique per subspace).
struct Subspace {
    int codim = 0;
    Matrix dual_basis;
    BitVec points;  // incident point indices
};

struct GeometryLimits {
    uint64_t max_space = uint64_t(1) << 24;  // cap on q^k
    uint64_t max_packed = 4096;              // packed add/scale tables built below this
    uint32_t max_hyperplane_cache = 8192;    // full hyperplane list built below this
};

/// The projective space PG(F_q^k): canonical point indexing, incidence,
/// subspace enumeration.
///
/// Point i is the i-th normalized representative (first nonzero coordinate 1)
/// in lexicographic order by coordinate tuple; this ordering is the global
/// point index used by every bit-vector in the library.
class Geometry {
public:
    Geometry(const Field& f, int k, const GeometryLimits& lim = {});

    /// Shared cached instance per (q, k).
    static std::shared_ptr<const Geometry> get(int q, int k);

    const Field& field() const { return f_; }
    int k() const { return k_; }
    uint32_t num_points() const { return npoints_; }
    uint64_t space_size() const { return qk_; }
    const GeometryLimits& limits() const { return lim_; }

    std::span<const uint8_t> point(uint32_t i) const { return {pts_.data() + size_t(i) * k_, size_t(k_)}; }
    uint32_t packed_point(uint32_t i) const { return ppacked_[i]; }

    std::vector<uint8_t> normalize(std::span<const uint8_t> v) const;
    uint32_t point_index(std::span<const uint8_t> v) const;  // ZeroVector on v = 0

    uint32_t pack(std::span<const uint8_t> v) const;
    std::vector<uint8_t> unpack(uint32_t code) const;

    bool has_packed_tables() const { return f_.q() == 2 || !padd_.empty(); }
    uint32_t add_packed(uint32_t a, uint32_t b) const {
        return f_.q() == 2 ? (a ^ b) : padd_[size_t(a) * qk_ + b];
    }
    uint32_t smul_packed(uint8_t c, uint32_t v) const {
        return f_.q() == 2 ? (c ? v : 0) : smul_[size_t(c) * qk_ + v];
    }
    /// Point index of an arbitrary nonzero packed vector.
    uint32_t index_of_packed(uint32_t v) const { return vec2idx_[v]; }

    /// All codimension-1 subspaces, ordered by dual point index. Cached.
    const std::vector<Subspace>& hyperplanes() const;

    /// All codimension-l subspaces via canonical rref dual bases (each exactly
    /// once). Guard on the record count.
    std::vector<Subspace> subspaces_codim(int l, uint64_t guard = 2'000'000) const;

    template <class F>
    void for_each_subspace_codim(int l, F&& fn) const;

    Subspace subspace_from_dual(Matrix dual) const;

    /// Rank of the point representatives selected by `mask`; stops early once
    /// `cap` is reached when cap >= 0.
    int section_rank(const BitVec& mask, int cap = -1) const;

    BitVec incidence_mask(const Matrix& dual_rref) const;

private:
    void enumerate_dual_rref(int l, const std::function<void(Matrix&)>& fn) const;

    const Field& f_;
    int k_;
    uint64_t qk_;
    uint32_t npoints_;
    std::vector<uint8_t> pts_;        // npoints x k
    std::vector<uint32_t> ppacked_;   // packed representative per point
    std::vector<uint32_t> vec2idx_;   // packed nonzero vector -> point index
    std::vector<uint32_t> padd_, smul_;
    GeometryLimits lim_;

    mutable std::mutex hp_mu_;
    mutable std::vector<Subspace> hyperplanes_;
};

template <class F>
void Geometry::for_each_subspace_codim(int l, F&& fn) const {
    enumerate_dual_rref(l, [&](Matrix& m) {
        Subspace s;
        s.codim = l;
        s.points = incidence_mask(m);
        s.dual_basis = std::move(m);
        fn(s);
    });
}

}  // namespace mincw
