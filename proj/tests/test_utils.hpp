#pragma once

#include <random>

#include "mincw/code.hpp"

namespace mincw::testutil {

/// Random projective spanning [n,k]_q code: a uniformly drawn n-subset of the
/// point set, redrawn until it spans.
inline LinearCode random_projective_code(int q, int k, int n, std::mt19937& rng) {
    auto geom = Geometry::get(q, k);
    const uint32_t npts = geom->num_points();
    std::vector<uint32_t> idx(npts);
    for (uint32_t i = 0; i < npts; ++i) idx[i] = i;
    while (true) {
        std::shuffle(idx.begin(), idx.end(), rng);
        BitVec mask(npts);
        for (int i = 0; i < n; ++i) mask.set(idx[size_t(i)]);
        if (geom->section_rank(mask, k) == k) return code_from_points(Field::get(q), k, mask);
    }
}

struct CorpusParams {
    int q, k;
    int n_lo, n_hi;
};

/// Mixed corpus over small fields; q^k <= 2^12 throughout.
template <class Fn>
void for_random_codes(int per_shape, uint32_t seed, Fn&& fn) {
    std::mt19937 rng(seed);
    const CorpusParams shapes[] = {
        {2, 2, 2, 3},  {2, 3, 3, 7},  {2, 4, 4, 15}, {2, 5, 5, 20},
        {3, 2, 2, 4},  {3, 3, 3, 13}, {3, 4, 4, 20}, {3, 5, 5, 24},
        {4, 2, 2, 5},  {4, 3, 3, 18}, {4, 4, 4, 24}, {4, 5, 5, 28},
    };
    for (const auto& s : shapes) {
        std::uniform_int_distribution<int> dn(s.n_lo, s.n_hi);
        for (int t = 0; t < per_shape; ++t) {
            int n = dn(rng);
            fn(random_projective_code(s.q, s.k, n, rng));
        }
    }
}

}  // namespace mincw::testutil
