#include "doctest.h"
#include "mincw/geometry.hpp"

using namespace mincw;

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(5, 0, 2) == 1);
    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 1, 4) == 85);
    CHECK(gaussian_binomial(5, 2, 2) == 155);
    CHECK(gaussian_binomial(4, 4, 3) == 1);
    CHECK_THROWS_AS(gaussian_binomial(64, 32, 16), Error);  // overflow reported
    CHECK_THROWS_AS(gaussian_binomial(3, 4, 2), Error);
}

TEST_CASE("binomials") {
    CHECK(binomial(15, 7) == 6435);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial_capped(31, 12, 1000) == 1001);
    CHECK(binomial_capped(15, 7, 100000) == 6435);
}

TEST_CASE("point enumeration and indexing") {
    auto g23 = Geometry::get(2, 3);
    CHECK(g23->num_points() == 7);
    auto g33 = Geometry::get(3, 3);
    CHECK(g33->num_points() == 13);

    // normalization: scale by the inverse of the first nonzero coordinate
    std::vector<uint8_t> v{0, 2, 1};
    CHECK(g33->normalize(v) == std::vector<uint8_t>{0, 1, 2});

    // index round trip and scalar invariance
    for (uint32_t i = 0; i < g33->num_points(); ++i) {
        auto p = g33->point(i);
        CHECK(g33->point_index(p) == i);
    }
    auto g32 = Geometry::get(3, 2);
    std::vector<uint8_t> a{2, 1}, b{1, 2};
    CHECK(g32->point_index(a) == g32->point_index(b));

    std::vector<uint8_t> zero{0, 0, 0};
    CHECK_THROWS_AS(g33->point_index(zero), Error);

    // first point is lexicographically least: (0,...,0,1)
    auto first = g23->point(0);
    CHECK(first[0] == 0);
    CHECK(first[1] == 0);
    CHECK(first[2] == 1);
}

TEST_CASE("hyperplanes") {
    auto g = Geometry::get(2, 3);
    const auto& hps = g->hyperplanes();
    REQUIRE(hps.size() == 7);
    for (const auto& h : hps) CHECK(h.points.count() == 3);  // Fano lines

    // point (1,0,0) lies on the hyperplane with dual (0,1,1)
    std::vector<uint8_t> pt{1, 0, 0}, dual{0, 1, 1};
    uint32_t pi = g->point_index(pt);
    uint32_t hi = g->point_index(dual);
    CHECK(hps[hi].points.test(pi));

    auto g4 = Geometry::get(2, 4);
    CHECK(g4->hyperplanes().size() == 15);
    for (const auto& h : g4->hyperplanes()) CHECK(h.points.count() == 7);
}

TEST_CASE("hyperplane incidence structure") {
    for (auto [q, k] : {std::pair{2, 3}, {2, 4}, {3, 3}, {4, 3}, {2, 5}, {3, 4}}) {
        auto g = Geometry::get(q, k);
        const auto& hps = g->hyperplanes();
        uint64_t npts = gaussian_binomial(k, 1, q);
        CHECK(hps.size() == npts);
        uint64_t per = gaussian_binomial(k - 1, 1, q);
        uint64_t flags = 0;
        for (const auto& h : hps) flags += h.points.count();
        CHECK(flags == npts * per);  // double count of point-hyperplane flags
        // distinct hyperplanes meet in [k-2;1]_q points
        uint64_t meet = gaussian_binomial(k - 2, 1, q);
        for (size_t i = 0; i < hps.size(); i += 3)
            for (size_t j = i + 1; j < hps.size(); j += 5)
                CHECK((hps[i].points & hps[j].points).count() == meet);
    }
}

TEST_CASE("subspace enumeration counts") {
    for (auto [q, k] : {std::pair{2, 3}, {2, 4}, {2, 5}, {3, 3}, {3, 4}, {4, 3}}) {
        auto g = Geometry::get(q, k);
        for (int l = 1; l <= k; ++l) {
            auto subs = g->subspaces_codim(l);
            CHECK(subs.size() == gaussian_binomial(k, l, q));
            uint64_t per = l < k ? gaussian_binomial(k - l, 1, q) : 0;
            for (size_t i = 0; i < subs.size(); i += 7) {
                CHECK(subs[i].points.count() == per);
                CHECK(subs[i].dual_basis.rows == l);
                CHECK(rank(subs[i].dual_basis) == l);
            }
        }
    }
}

TEST_CASE("codim-2 subspaces lie in q+1 hyperplanes") {
    for (auto [q, k] : {std::pair{2, 3}, {2, 4}, {3, 3}}) {
        auto g = Geometry::get(q, k);
        const auto& hps = g->hyperplanes();
        auto subs = g->subspaces_codim(2);
        for (size_t i = 0; i < subs.size(); i += 4) {
            int through = 0;
            for (const auto& h : hps)
                if (subs[i].points.is_subset_of(h.points)) ++through;
            CHECK(through == q + 1);
        }
    }
}

TEST_CASE("codim-k subspace is empty") {
    auto g = Geometry::get(2, 3);
    auto subs = g->subspaces_codim(3);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].points.count() == 0);
}

TEST_CASE("packed tables agree with coordinate arithmetic") {
    for (auto [q, k] : {std::pair{3, 3}, {4, 3}, {5, 2}}) {
        auto g = Geometry::get(q, k);
        REQUIRE(g->has_packed_tables());
        const Field& f = g->field();
        uint32_t qk = uint32_t(g->space_size());
        for (uint32_t a = 0; a < qk; a += 3)
            for (uint32_t b = 0; b < qk; b += 5) {
                auto va = g->unpack(a), vb = g->unpack(b);
                std::vector<uint8_t> s(va.size());
                for (size_t i = 0; i < s.size(); ++i) s[i] = f.add(va[i], vb[i]);
                CHECK(g->add_packed(a, b) == g->pack(s));
            }
    }
}

TEST_CASE("section rank") {
    auto g = Geometry::get(2, 3);
    BitVec all(7);
    for (uint32_t i = 0; i < 7; ++i) all.set(i);
    CHECK(g->section_rank(all, -1) == 3);
    BitVec line = g->hyperplanes()[0].points;
    CHECK(g->section_rank(line, -1) == 2);
    CHECK(g->section_rank(BitVec(7), -1) == 0);

    auto g3 = Geometry::get(3, 3);
    BitVec l3 = g3->hyperplanes()[0].points;
    CHECK(g3->section_rank(l3, -1) == 2);
}
