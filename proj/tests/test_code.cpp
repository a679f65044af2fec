#include <random>

#include "doctest.h"
#include "mincw/code.hpp"
#include "test_utils.hpp"

using namespace mincw;

namespace {

Matrix gen_from_cols(const Field& f, const std::vector<std::vector<uint8_t>>& cols) {
    int k = int(cols[0].size()), n = int(cols.size());
    Matrix g(f, k, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < k; ++r) g.at(r, c) = cols[size_t(c)][size_t(r)];
    return g;
}

LinearCode identity_code(int q, int k) {
    Matrix g(Field::get(q), k, k);
    for (int i = 0; i < k; ++i) g.at(i, i) = 1;
    return LinearCode(Field::get(q), std::move(g));
}

// conic in PG(F_3^3): an MDS [4,3]_3 code
LinearCode conic_code_433() {
    const Field& f = Field::get(3);
    return LinearCode(f, gen_from_cols(f, {{1, 0, 0}, {1, 1, 1}, {1, 2, 1}, {0, 0, 1}}));
}

}  // namespace

TEST_CASE("code construction") {
    LinearCode id = identity_code(2, 4);
    CHECK(id.n() == 4);
    CHECK(id.k() == 4);
    CHECK(id.is_projective());

    LinearCode s = simplex_code(Field::get(2), 3);
    CHECK(s.n() == 7);
    CHECK(s.k() == 3);
    CHECK(s.is_projective());

    const Field& f2 = Field::get(2);
    LinearCode dup(f2, gen_from_cols(f2, {{1, 0}, {1, 0}, {0, 1}}));
    CHECK_FALSE(dup.is_projective());
    CHECK(dup.points().cardinality() == 3);

    Matrix zc = gen_from_cols(f2, {{1, 0}, {0, 0}, {0, 1}});
    CHECK_THROWS_AS(LinearCode(f2, std::move(zc)), Error);

    Matrix rd = gen_from_cols(f2, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS(LinearCode(f2, std::move(rd)), Error);
}

TEST_CASE("reduce_to_projective") {
    const Field& f2 = Field::get(2);
    LinearCode s = simplex_code(f2, 3);
    auto [same, removed0] = reduce_to_projective(s);
    CHECK(removed0 == 0);
    CHECK(same.n() == 7);

    // simplex with a duplicated column
    std::vector<std::vector<uint8_t>> cols;
    for (uint32_t i = 0; i < 7; ++i) {
        auto p = s.geometry().point(i);
        cols.emplace_back(p.begin(), p.end());
    }
    cols.push_back(cols[2]);
    LinearCode fat(f2, gen_from_cols(f2, cols));
    auto [red, removed] = reduce_to_projective(fat);
    CHECK(removed == 1);
    CHECK(red.n() == 7);
    CHECK(red.is_projective());
    CHECK(count_minimal(red) == 7);
}

TEST_CASE("reduction preserves the minimal count") {
    std::mt19937 rng(11);
    testutil::for_random_codes(2, 23, [&](const LinearCode& c) {
        // duplicate a few columns, scaled by random units
        const Field& f = c.field();
        std::uniform_int_distribution<int> dc(0, c.n() - 1), ds(1, f.q() - 1);
        std::vector<std::vector<uint8_t>> cols;
        for (int i = 0; i < c.n(); ++i) {
            std::vector<uint8_t> col(c.k());
            for (int r = 0; r < c.k(); ++r) col[size_t(r)] = c.generator().at(r, i);
            cols.push_back(std::move(col));
        }
        for (int extra = 0; extra < 3; ++extra) {
            auto col = cols[size_t(dc(rng))];
            uint8_t sc = uint8_t(ds(rng));
            for (auto& x : col) x = f.mul(sc, x);
            cols.push_back(std::move(col));
        }
        LinearCode fat(f, gen_from_cols(f, cols));
        auto [red, removed] = reduce_to_projective(fat);
        CHECK(removed == 3);
        CHECK(count_minimal(red) == oracle_count_minimal(red));
    });
}

TEST_CASE("min_distance") {
    CHECK(min_distance(simplex_code(Field::get(2), 3)) == 4);
    CHECK(min_distance(simplex_code(Field::get(3), 3)) == 9);
    CHECK(min_distance(identity_code(2, 4)) == 1);
    CHECK(min_distance(conic_code_433()) == 2);  // MDS: d = n - k + 1
}

TEST_CASE("is_minimal_hyperplane") {
    LinearCode s = simplex_code(Field::get(2), 3);
    for (const auto& h : s.geometry().hyperplanes()) {
        auto rep = is_minimal_hyperplane(s, h);
        CHECK(rep.minimal);
        CHECK_FALSE(rep.witness_codim2.has_value());
        CHECK(rep.weight == 4);
        CHECK(rep.support.size() == 4);
    }

    // P = PG(F_2^3) minus (H \ U): the codeword of H is non-minimal
    auto geom = Geometry::get(2, 3);
    const auto& h0 = geom->hyperplanes()[0];
    uint32_t u = h0.points.indices()[0];
    BitVec mask{7};
    for (uint32_t i = 0; i < 7; ++i)
        if (!h0.points.test(i) || i == u) mask.set(i);
    LinearCode c = code_from_points(Field::get(2), 3, mask);
    CHECK(c.n() == 5);
    auto rep = is_minimal_hyperplane(c, h0);
    CHECK_FALSE(rep.minimal);
    REQUIRE(rep.witness_codim2.has_value());
    const Subspace& w = *rep.witness_codim2;
    CHECK(w.codim == 2);
    CHECK(w.points.is_subset_of(h0.points));
    BitVec section = c.points().mask & h0.points;
    CHECK(section.is_subset_of(w.points));
    CHECK(count_minimal(c) == 6);  // all other hyperplanes stay minimal
}

TEST_CASE("k=2 codes: minimal exactly below full weight") {
    for (int q : {3, 4, 5}) {
        BitVec mask{uint32_t(q + 1)};
        for (uint32_t i = 0; i < uint32_t(q); ++i) mask.set(i);  // drop one point
        LinearCode c = code_from_points(Field::get(q), 2, mask);
        for (const auto& h : c.geometry().hyperplanes()) {
            auto rep = is_minimal_hyperplane(c, h);
            CHECK(rep.minimal == (rep.weight < c.n()));
        }
    }
}

TEST_CASE("count_minimal on reference codes") {
    CHECK(count_minimal(simplex_code(Field::get(2), 3)) == 7);
    CHECK(count_minimal(simplex_code(Field::get(2), 4)) == 15);
    CHECK(count_minimal(simplex_code(Field::get(3), 3)) == 13);
    for (int k : {2, 3, 4}) CHECK(count_minimal(identity_code(2, k)) == uint64_t(k));
    CHECK(count_minimal(identity_code(3, 3)) == 3);

    // every projective [6,3]_2 code has M = 7
    for (uint32_t skip = 0; skip < 7; ++skip) {
        BitVec mask{7};
        for (uint32_t i = 0; i < 7; ++i)
            if (i != skip) mask.set(i);
        CHECK(count_minimal(code_from_points(Field::get(2), 3, mask)) == 7);
    }
}

TEST_CASE("codeword oracle basics") {
    CHECK(oracle_count_minimal(simplex_code(Field::get(2), 3)) == 7);
    CHECK(oracle_count_minimal(identity_code(2, 2)) == 2);
    CHECK(oracle_count_minimal(conic_code_433()) == 6);  // MDS: C(4,2)
    CHECK_THROWS_AS(oracle_count_minimal(simplex_code(Field::get(2), 4), 8), Error);
}

TEST_CASE("oracle equivalence and weight window on a random corpus") {
    testutil::for_random_codes(3, 101, [&](const LinearCode& c) {
        uint64_t m = count_minimal(c);
        CHECK(m == oracle_count_minimal(c));
        CHECK(m == count_minimal_serial(c));
        CHECK(m <= gaussian_binomial(c.k(), 1, c.field().q()));
        int d = min_distance(c);
        for (const auto& h : c.geometry().hyperplanes()) {
            auto rep = is_minimal_hyperplane(c, h);
            CHECK(rep.minimal == !rep.witness_codim2.has_value());
            if (rep.minimal) {
                CHECK(rep.weight >= d);
                CHECK(rep.weight <= c.n() - c.k() + 1);
            }
        }
    });
}

TEST_CASE("count_minimal independent of worker count") {
    testutil::for_random_codes(1, 55, [&](const LinearCode& c) {
        uint64_t ref = count_minimal_serial(c);
        CHECK(count_minimal(c, 2) == ref);
        CHECK(count_minimal(c, 4) == ref);
    });
}

TEST_CASE("subspace <-> subcode correspondence") {
    LinearCode s = simplex_code(Field::get(2), 3);

    // l = k: the full code maps to the empty subspace
    Subspace w = subspace_of_subcode(s, s.generator());
    CHECK(w.codim == 3);
    CHECK(w.points.count() == 0);

    // l = 1: a codeword maps to its hyperplane
    const Field& f = s.field();
    Matrix one(f, 1, s.n());
    for (int j = 0; j < s.n(); ++j) one.at(0, j) = s.generator().at(1, j);
    Subspace h = subspace_of_subcode(s, one);
    CHECK(h.codim == 1);
    // zero coordinates of the codeword are exactly the points on the subspace
    for (int j = 0; j < s.n(); ++j)
        CHECK((one.at(0, j) == 0) == h.points.test(s.column_point(j)));

    // round trips across all codimensions
    for (int l = 1; l <= 3; ++l) {
        for (const auto& sub : s.geometry().subspaces_codim(l)) {
            Matrix basis = subcode_of_subspace(s, sub);
            Subspace back = subspace_of_subcode(s, basis);
            CHECK(back.dual_basis == sub.dual_basis);
        }
    }

    Matrix bad(f, 1, s.n());
    bad.at(0, 0) = 1;  // weight-1 vector is not a simplex codeword
    CHECK_THROWS_AS(subspace_of_subcode(s, bad), Error);
    Matrix rdef(f, 2, s.n());
    for (int j = 0; j < s.n(); ++j) rdef.at(0, j) = rdef.at(1, j) = s.generator().at(0, j);
    CHECK_THROWS_AS(subspace_of_subcode(s, rdef), Error);
}

TEST_CASE("subcode support") {
    LinearCode s = simplex_code(Field::get(2), 3);
    auto zero = s.geometry().subspaces_codim(3)[0];
    CHECK(subcode_support(s, zero).weight == 7);

    // a point subspace leaves weight 6
    for (const auto& w : s.geometry().subspaces_codim(2)) {
        CHECK(w.points.count() == 1);
        CHECK(subcode_support(s, w).weight == 6);
    }

    // l = 1 matches the codeword view
    for (const auto& h : s.geometry().hyperplanes()) {
        auto rep = is_minimal_hyperplane(s, h);
        auto sup1 = subcode_support(s, h);
        CHECK(sup1.weight == rep.weight);
        CHECK(sup1.support == rep.support);
    }
}

TEST_CASE("support minimality") {
    LinearCode s = simplex_code(Field::get(2), 3);
    for (int l = 1; l <= 3; ++l)
        for (const auto& w : s.geometry().subspaces_codim(l))
            CHECK(is_support_minimal(s, w));

    // MDS code: the support-minimal l-subcodes are exactly those of weight d_l
    LinearCode mds = conic_code_433();
    for (int l = 1; l <= 3; ++l) {
        int dl = ghw(mds, l);
        CHECK(dl == mds.n() - mds.k() + l);
        for (const auto& w : mds.geometry().subspaces_codim(l))
            CHECK(is_support_minimal(mds, w) == (subcode_support(mds, w).weight == dl));
    }
}

TEST_CASE("count_support_minimal") {
    LinearCode s = simplex_code(Field::get(2), 3);
    CHECK(count_support_minimal(s, 1) == count_minimal(s));
    CHECK(count_support_minimal(s, 2) == 7);  // [3;2]_2
    CHECK(count_support_minimal(s, 3) == 1);
    CHECK(count_support_minimal(simplex_code(Field::get(2), 4), 2) == 35);  // [4;2]_2

    testutil::for_random_codes(2, 202, [&](const LinearCode& c) {
        int lmax = std::min(c.k(), 2);
        for (int l = 1; l <= lmax; ++l) {
            uint64_t m = count_support_minimal(c, l);
            CHECK(m == count_support_minimal_serial(c, l));
            CHECK(m == oracle_count_support_minimal(c, l));
            CHECK(m <= gaussian_binomial(c.k(), l, c.field().q()));
            if (l == 1) CHECK(m == count_minimal(c));
        }
    });
}

TEST_CASE("generalized Hamming weights") {
    LinearCode s = simplex_code(Field::get(2), 3);
    CHECK(ghw(s, 1) == 4);
    CHECK(ghw(s, 2) == 6);
    CHECK(ghw(s, 3) == 7);

    LinearCode mds = conic_code_433();
    for (int l = 1; l <= 3; ++l) CHECK(ghw(mds, l) == 1 + l);

    testutil::for_random_codes(2, 303, [&](const LinearCode& c) {
        CHECK(ghw(c, 1) == min_distance(c));
        CHECK(ghw(c, c.k()) == c.n());
        int prev = 0;
        for (int l = 1; l <= c.k(); ++l) {
            int dl = ghw(c, l);
            CHECK(dl > prev);  // strict monotonicity
            prev = dl;
        }
    });
}

TEST_CASE("support-minimal subcode weights stay within d_l..n-k+l") {
    // companion upper bound to the codeword weight window, at every tested l
    testutil::for_random_codes(2, 404, [&](const LinearCode& c) {
        if (gaussian_binomial(c.k(), 2, c.field().q()) > 2000) return;
        for (int l = 1; l <= std::min(2, c.k()); ++l) {
            int dl = ghw(c, l);
            for (const auto& w : c.geometry().subspaces_codim(l)) {
                if (!is_support_minimal(c, w)) continue;
                int wt = subcode_support(c, w).weight;
                CHECK(wt >= dl);
                CHECK(wt <= c.n() - c.k() + l);
            }
        }
    });
}
