#include "doctest.h"
#include "mincw/gf.hpp"

using namespace mincw;

namespace {
const int supported[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
}

TEST_CASE("field construction") {
    const Field& f2 = Field::get(2);
    CHECK(f2.p() == 2);
    CHECK(f2.e() == 1);

    const Field& f4 = Field::get(4);
    CHECK(f4.p() == 2);
    CHECK(f4.e() == 2);
    CHECK(f4.modulus_poly() == std::vector<uint8_t>{1, 1, 1});  // x^2+x+1

    CHECK_THROWS_AS(Field::get(6), Error);
    CHECK_THROWS_AS(Field::get(12), Error);
    CHECK_THROWS_AS(Field::get(17), Error);
    CHECK_THROWS_AS(Field::get(1), Error);
}

TEST_CASE("basic arithmetic") {
    CHECK(Field::get(2).add(1, 1) == 0);
    CHECK(Field::get(3).inv(2) == 2);
    CHECK(Field::get(4).mul(2, 2) == 3);  // x * x = x + 1 mod x^2+x+1
    CHECK(Field::get(8).mul(2, 4) == 3);  // x * x^2 = x + 1 mod x^3+x+1
    CHECK(Field::get(8).mul(4, 4) == 6);  // x^4 = x^2 + x
    CHECK(Field::get(9).mul(3, 3) == 4);  // x^2 = x + 1 mod x^2+2x+2
    CHECK(Field::get(16).mul(2, 8) == 3); // x^4 = x + 1
    CHECK_THROWS_AS(Field::get(5).inv(0), Error);
    CHECK_THROWS_AS(Field::get(5).div(3, 0), Error);
}

TEST_CASE("field axioms hold exhaustively for every supported q") {
    for (int q : supported) {
        const Field& f = Field::get(q);
        CAPTURE(q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(uint8_t(a), 0) == a);
            CHECK(f.mul(uint8_t(a), 1) == a);
            CHECK(f.add(uint8_t(a), f.neg(uint8_t(a))) == 0);
            if (a != 0) {
                CHECK(f.mul(uint8_t(a), f.inv(uint8_t(a))) == 1);
                CHECK(f.inv(f.inv(uint8_t(a))) == a);
            }
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(uint8_t(a), uint8_t(b)) == f.add(uint8_t(b), uint8_t(a)));
                CHECK(f.mul(uint8_t(a), uint8_t(b)) == f.mul(uint8_t(b), uint8_t(a)));
                for (int c = 0; c < q; ++c) {
                    uint8_t ab = f.add(uint8_t(a), uint8_t(b));
                    uint8_t bc = f.add(uint8_t(b), uint8_t(c));
                    CHECK(f.add(ab, uint8_t(c)) == f.add(uint8_t(a), bc));
                    uint8_t mab = f.mul(uint8_t(a), uint8_t(b));
                    uint8_t mbc = f.mul(uint8_t(b), uint8_t(c));
                    CHECK(f.mul(mab, uint8_t(c)) == f.mul(uint8_t(a), mbc));
                    CHECK(f.mul(uint8_t(a), bc) ==
                          f.add(f.mul(uint8_t(a), uint8_t(b)), f.mul(uint8_t(a), uint8_t(c))));
                }
            }
        }
    }
}

TEST_CASE("frobenius") {
    for (int q : supported) {
        const Field& f = Field::get(q);
        const int p = f.p();
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                uint8_t lhs = f.pow(f.add(uint8_t(a), uint8_t(b)), uint64_t(p));
                uint8_t rhs = f.add(f.pow(uint8_t(a), uint64_t(p)), f.pow(uint8_t(b), uint64_t(p)));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("multiplicative group order") {
    for (int q : supported) {
        const Field& f = Field::get(q);
        for (int a = 1; a < q; ++a) CHECK(f.pow(uint8_t(a), uint64_t(q - 1)) == 1);
    }
}
