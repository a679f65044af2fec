#pragma once

#include <cstdint>
#include <vector>

#include "mincw/error.hpp"

namespace mincw {

/// Table-driven arithmetic in GF(q) for prime powers 2 <= q <= 16.
///
/// Element encoding: an element with coefficient vector (c_0,...,c_{e-1}) over
/// GF(p) is encoded as the integer sum c_i * p^i, so for prime fields the code
/// is the residue mod p. The irreducible modulus polynomial is fixed per field
/// (never chosen at runtime):
///
///   GF(4)  x^2 + x + 1
///   GF(8)  x^3 + x + 1
///   GF(9)  x^2 + 2x + 2
///   GF(16) x^4 + x + 1
///
/// These are the Conway polynomials for the respective fields.
class Field {
public:
    /// Cached accessor; throws NotAPrimePower / Unsupported.
    static const Field& get(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int e() const { return e_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[size_t(a) * q_ + b]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[size_t(a) * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add(a, neg(b)); }

    uint8_t inv(uint8_t a) const {
        if (a == 0) fail(Errc::division_by_zero, "inverse of zero");
        return inv_[a];
    }
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    uint8_t pow(uint8_t a, uint64_t n) const;

    /// Modulus coefficients, constant term first; empty for prime fields.
    const std::vector<uint8_t>& modulus_poly() const { return modulus_; }

    const uint8_t* add_row(uint8_t a) const { return add_.data() + size_t(a) * q_; }
    const uint8_t* mul_row(uint8_t a) const { return mul_.data() + size_t(a) * q_; }

private:
    explicit Field(int q);

    int q_, p_, e_;
    std::vector<uint8_t> add_, mul_, neg_, inv_, modulus_;
};

}  // namespace mincw
