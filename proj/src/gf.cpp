#include "mincw/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace mincw {

namespace {

bool factor_prime_power(int q, int& p, int& e) {
    for (int c = 2; c * c <= q; ++c) {
        if (q % c == 0) {
            int m = q, deg = 0;
            while (m % c == 0) m /= c, ++deg;
            if (m != 1) return false;
            p = c;
            e = deg;
            return true;
        }
    }
    p = q;  // q itself prime
    e = 1;
    return true;
}

// Fixed modulus per extension field, constant term first.
std::vector<uint8_t> modulus_for(int q) {
    switch (q) {
        case 4: return {1, 1, 1};
        case 8: return {1, 1, 0, 1};
        case 9: return {2, 2, 1};
        case 16: return {1, 1, 0, 0, 1};
        default: return {};
    }
}

std::vector<uint8_t> digits_of(int code, int p, int e) {
    std::vector<uint8_t> d(e, 0);
    for (int i = 0; i < e; ++i) {
        d[i] = uint8_t(code % p);
        code /= p;
    }
    return d;
}

int code_of(const std::vector<uint8_t>& d, int p) {
    int c = 0;
    for (int i = int(d.size()) - 1; i >= 0; --i) c = c * p + d[i];
    return c;
}

}  // namespace

Field::Field(int q) : q_(q) {
    if (q > 16) fail(Errc::unsupported, "field size above 16 not supported");
    if (q < 2 || !factor_prime_power(q, p_, e_))
        fail(Errc::not_a_prime_power, "field size must be a prime power");
    modulus_ = modulus_for(q);

    add_.resize(size_t(q) * q);
    mul_.resize(size_t(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);

    for (int a = 0; a < q; ++a) {
        auto da = digits_of(a, p_, e_);
        for (int b = 0; b < q; ++b) {
            auto db = digits_of(b, p_, e_);
            std::vector<uint8_t> s(e_);
            for (int i = 0; i < e_; ++i) s[i] = uint8_t((da[i] + db[i]) % p_);
            add_[size_t(a) * q + b] = uint8_t(code_of(s, p_));

            // polynomial product, reduced mod the fixed modulus
            std::vector<int> prod(2 * e_ - 1, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = int(prod.size()) - 1; d >= e_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                // x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
                for (int i = 0; i < e_; ++i)
                    prod[d - e_ + i] = ((prod[d - e_ + i] - c * modulus_[i]) % p_ + p_) % p_;
            }
            std::vector<uint8_t> m(e_);
            for (int i = 0; i < e_; ++i) m[i] = uint8_t(prod[i]);
            mul_[size_t(a) * q + b] = uint8_t(code_of(m, p_));
        }
        std::vector<uint8_t> n(e_);
        for (int i = 0; i < e_; ++i) n[i] = uint8_t((p_ - da[i]) % p_);
        neg_[a] = uint8_t(code_of(n, p_));
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[size_t(a) * q + b] == 1) inv_[a] = uint8_t(b);
}

uint8_t Field::pow(uint8_t a, uint64_t n) const {
    uint8_t r = 1, base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

const Field& Field::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<Field>(new Field(q))).first;
    return *it->second;
}

}  // namespace mincw
