#include "mincw/geometry.hpp"

#include <algorithm>
#include <map>

namespace mincw {

namespace {

uint64_t mul_checked(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow");
    return r;
}

uint64_t add_checked(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow");
    return r;
}

}  // namespace

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    // c after step i equals C(n-k+i, i); multiply-then-divide stays exact.
    uint64_t c = 1;
    for (uint64_t i = 1; i <= k; ++i) c = mul_checked(c, n - k + i) / i;
    return c;
}

uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint64_t c = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        uint64_t r;
        if (__builtin_mul_overflow(c, n - k + i, &r)) return cap + 1;
        c = r / i;
        if (c > cap) return cap + 1;  // C(n-k+i, i) is nondecreasing in i
    }
    return c;
}

uint64_t gaussian_binomial(int k, int l, uint64_t q) {
    if (l < 0 || l > k) fail(Errc::out_of_range, "gaussian_binomial requires 0 <= l <= k");
    // q-Pascal recurrence [n;j] = [n-1;j-1] + q^j [n-1;j]; exact, overflow-checked.
    std::vector<uint64_t> row(size_t(l) + 1, 0);
    row[0] = 1;
    std::vector<uint64_t> qpow(size_t(l) + 1, 1);
    for (int j = 1; j <= l; ++j) qpow[j] = mul_checked(qpow[j - 1], q);
    for (int n = 1; n <= k; ++n)
        for (int j = std::min(n, l); j >= 1; --j)
            row[j] = add_checked(row[j - 1], mul_checked(qpow[j], row[j]));
    return row[l];
}

Geometry::Geometry(const Field& f, int k, const GeometryLimits& lim) : f_(f), k_(k), lim_(lim) {
    if (k < 1) fail(Errc::out_of_range, "geometry dimension must be >= 1");
    const uint64_t q = f.q();
    uint64_t qk = 1;
    for (int i = 0; i < k; ++i) {
        qk = mul_checked(qk, q);
        if (qk > lim.max_space) fail(Errc::too_large, "q^k exceeds geometry guard");
    }
    qk_ = qk;
    npoints_ = uint32_t((qk - 1) / (q - 1));

    pts_.reserve(size_t(npoints_) * k);
    ppacked_.reserve(npoints_);
    vec2idx_.assign(qk, 0);

    // Normalized representatives in lexicographic (= packed numeric) order.
    std::vector<uint8_t> v(k);
    for (uint64_t code = 1; code < qk; ++code) {
        uint64_t c = code;
        for (int i = k - 1; i >= 0; --i) {
            v[i] = uint8_t(c % q);
            c /= q;
        }
        int fn = 0;
        while (v[fn] == 0) ++fn;
        if (v[fn] != 1) continue;
        uint32_t idx = uint32_t(ppacked_.size());
        ppacked_.push_back(uint32_t(code));
        pts_.insert(pts_.end(), v.begin(), v.end());
        for (int s = 1; s < int(q); ++s) {
            uint64_t scaled = 0;
            for (int i = 0; i < k; ++i) scaled = scaled * q + f.mul(uint8_t(s), v[i]);
            vec2idx_[scaled] = idx;
        }
    }

    if (q > 2 && qk <= lim.max_packed) {
        padd_.resize(size_t(qk) * qk);
        smul_.resize(size_t(q) * qk);
        std::vector<uint8_t> a(k), b(k);
        for (uint64_t x = 0; x < qk; ++x) {
            uint64_t c = x;
            for (int i = k - 1; i >= 0; --i) {
                a[i] = uint8_t(c % q);
                c /= q;
            }
            for (int s = 0; s < int(q); ++s) {
                uint64_t sv = 0;
                for (int i = 0; i < k; ++i) sv = sv * q + f.mul(uint8_t(s), a[i]);
                smul_[size_t(s) * qk + x] = uint32_t(sv);
            }
            for (uint64_t y = 0; y < qk; ++y) {
                uint64_t cy = y, sv = 0;
                for (int i = k - 1; i >= 0; --i) {
                    b[i] = uint8_t(cy % q);
                    cy /= q;
                }
                for (int i = 0; i < k; ++i) sv = sv * q + f.add(a[i], b[i]);
                padd_[size_t(x) * qk + y] = uint32_t(sv);
            }
        }
    }
}

std::shared_ptr<const Geometry> Geometry::get(int q, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Geometry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, k);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<const Geometry>(Field::get(q), k)).first;
    return it->second;
}

std::vector<uint8_t> Geometry::normalize(std::span<const uint8_t> v) const {
    std::vector<uint8_t> out(v.begin(), v.end());
    int fn = 0;
    while (fn < k_ && out[fn] == 0) ++fn;
    if (fn == k_) fail(Errc::zero_vector, "cannot normalize the zero vector");
    uint8_t s = f_.inv(out[fn]);
    if (s != 1)
        for (int i = 0; i < k_; ++i) out[i] = f_.mul(s, out[i]);
    return out;
}

uint32_t Geometry::pack(std::span<const uint8_t> v) const {
    uint64_t code = 0;
    for (int i = 0; i < k_; ++i) code = code * f_.q() + v[i];
    return uint32_t(code);
}

std::vector<uint8_t> Geometry::unpack(uint32_t code) const {
    std::vector<uint8_t> v(k_);
    for (int i = k_ - 1; i >= 0; --i) {
        v[i] = uint8_t(code % f_.q());
        code = uint32_t(code / f_.q());
    }
    return v;
}

uint32_t Geometry::point_index(std::span<const uint8_t> v) const {
    uint32_t code = pack(v);
    if (code == 0) fail(Errc::zero_vector, "zero vector has no projective point");
    return vec2idx_[code];
}

namespace {

// dot product of a form row with a point, via field tables
inline uint8_t dot(const Field& f, std::span<const uint8_t> form, std::span<const uint8_t> pt) {
    uint8_t acc = 0;
    for (size_t i = 0; i < form.size(); ++i)
        if (form[i]) acc = f.add(acc, f.mul(form[i], pt[i]));
    return acc;
}

}  // namespace

BitVec Geometry::incidence_mask(const Matrix& dual_rref) const {
    BitVec mask(npoints_);
    if (f_.q() == 2) {
        // parity of AND over packed vectors
        std::vector<uint32_t> forms;
        forms.reserve(dual_rref.rows);
        for (int r = 0; r < dual_rref.rows; ++r) forms.push_back(pack(dual_rref.row(r)));
        for (uint32_t i = 0; i < npoints_; ++i) {
            uint32_t p = ppacked_[i];
            bool in = true;
            for (uint32_t fm : forms)
                if (std::popcount(fm & p) & 1) {
                    in = false;
                    break;
                }
            if (in) mask.set(i);
        }
        return mask;
    }
    for (uint32_t i = 0; i < npoints_; ++i) {
        bool in = true;
        for (int r = 0; r < dual_rref.rows; ++r)
            if (dot(f_, dual_rref.row(r), point(i)) != 0) {
                in = false;
                break;
            }
        if (in) mask.set(i);
    }
    return mask;
}

const std::vector<Subspace>& Geometry::hyperplanes() const {
    std::lock_guard<std::mutex> lock(hp_mu_);
    if (!hyperplanes_.empty()) return hyperplanes_;
    if (npoints_ > lim_.max_hyperplane_cache)
        fail(Errc::too_large, "hyperplane enumeration exceeds guard");
    hyperplanes_.reserve(npoints_);
    for (uint32_t h = 0; h < npoints_; ++h) {
        Subspace s;
        s.codim = 1;
        s.dual_basis = Matrix(f_, 1, k_);
        std::copy(point(h).begin(), point(h).end(), s.dual_basis.row(0).begin());
        s.points = incidence_mask(s.dual_basis);
        hyperplanes_.push_back(std::move(s));
    }
    return hyperplanes_;
}

void Geometry::enumerate_dual_rref(int l, const std::function<void(Matrix&)>& fn) const {
    if (l < 1 || l > k_) fail(Errc::out_of_range, "codimension out of range");
    enumerate_rref_matrices(f_, l, k_, fn);
}

std::vector<Subspace> Geometry::subspaces_codim(int l, uint64_t guard) const {
    uint64_t total = gaussian_binomial(k_, l, f_.q());
    if (total > guard) fail(Errc::too_large, "subspace enumeration exceeds guard");
    std::vector<Subspace> out;
    out.reserve(total);
    for_each_subspace_codim(l, [&](Subspace& s) { out.push_back(std::move(s)); });
    return out;
}

Subspace Geometry::subspace_from_dual(Matrix dual) const {
    RrefResult r = rref(dual);
    if (r.rank != dual.rows) fail(Errc::rank_deficient, "dual basis is rank-deficient");
    Subspace s;
    s.codim = dual.rows;
    s.dual_basis = std::move(r.m);
    s.points = incidence_mask(s.dual_basis);
    return s;
}

int Geometry::section_rank(const BitVec& mask, int cap) const {
    if (f_.q() == 2) {
        // XOR basis over packed representatives, reduced by top bit
        uint32_t basis[32] = {0};
        int rank = 0;
        bool done = false;
        mask.for_each([&](uint32_t i) {
            if (done) return;
            uint32_t v = ppacked_[i];
            while (v) {
                int hb = 31 - std::countl_zero(v);
                if (!basis[hb]) {
                    basis[hb] = v;
                    if (++rank == cap) done = true;
                    break;
                }
                v ^= basis[hb];
            }
        });
        return rank;
    }
    // echelon basis keyed by leading coordinate
    std::vector<std::vector<uint8_t>> basis(k_);
    int rank = 0;
    bool done = false;
    mask.for_each([&](uint32_t i) {
        if (done) return;
        std::vector<uint8_t> v(point(i).begin(), point(i).end());
        for (int pos = 0; pos < k_; ++pos) {
            if (v[pos] == 0) continue;
            if (basis[pos].empty()) {
                uint8_t s = f_.inv(v[pos]);
                for (auto& x : v) x = f_.mul(s, x);
                basis[pos] = std::move(v);
                if (++rank == cap) done = true;
                return;
            }
            uint8_t c = v[pos];
            for (int t = pos; t < k_; ++t) v[t] = f_.sub(v[t], f_.mul(c, basis[pos][t]));
        }
    });
    return rank;
}

}  // namespace mincw
