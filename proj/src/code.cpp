#include "mincw/code.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mincw {

namespace {

int resolve_workers(int w) {
#ifdef _OPENMP
    return w > 0 ? w : omp_get_max_threads();
#else
    (void)w;
    return 1;
#endif
}

}  // namespace

LinearCode::LinearCode(const Field& f, Matrix gen) : gen_(std::move(gen)) {
    if (gen_.rows < 1 || gen_.cols < gen_.rows)
        fail(Errc::out_of_range, "need 1 <= k <= n");
    geom_ = Geometry::get(f.q(), gen_.rows);
    const int n = gen_.cols, k = gen_.rows;

    col_point_.resize(n);
    std::vector<uint8_t> col(k);
    for (int i = 0; i < n; ++i) {
        bool zero = true;
        for (int r = 0; r < k; ++r) {
            col[r] = gen_.at(r, i);
            if (col[r]) zero = false;
        }
        if (zero) fail(Errc::zero_column, "generator matrix has a zero column");
        col_point_[i] = geom_->point_index(col);
    }
    if (rank(gen_) != k) fail(Errc::rank_deficient, "generator matrix is rank-deficient");

    points_.mult.assign(geom_->num_points(), 0);
    points_.mask = BitVec(geom_->num_points());
    for (uint32_t p : col_point_) {
        ++points_.mult[p];
        points_.mask.set(p);
    }
    points_.multiset = uint64_t(points_.mask.count()) != uint64_t(n);
    projective_ = !points_.multiset;
}

LinearCode code_from_points(const Field& f, int k, const BitVec& mask) {
    auto geom = Geometry::get(f.q(), k);
    Matrix gen(f, k, int(mask.count()));
    int col = 0;
    mask.for_each([&](uint32_t p) {
        auto rep = geom->point(p);
        for (int r = 0; r < k; ++r) gen.at(r, col) = rep[r];
        ++col;
    });
    return LinearCode(f, std::move(gen));
}

LinearCode simplex_code(const Field& f, int k) {
    auto geom = Geometry::get(f.q(), k);
    BitVec all(geom->num_points());
    for (uint32_t i = 0; i < geom->num_points(); ++i) all.set(i);
    return code_from_points(f, k, all);
}

std::pair<LinearCode, int> reduce_to_projective(const LinearCode& c) {
    const int n = c.n(), k = c.k();
    std::vector<bool> seen(c.geometry().num_points(), false);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        uint32_t p = c.column_point(i);
        if (!seen[p]) {
            seen[p] = true;
            keep.push_back(i);
        }
    }
    Matrix gen(c.field(), k, int(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j)
        for (int r = 0; r < k; ++r) gen.at(r, int(j)) = c.generator().at(r, keep[j]);
    return {LinearCode(c.field(), std::move(gen)), n - int(keep.size())};
}

namespace {

int section_weight(const LinearCode& c, const BitVec& subspace_pts) {
    // weight of the associated codeword class: n - |P cap W| with multiplicity
    BitVec sec = c.points().mask & subspace_pts;
    int64_t on = 0;
    sec.for_each([&](uint32_t p) { on += c.points().mult[p]; });
    return int(c.n() - on);
}

}  // namespace

MinimalityReport is_minimal_hyperplane(const LinearCode& c, const Subspace& h) {
    const Geometry& g = c.geometry();
    const int k = c.k();
    MinimalityReport rep;
    rep.hyperplane = h;
    BitVec section = c.points().mask & h.points;
    for (int i = 0; i < c.n(); ++i)
        if (!h.points.test(c.column_point(i))) rep.support.push_back(i);
    rep.weight = section_weight(c, h.points);
    rep.minimal = g.section_rank(section, k - 1) == k - 1;

    if (!rep.minimal) {
        // canonical witness: lexicographically least rref dual basis of a
        // codim-2 subspace containing the section span and inside h
        std::vector<std::vector<uint8_t>> sec_rows;
        section.for_each([&](uint32_t p) {
            sec_rows.emplace_back(g.point(p).begin(), g.point(p).end());
        });
        Matrix span = Matrix::from_rows(c.field(), sec_rows);
        if (span.rows == 0) span = Matrix(c.field(), 0, k);
        Matrix forms = nullspace_basis(span);  // all forms vanishing on the section

        const Field& f = c.field();
        const int q = f.q(), dim = forms.rows;
        std::optional<Matrix> best;
        std::vector<uint8_t> combo(dim, 0), fv(k);
        uint64_t total = 1;
        for (int i = 0; i < dim; ++i) total *= q;
        for (uint64_t code = 1; code < total; ++code) {
            uint64_t cc = code;
            for (int i = 0; i < dim; ++i) {
                combo[i] = uint8_t(cc % q);
                cc /= q;
            }
            std::fill(fv.begin(), fv.end(), 0);
            for (int i = 0; i < dim; ++i)
                if (combo[i])
                    for (int t = 0; t < k; ++t)
                        fv[t] = f.add(fv[t], f.mul(combo[i], forms.at(i, t)));
            Matrix cand(f, 2, k);
            std::copy(h.dual_basis.row(0).begin(), h.dual_basis.row(0).end(), cand.row(0).begin());
            std::copy(fv.begin(), fv.end(), cand.row(1).begin());
            RrefResult r = rref(cand);
            if (r.rank != 2) continue;  // fv proportional to the hyperplane form
            if (!best || r.m.a < best->a) best = std::move(r.m);
        }
        rep.witness_codim2 = g.subspace_from_dual(std::move(*best));
    }
    return rep;
}

namespace {

template <class HyperplaneFn>
void for_each_hyperplane_points(const Geometry& g, HyperplaneFn&& fn) {
    if (g.num_points() <= g.limits().max_hyperplane_cache) {
        const auto& hps = g.hyperplanes();
        for (uint32_t h = 0; h < hps.size(); ++h) fn(h, hps[h].points);
        return;
    }
    for (uint32_t h = 0; h < g.num_points(); ++h) {
        Matrix d(g.field(), 1, g.k());
        std::copy(g.point(h).begin(), g.point(h).end(), d.row(0).begin());
        fn(h, g.incidence_mask(d));
    }
}

}  // namespace

uint64_t count_minimal_serial(const LinearCode& c) {
    const Geometry& g = c.geometry();
    const int k = c.k();
    uint64_t count = 0;
    for_each_hyperplane_points(g, [&](uint32_t, const BitVec& hp) {
        BitVec sec = c.points().mask & hp;
        if (g.section_rank(sec, k - 1) == k - 1) ++count;
    });
    return count;
}

uint64_t count_minimal(const LinearCode& c, int workers) {
    if (workers == 1) return count_minimal_serial(c);
    const Geometry& g = c.geometry();
    const int k = c.k();
    if (g.num_points() > g.limits().max_hyperplane_cache) return count_minimal_serial(c);
    const auto& hps = g.hyperplanes();
    uint64_t count = 0;
    const int64_t nh = int64_t(hps.size());
#ifdef _OPENMP
    int nt = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt) reduction(+ : count)
#endif
    for (int64_t h = 0; h < nh; ++h) {
        BitVec sec = c.points().mask & hps[size_t(h)].points;
        if (g.section_rank(sec, k - 1) == k - 1) ++count;
    }
    return count;
}

uint64_t oracle_count_minimal(const LinearCode& c, uint64_t guard) {
    const Field& f = c.field();
    const int n = c.n(), k = c.k(), q = f.q();
    uint64_t qk = 1;
    for (int i = 0; i < k; ++i) {
        qk *= q;
        if (qk > guard) fail(Errc::too_large, "codeword enumeration exceeds guard");
    }

    const uint64_t ncw = qk - 1;
    std::vector<BitVec> supp(ncw, BitVec(uint32_t(n)));
    std::vector<int> wt(ncw);
    std::vector<uint8_t> msg(k), cw(n);
    for (uint64_t m = 1; m < qk; ++m) {
        uint64_t mm = m;
        for (int i = 0; i < k; ++i) {
            msg[i] = uint8_t(mm % q);
            mm /= q;
        }
        std::fill(cw.begin(), cw.end(), 0);
        for (int i = 0; i < k; ++i) {
            if (!msg[i]) continue;
            const uint8_t* mr = f.mul_row(msg[i]);
            for (int j = 0; j < n; ++j) cw[j] = f.add(cw[j], mr[c.generator().at(i, j)]);
        }
        int w = 0;
        for (int j = 0; j < n; ++j)
            if (cw[j]) {
                supp[m - 1].set(uint32_t(j));
                ++w;
            }
        wt[m - 1] = w;
    }

    std::vector<uint32_t> order(ncw);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return wt[a] < wt[b]; });

    uint64_t minimal = 0;
    for (size_t oi = 0; oi < order.size(); ++oi) {
        uint32_t i = order[oi];
        bool is_min = true;
        for (size_t oj = 0; oj < oi; ++oj) {
            uint32_t j = order[oj];
            if (wt[j] >= wt[i]) break;  // only strictly smaller supports can be proper subsets
            if (supp[j].is_subset_of(supp[i])) {
                is_min = false;
                break;
            }
        }
        if (is_min) ++minimal;
    }
    if (minimal % (q - 1) != 0)
        throw std::logic_error("minimal codeword count not divisible by q-1");
    return minimal / (q - 1);
}

int min_distance(const LinearCode& c) {
    int best = c.n();
    for_each_hyperplane_points(c.geometry(), [&](uint32_t, const BitVec& hp) {
        best = std::min(best, section_weight(c, hp));
    });
    return best;
}

Subspace subspace_of_subcode(const LinearCode& c, const Matrix& basis) {
    if (basis.cols != c.n()) fail(Errc::dimension_mismatch, "basis length mismatch");
    const int l = basis.rows;
    Matrix coeff(c.field(), l, c.k());
    for (int i = 0; i < l; ++i) {
        auto x = solve_row(c.generator(), basis.row(i));
        if (!x) fail(Errc::not_a_codeword, "basis row is not a codeword");
        std::copy(x->begin(), x->end(), coeff.row(i).begin());
    }
    if (rank(coeff) != l) fail(Errc::rank_deficient, "subcode basis is rank-deficient");
    return c.geometry().subspace_from_dual(std::move(coeff));
}

Matrix subcode_of_subspace(const LinearCode& c, const Subspace& w) {
    return matmul(w.dual_basis, c.generator());
}

SubcodeSupport subcode_support(const LinearCode& c, const Subspace& w) {
    SubcodeSupport s;
    for (int i = 0; i < c.n(); ++i)
        if (!w.points.test(c.column_point(i))) s.support.push_back(i);
    s.weight = int(s.support.size());
    return s;
}

bool is_support_minimal(const LinearCode& c, const Subspace& w) {
    const int target = c.k() - w.codim;
    BitVec sec = c.points().mask & w.points;
    return c.geometry().section_rank(sec, target) == target;
}

uint64_t count_support_minimal_serial(const LinearCode& c, int l) {
    uint64_t count = 0;
    c.geometry().for_each_subspace_codim(l, [&](Subspace& w) {
        if (is_support_minimal(c, w)) ++count;
    });
    return count;
}

uint64_t count_support_minimal(const LinearCode& c, int l, int workers) {
    if (workers == 1) return count_support_minimal_serial(c, l);
    auto subs = c.geometry().subspaces_codim(l);
    uint64_t count = 0;
    const int64_t ns = int64_t(subs.size());
#ifdef _OPENMP
    int nt = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 32) num_threads(nt) reduction(+ : count)
#endif
    for (int64_t i = 0; i < ns; ++i)
        if (is_support_minimal(c, subs[size_t(i)])) ++count;
    return count;
}

uint64_t oracle_count_support_minimal(const LinearCode& c, int l, uint64_t guard) {
    if (l < 1 || l > c.k()) fail(Errc::out_of_range, "subcode dimension out of range");
    uint64_t total = gaussian_binomial(c.k(), l, c.field().q());
    if (total > guard) fail(Errc::too_large, "subcode enumeration exceeds guard");

    // Enumerate subcodes in coefficient space (independent of the incidence
    // path): rref coefficient matrices M, subcode basis rows M*G, support =
    // union of basis-row supports.
    const Field& f = c.field();
    const int n = c.n();
    std::vector<BitVec> supp;
    supp.reserve(total);
    enumerate_rref_matrices(f, l, c.k(), [&](Matrix& m) {
        Matrix basis = matmul(m, c.generator());
        BitVec s{uint32_t(n)};
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < n; ++j)
                if (basis.at(i, j)) s.set(uint32_t(j));
        supp.push_back(std::move(s));
    });

    std::vector<uint32_t> order(supp.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<uint64_t> wt(supp.size());
    for (size_t i = 0; i < supp.size(); ++i) wt[i] = supp[i].count();
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return wt[a] < wt[b]; });

    uint64_t minimal = 0;
    for (size_t oi = 0; oi < order.size(); ++oi) {
        uint32_t i = order[oi];
        bool is_min = true;
        for (size_t oj = 0; oj < oi; ++oj) {
            uint32_t j = order[oj];
            if (wt[j] >= wt[i]) break;
            if (supp[j].is_subset_of(supp[i])) {
                is_min = false;
                break;
            }
        }
        if (is_min) ++minimal;
    }
    return minimal;
}

int ghw(const LinearCode& c, int l, int workers) {
    if (l < 1 || l > c.k()) fail(Errc::out_of_range, "subcode dimension out of range");
    auto subs = c.geometry().subspaces_codim(l);
    int64_t best = 0;
    const int64_t ns = int64_t(subs.size());
#ifdef _OPENMP
    int nt = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 32) num_threads(nt) reduction(max : best)
#endif
    for (int64_t i = 0; i < ns; ++i) {
        BitVec sec = c.points().mask & subs[size_t(i)].points;
        best = std::max(best, int64_t(sec.count()));
    }
    return int(c.n() - best);
}

}  // namespace mincw
