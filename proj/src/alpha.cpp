#include "mincw/alpha.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mincw::alpha {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::closed: return "closed";
        case Provenance::brute: return "brute";
        case Provenance::construction: return "construction";
    }
    return "?";
}

namespace {

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int arc_max_size(int q) { return (q % 2 == 0) ? q + 2 : q + 1; }

struct FlagPair {
    uint32_t w_idx;        // index into the codim-l subspace list
    Subspace u;            // inner subspace, codim l+1
    BitVec diff;           // W \ U
};

struct PairSpace {
    std::shared_ptr<const Geometry> geom;
    std::vector<Subspace> ws;
    std::vector<FlagPair> pairs;      // grouped by w_idx ascending
    std::vector<size_t> w_begin;      // pair range per W
};

PairSpace build_pairs(int q, int k, int l, const AlphaGuards& g) {
    PairSpace ps;
    ps.geom = Geometry::get(q, k);
    if (l < 1 || l >= k)
        fail(Errc::too_large, "no inner subspaces exist at codimension l+1");
    uint64_t nw = gaussian_binomial(k, l, q);
    if (nw > g.max_subspaces) fail(Errc::too_large, "subspace count exceeds brute-force guard");
    ps.ws = ps.geom->subspaces_codim(l);
    auto us = ps.geom->subspaces_codim(l + 1);
    ps.w_begin.assign(ps.ws.size() + 1, 0);
    for (size_t wi = 0; wi < ps.ws.size(); ++wi) {
        ps.w_begin[wi] = ps.pairs.size();
        for (const auto& u : us) {
            if (!u.points.is_subset_of(ps.ws[wi].points)) continue;
            FlagPair fp;
            fp.w_idx = uint32_t(wi);
            fp.u = u;
            fp.diff = ps.ws[wi].points;
            fp.diff.andnot_assign(u.points);
            ps.pairs.push_back(std::move(fp));
        }
    }
    ps.w_begin[ps.ws.size()] = ps.pairs.size();
    return ps;
}

CoverWitness witness_from_pairs(const PairSpace& ps, const std::vector<uint32_t>& sel,
                                int q, int k, int r, int l) {
    CoverWitness w;
    w.q = q;
    w.k = k;
    w.r = r;
    w.l = l;
    w.union_points = BitVec(ps.geom->num_points());
    for (uint32_t pi : sel) {
        const FlagPair& fp = ps.pairs[pi];
        w.hyperplanes.push_back(ps.ws[fp.w_idx]);
        w.inner.push_back(fp.u);
        w.union_points |= fp.diff;
    }
    w.cardinality = w.union_points.count();
    return w;
}

CoverWitness empty_witness(int q, int k, int r, int l) {
    CoverWitness w;
    w.q = q;
    w.k = k;
    w.r = r;
    w.l = l;
    w.union_points = BitVec(Geometry::get(q, k)->num_points());
    return w;
}

// Greedy completion from a fixed first pair; used to seed branch-and-bound.
std::pair<uint64_t, std::vector<uint32_t>> greedy_cover(const PairSpace& ps, int r) {
    std::vector<uint32_t> sel{0};
    BitVec un = ps.pairs[0].diff;
    std::vector<bool> used_w(ps.ws.size(), false);
    used_w[ps.pairs[0].w_idx] = true;
    for (int step = 1; step < r; ++step) {
        uint64_t best = UINT64_MAX;
        uint32_t best_i = 0;
        for (uint32_t i = 0; i < ps.pairs.size(); ++i) {
            if (used_w[ps.pairs[i].w_idx]) continue;
            uint64_t v = (un | ps.pairs[i].diff).count();
            if (v < best) {
                best = v;
                best_i = i;
            }
        }
        sel.push_back(best_i);
        un |= ps.pairs[best_i].diff;
        used_w[ps.pairs[best_i].w_idx] = true;
    }
    return {un.count(), sel};
}

// Branch and bound over pair subsets. Bound: a new difference set adds at
// least d_size - (pairs already chosen) * b_pair points, since two difference
// sets with distinct W's overlap in at most b_pair = q^{k-l-2} points.
struct BnB {
    const PairSpace& ps;
    int r;
    uint64_t d_size, b_pair;
    uint64_t best;                  // strict upper bound to beat
    std::vector<uint32_t> best_sel;  // empty until an improvement is found

    uint64_t completion_lb(uint64_t s, int m) const {
        uint64_t lb = s;
        for (int i = m + 1; i <= r; ++i)
            lb += d_size > uint64_t(i - 1) * b_pair ? d_size - uint64_t(i - 1) * b_pair : 0;
        return lb;
    }

    void dfs(std::vector<uint32_t>& sel, const BitVec& un, uint64_t s, uint32_t next_pair) {
        int m = int(sel.size());
        if (m == r) {
            if (s < best) {
                best = s;
                best_sel = sel;
            }
            return;
        }
        for (uint32_t i = next_pair; i < ps.pairs.size(); ++i) {
            uint32_t wi = ps.pairs[i].w_idx;
            bool dup = false;
            for (uint32_t pi : sel)
                if (ps.pairs[pi].w_idx == wi) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            BitVec u2 = un | ps.pairs[i].diff;
            uint64_t s2 = u2.count();
            if (completion_lb(s2, m + 1) >= best) continue;
            sel.push_back(i);
            dfs(sel, u2, s2, i + 1);
            sel.pop_back();
        }
    }
};

}  // namespace

std::optional<uint64_t> alpha_closed(int q, int k, int r) {
    Field::get(q);  // validates q
    if (k < 2 || r < 0) fail(Errc::out_of_range, "alpha requires k >= 2, r >= 0");
    if (uint64_t(r) > gaussian_binomial(k, 1, q))
        fail(Errc::out_of_range, "r exceeds the hyperplane count");
    if (r == 0) return 0;
    if (k == 2) return uint64_t(r);
    if (r == 1) return ipow(q, k - 2);
    if (r == 2) return 2 * ipow(q, k - 2) - ipow(q, k - 3);
    if (r <= arc_max_size(q) - 1)
        return uint64_t(r) * ipow(q, k - 2) - binomial(r, 2) * ipow(q, k - 3);
    return std::nullopt;
}

BruteResult alpha_brute_serial(int q, int k, int r, int l, const AlphaGuards& g) {
    if (r < 0) fail(Errc::out_of_range, "r must be nonnegative");
    if (r == 0) return {0, empty_witness(q, k, 0, l)};
    if (r > g.max_r) fail(Errc::too_large, "r exceeds brute-force guard");
    PairSpace ps = build_pairs(q, k, l, g);
    if (uint64_t(r) > ps.ws.size()) fail(Errc::out_of_range, "r exceeds the subspace count");

    uint64_t best = UINT64_MAX;
    std::vector<uint32_t> best_sel, sel;
    // plain exhaustive scan over r-subsets of pairs with pairwise-distinct W
    std::function<void(uint32_t, const BitVec&)> rec = [&](uint32_t next, const BitVec& un) {
        if (int(sel.size()) == r) {
            uint64_t s = un.count();
            if (s < best || (s == best && sel < best_sel)) {
                best = s;
                best_sel = sel;
            }
            return;
        }
        for (uint32_t i = next; i < ps.pairs.size(); ++i) {
            bool dup = false;
            for (uint32_t pi : sel)
                if (ps.pairs[pi].w_idx == ps.pairs[i].w_idx) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            sel.push_back(i);
            rec(i + 1, un | ps.pairs[i].diff);
            sel.pop_back();
        }
    };
    rec(0, BitVec(ps.geom->num_points()));
    return {best, witness_from_pairs(ps, best_sel, q, k, r, l)};
}

BruteResult alpha_brute(int q, int k, int r, int l, const AlphaGuards& g, int workers) {
    if (r < 0) fail(Errc::out_of_range, "r must be nonnegative");
    if (r == 0) return {0, empty_witness(q, k, 0, l)};
    if (r > g.max_r) fail(Errc::too_large, "r exceeds brute-force guard");
    PairSpace ps = build_pairs(q, k, l, g);
    if (uint64_t(r) > ps.ws.size()) fail(Errc::out_of_range, "r exceeds the subspace count");

    uint64_t d_size = ipow(q, k - l - 1);
    uint64_t b_pair = (k - l - 2 >= 0) ? ipow(q, k - l - 2) : 0;

    if (r == 1) return {d_size, witness_from_pairs(ps, {0}, q, k, 1, l)};

    // The group is transitive on (W, U) flags, so some optimal witness
    // contains pair 0; remaining pairs come from other W's.
    auto [seed_val, seed_sel] = greedy_cover(ps, r);

    const size_t first_w_end = ps.w_begin[1];
    std::vector<uint32_t> cand;  // pairs outside W_0
    for (uint32_t i = uint32_t(first_w_end); i < ps.pairs.size(); ++i) cand.push_back(i);

    // Each chunk (choice of the second pair) is searched independently against
    // the greedy seed, so results do not depend on the worker count.
    const int64_t nc = int64_t(cand.size());
    std::vector<uint64_t> chunk_val(nc, UINT64_MAX);
    std::vector<std::vector<uint32_t>> chunk_sel(nc);
#ifdef _OPENMP
    int nt = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
#else
    (void)workers;
#endif
    for (int64_t ci = 0; ci < nc; ++ci) {
        uint32_t second = cand[size_t(ci)];
        BnB local{ps, r, d_size, b_pair, seed_val, {}};
        std::vector<uint32_t> sel{0, second};
        BitVec un = ps.pairs[0].diff | ps.pairs[second].diff;
        uint64_t s2 = un.count();
        if (r == 2) {
            if (s2 < local.best) {
                local.best = s2;
                local.best_sel = sel;
            }
        } else if (local.completion_lb(s2, 2) < local.best) {
            local.dfs(sel, un, s2, second + 1);
        }
        if (!local.best_sel.empty()) {
            chunk_val[ci] = local.best;
            chunk_sel[ci] = std::move(local.best_sel);
        }
    }

    uint64_t best = seed_val;
    std::vector<uint32_t> best_sel = seed_sel;
    for (int64_t ci = 0; ci < nc; ++ci)
        if (chunk_val[ci] < best) {
            best = chunk_val[ci];
            best_sel = chunk_sel[ci];
        }
    return {best, witness_from_pairs(ps, best_sel, q, k, r, l)};
}

std::vector<std::vector<uint8_t>> arc_points(const Field& f) {
    const int q = f.q();
    std::vector<std::vector<uint8_t>> arc;
    for (int t = 0; t < q; ++t)
        arc.push_back({1, uint8_t(t), f.mul(uint8_t(t), uint8_t(t))});
    arc.push_back({0, 0, 1});
    if (q % 2 == 0) arc.push_back({0, 1, 0});  // nucleus
    return arc;
}

CoverWitness alpha_construction(int q, int k, int r) {
    const Field& f = Field::get(q);
    if (k < 3) fail(Errc::out_of_range, "construction requires k >= 3");
    if (r < 0 || r > arc_max_size(q) - 1)
        fail(Errc::out_of_range, "r outside the dual-arc range");
    auto geom = Geometry::get(q, k);
    if (r == 0) return empty_witness(q, k, 0, 1);

    // Work in the quotient plane of the codim-3 subspace {v0 = v1 = v2 = 0};
    // dualize the arc with the identity correlation (point (a,b,c) -> line
    // ax + by + cz = 0), intersect each line with the last one, and lift.
    auto arc = arc_points(f);
    auto plane = Geometry::get(q, 3);

    CoverWitness w;
    w.q = q;
    w.k = k;
    w.r = r;
    w.l = 1;
    w.union_points = BitVec(geom->num_points());

    const auto& last_line = arc[r];  // line r+1 of the dual arc
    for (int i = 0; i < r; ++i) {
        // intersection point of dual lines arc[i], arc[r] in the plane
        Matrix two(f, 2, 3);
        for (int t = 0; t < 3; ++t) {
            two.at(0, t) = arc[i][t];
            two.at(1, t) = last_line[t];
        }
        Matrix inter = nullspace_basis(two);
        if (inter.rows != 1) throw std::logic_error("dual lines must meet in one point");
        auto pt = plane->normalize(inter.row(0));

        Matrix hdual(f, 1, k);
        for (int t = 0; t < 3; ++t) hdual.at(0, t) = arc[i][t];
        Subspace h = geom->subspace_from_dual(std::move(hdual));

        Matrix ann1(f, 1, 3);
        for (int t = 0; t < 3; ++t) ann1.at(0, t) = pt[t];
        Matrix ann = nullspace_basis(ann1);  // 2x3 forms vanishing on the point
        Matrix udual(f, 2, k);
        for (int rr = 0; rr < 2; ++rr)
            for (int t = 0; t < 3; ++t) udual.at(rr, t) = ann.at(rr, t);
        Subspace u = geom->subspace_from_dual(std::move(udual));

        if (!u.points.is_subset_of(h.points))
            throw std::logic_error("inner subspace not inside its hyperplane");
        BitVec diff = h.points;
        diff.andnot_assign(u.points);
        w.union_points |= diff;
        w.hyperplanes.push_back(std::move(h));
        w.inner.push_back(std::move(u));
    }
    w.cardinality = w.union_points.count();
    uint64_t expect = uint64_t(r) * ipow(q, k - 2) - binomial(r, 2) * ipow(q, k - 3);
    if (w.cardinality != expect)
        throw std::logic_error("construction cardinality mismatch");
    return w;
}

namespace {

std::mutex cache_mu;
std::map<std::tuple<int, int, int, int>, AlphaValue> cache;

}  // namespace

AlphaValue alpha_value(int q, int k, int r, int l, const AlphaGuards& g) {
    if (l == 1) {
        auto cf = alpha_closed(q, k, r);
        if (cf) return {*cf, Provenance::closed};
    }
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find({q, k, r, l});
        if (it != cache.end()) return it->second;
    }
    BruteResult br = alpha_brute(q, k, r, l, g);
    AlphaValue v{br.value, Provenance::brute};
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(std::make_tuple(q, k, r, l), v);
    return v;
}

uint64_t bound_M(int q, int k, int n, const AlphaGuards& g) {
    uint64_t npts = gaussian_binomial(k, 1, q);
    if (n < k || uint64_t(n) > npts) fail(Errc::out_of_range, "need k <= n <= [k;1]_q");
    for (int r = 1; uint64_t(r) <= npts; ++r) {
        uint64_t a;
        try {
            a = alpha_value(q, k, r, 1, g).value;
        } catch (const Error& e) {
            if (e.code() == Errc::too_large) break;
            throw;
        }
        if (uint64_t(n) > npts - a) return npts - uint64_t(r) + 1;
    }
    return 0;
}

std::optional<int> exact_m_window(int q, int k, int n, const AlphaGuards& g) {
    uint64_t npts = gaussian_binomial(k, 1, q);
    if (k < 2 || n < k || uint64_t(n) > npts)
        fail(Errc::out_of_range, "need 2 <= k <= n <= [k;1]_q");
    uint64_t prev = 0;  // alpha(k, 0)
    for (int r = 1; uint64_t(r) <= npts; ++r) {
        if (uint64_t(n) > npts - prev) return std::nullopt;  // windows only move down
        uint64_t a;
        try {
            a = alpha_value(q, k, r, 1, g).value;
        } catch (const Error& e) {
            if (e.code() == Errc::too_large) return std::nullopt;
            throw;
        }
        if (uint64_t(n) > npts - a && uint64_t(n) <= npts - prev) return r;
        prev = a;
    }
    return std::nullopt;
}

std::optional<uint64_t> exact_m(int q, int k, int n, const AlphaGuards& g) {
    auto r = exact_m_window(q, k, n, g);
    if (!r) return std::nullopt;
    return gaussian_binomial(k, 1, q) - uint64_t(*r) + 1;
}

LinearCode complement_code(const Field& f, int k, const CoverWitness& w) {
    if (w.l != 1) fail(Errc::out_of_range, "complement codes need a codimension-1 witness");
    if (w.r > 0 && (w.q != f.q() || w.k != k))
        fail(Errc::out_of_range, "witness parameters do not match");
    auto geom = Geometry::get(f.q(), k);
    BitVec mask(geom->num_points());
    const bool has_union = w.union_points.size() == geom->num_points();
    for (uint32_t i = 0; i < geom->num_points(); ++i)
        if (!has_union || !w.union_points.test(i)) mask.set(i);
    if (geom->section_rank(mask, k) != k)
        fail(Errc::degenerate_complement, "complement does not span the space");
    LinearCode c = code_from_points(f, k, mask);
    for (const auto& h : w.hyperplanes) {
        BitVec sec = c.points().mask & h.points;
        if (geom->section_rank(sec, k - 1) == k - 1)
            throw std::logic_error("witness hyperplane is minimal in the complement code");
    }
    return c;
}

std::optional<LinearCode> exact_m_certificate(int q, int k, int n, const AlphaGuards& g) {
    auto rw = exact_m_window(q, k, n, g);
    if (!rw) return std::nullopt;
    const int r = *rw;
    CoverWitness w;
    if (r == 1) {
        w = empty_witness(q, k, 0, 1);
    } else {
        AlphaValue av = alpha_value(q, k, r - 1, 1, g);
        bool try_construction = k >= 3 && r - 1 <= arc_max_size(q) - 1;
        if (try_construction) {
            w = alpha_construction(q, k, r - 1);
            if (w.cardinality != av.value) try_construction = false;
        }
        if (!try_construction) w = alpha_brute(q, k, r - 1, 1, g).witness;
    }
    auto geom = Geometry::get(q, k);
    BitVec comp(geom->num_points());
    for (uint32_t i = 0; i < geom->num_points(); ++i)
        if (!w.union_points.test(i)) comp.set(i);

    // spanning n-subset: basis points first, then lowest indices
    BitVec chosen(geom->num_points());
    std::vector<uint32_t> comp_idx = comp.indices();
    {
        BitVec probe(geom->num_points());
        int rank_now = 0;
        for (uint32_t p : comp_idx) {
            probe.set(p);
            int rk = geom->section_rank(probe, k);
            if (rk > rank_now) {
                rank_now = rk;
                chosen.set(p);
            } else {
                probe.reset(p);
            }
            if (rank_now == k) break;
        }
        if (rank_now < k) return std::nullopt;
    }
    uint64_t have = chosen.count();
    for (uint32_t p : comp_idx) {
        if (have == uint64_t(n)) break;
        if (!chosen.test(p)) {
            chosen.set(p);
            ++have;
        }
    }
    if (have != uint64_t(n)) return std::nullopt;
    return code_from_points(Field::get(q), k, chosen);
}

uint64_t minimal_code_length_bound(int q, int k) {
    if (k < 2) fail(Errc::out_of_range, "requires k >= 2");
    return gaussian_binomial(k, 1, q) - ipow(q, k - 2) + 1;
}

uint64_t bound_Ml(int q, int k, int l, int n, const AlphaGuards& g) {
    if (l < 1 || l > k) fail(Errc::out_of_range, "need 1 <= l <= k");
    if (l == 1) return bound_M(q, k, n, g);
    uint64_t nsub = gaussian_binomial(k, l, q);
    bool any = false;
    for (int r = 1; uint64_t(r) <= nsub && r <= g.max_r; ++r) {
        uint64_t a;
        try {
            a = alpha_value(q, k, r, l, g).value;
        } catch (const Error& e) {
            if (e.code() == Errc::too_large) break;
            throw;
        }
        any = true;
        if (uint64_t(n) > nsub - a) return nsub - uint64_t(r) + 1;
    }
    if (!any) fail(Errc::too_large, "no alpha^l value certifiable under the guards");
    return 0;
}

std::string serialize_witness(const CoverWitness& w) {
    std::ostringstream os;
    os << w.q << ' ' << w.k << ' ' << w.r << ' ' << w.l << '\n';
    for (int i = 0; i < w.r; ++i) {
        os << 'W';
        const Matrix& wm = w.hyperplanes[i].dual_basis;
        for (int rr = 0; rr < wm.rows; ++rr)
            for (int c = 0; c < wm.cols; ++c) os << ' ' << int(wm.at(rr, c));
        os << '\n' << 'U';
        const Matrix& um = w.inner[i].dual_basis;
        for (int rr = 0; rr < um.rows; ++rr)
            for (int c = 0; c < um.cols; ++c) os << ' ' << int(um.at(rr, c));
        os << '\n';
    }
    return os.str();
}

CoverWitness parse_witness(std::istream& in) {
    CoverWitness w;
    if (!(in >> w.q >> w.k >> w.r >> w.l)) fail(Errc::invalid_input, "bad witness header");
    if (w.r < 0 || w.l < 1 || w.l >= w.k) fail(Errc::invalid_input, "bad witness shape");
    auto geom = Geometry::get(w.q, w.k);
    w.union_points = BitVec(geom->num_points());
    auto read_matrix = [&](char expect, int rows) {
        std::string tag;
        if (!(in >> tag) || tag.size() != 1 || tag[0] != expect)
            fail(Errc::invalid_input, "bad witness tag");
        Matrix m(Field::get(w.q), rows, w.k);
        for (int rr = 0; rr < rows; ++rr)
            for (int c = 0; c < w.k; ++c) {
                int v;
                if (!(in >> v) || v < 0 || v >= w.q)
                    fail(Errc::invalid_input, "bad witness entry");
                m.at(rr, c) = uint8_t(v);
            }
        return m;
    };
    for (int i = 0; i < w.r; ++i) {
        Subspace h = geom->subspace_from_dual(read_matrix('W', w.l));
        Subspace u = geom->subspace_from_dual(read_matrix('U', w.l + 1));
        if (!u.points.is_subset_of(h.points))
            fail(Errc::invalid_input, "witness inner subspace not inside its hyperplane");
        BitVec diff = h.points;
        diff.andnot_assign(u.points);
        w.union_points |= diff;
        w.hyperplanes.push_back(std::move(h));
        w.inner.push_back(std::move(u));
    }
    for (int i = 0; i < w.r; ++i)
        for (int j = i + 1; j < w.r; ++j)
            if (w.hyperplanes[i].dual_basis == w.hyperplanes[j].dual_basis)
                fail(Errc::invalid_input, "witness hyperplanes must be distinct");
    w.cardinality = w.union_points.count();
    return w;
}

}  // namespace mincw::alpha
