#include "mincw/search.hpp"

#include "mincw/alpha.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mincw::search {

const char* method_name(Method m) {
    switch (m) {
        case Method::brute_subset: return "brute-subset";
        case Method::canonical_augmentation: return "canonical-augmentation";
        case Method::prop2_window: return "prop2-window";
    }
    return "?";
}

namespace {

void require_canonical_tables(const Geometry& g) {
    if (g.space_size() > g.limits().max_packed || !g.has_packed_tables())
        fail(Errc::too_large, "canonical forms need packed tables for this q^k");
}

// Backtracking over group images. A group element is fixed by the images of
// the unit vectors e_{k-1}, e_{k-2}, ...; after level j is chosen, the image
// of every point whose packed value is below q^{j+1} is determined, which
// pins the candidate word on the index range [0, [j+1;1]_q). Words compare in
// index-word order: at the first differing index, the word containing it is
// smaller.
struct CanonCtx {
    const Geometry& g;
    int q, k;
    uint32_t qk, npts;
    std::vector<uint32_t> seg_base;  // seg_base[j] = [j;1]_q; segment j has q^j points
    std::vector<uint32_t> img;       // image of each packed domain vector
    std::vector<uint8_t> inspan;     // image-span membership by packed value
    const BitVec* T;
    uint64_t total_ones;

    CanonCtx(const Geometry& gg, const BitVec& t)
        : g(gg), q(gg.field().q()), k(gg.k()), qk(uint32_t(gg.space_size())),
          npts(gg.num_points()), T(&t), total_ones(t.count()) {
        seg_base.resize(k + 1);
        uint32_t s = 0;
        for (int j = 0; j <= k; ++j) {
            seg_base[j] = s;
            s = s * uint32_t(q) + 1;
        }
        img.assign(qk, 0);
        inspan.assign(qk, 0);
        inspan[0] = 1;
    }

    uint32_t seg_len(int j) const { return seg_base[j + 1] - seg_base[j]; }  // = q^j

    // fills the images of all packed vectors with leading digit >= 1 at level j
    void extend(int j, uint32_t hj) {
        uint32_t qj = seg_len(j);
        img[qj] = hj;
        for (uint32_t t = 1; t < qj; ++t) img[qj + t] = g.add_packed(hj, img[t]);
        for (int c = 2; c < q; ++c) {
            uint32_t base = g.smul_packed(uint8_t(c), hj);
            for (uint32_t t = 0; t < qj; ++t)
                img[uint32_t(c) * qj + t] = g.add_packed(base, img[t]);
        }
        for (uint32_t m = qj; m < qj * uint32_t(q); ++m) inspan[img[m]] = 1;
    }
    void retract(int j) {
        uint32_t qj = seg_len(j);
        for (uint32_t m = qj; m < qj * uint32_t(q); ++m) inspan[img[m]] = 0;
    }
};

// is_canonical: search for any image word strictly smaller than T's own word.
struct CanonTest : CanonCtx {
    using CanonCtx::CanonCtx;

    bool smaller_exists(int j, uint64_t ones) {
        if (ones == total_ones) return false;  // all of T is matched; rest is forced equal
        if (j == k) return false;
        uint32_t qj = seg_len(j);
        for (uint32_t hj = 1; hj < qk; ++hj) {
            if (inspan[hj]) continue;
            int cmp = 0;
            uint64_t ones_local = 0;
            for (uint32_t t = 0; t < qj; ++t) {
                uint32_t imv = t == 0 ? hj : g.add_packed(hj, img[t]);
                bool cand = T->test(g.index_of_packed(imv));
                bool targ = T->test(seg_base[j] + t);
                if (cand != targ) {
                    cmp = cand ? 1 : -1;
                    break;
                }
                ones_local += cand;
            }
            if (cmp > 0) return true;  // candidate word is smaller
            if (cmp < 0) continue;
            extend(j, hj);
            bool found = smaller_exists(j + 1, ones + ones_local);
            retract(j);
            if (found) return true;
        }
        return false;
    }
};

int cmp_prefix(const BitVec& a, const BitVec& b, uint32_t nbits) {
    size_t full = nbits / 64;
    for (size_t i = 0; i < full; ++i) {
        uint64_t d = a.word(i) ^ b.word(i);
        if (d) {
            uint64_t low = d & (~d + 1);
            return (a.word(i) & low) ? -1 : 1;
        }
    }
    uint32_t rem = nbits % 64;
    if (rem) {
        uint64_t m = (uint64_t(1) << rem) - 1;
        uint64_t d = (a.word(full) ^ b.word(full)) & m;
        if (d) {
            uint64_t low = d & (~d + 1);
            return (a.word(full) & low) ? -1 : 1;
        }
    }
    return 0;
}

// canonical_form: branch and bound toward the minimum image word. `best` is
// compared against the current partial word afresh at every node, so later
// improvements prune earlier committed prefixes correctly.
struct CanonMin : CanonCtx {
    BitVec cur, best;

    CanonMin(const Geometry& gg, const BitVec& t) : CanonCtx(gg, t), cur(gg.num_points()), best(t) {}

    void finalize() {
        if (cur.cmp_indexword(best) < 0) best = cur;
    }

    void dfs(int j, uint64_t ones) {
        if (ones == total_ones || j == k) {
            finalize();
            return;
        }
        uint32_t qj = seg_len(j);
        for (uint32_t hj = 1; hj < qk; ++hj) {
            if (inspan[hj]) continue;
            uint64_t ones_local = 0;
            std::array<uint32_t, 64> setbuf;
            std::vector<uint32_t> setbits_large;
            size_t nset = 0;
            for (uint32_t t = 0; t < qj; ++t) {
                uint32_t imv = t == 0 ? hj : g.add_packed(hj, img[t]);
                if (T->test(g.index_of_packed(imv))) {
                    uint32_t pos = seg_base[j] + t;
                    cur.set(pos);
                    if (nset < setbuf.size()) setbuf[nset] = pos;
                    else setbits_large.push_back(pos);
                    ++nset;
                    ++ones_local;
                }
            }
            if (cmp_prefix(cur, best, seg_base[j + 1]) <= 0) {
                extend(j, hj);
                dfs(j + 1, ones + ones_local);
                retract(j);
            }
            for (size_t i = 0; i < std::min(nset, setbuf.size()); ++i) cur.reset(setbuf[i]);
            for (uint32_t pos : setbits_large) cur.reset(pos);
        }
    }
};

}  // namespace

bool is_canonical(const Geometry& g, const BitVec& pts) {
    require_canonical_tables(g);
    if (pts.count() == 0) return true;
    if (!pts.test(0)) return false;  // the group is transitive on points
    CanonTest ctx(g, pts);
    return !ctx.smaller_exists(0, 0);
}

BitVec canonical_form(const Geometry& g, const BitVec& pts) {
    require_canonical_tables(g);
    if (pts.count() == 0) return pts;
    CanonMin ctx(g, pts);
    ctx.dfs(0, 0);
    return ctx.best;
}

namespace {

uint64_t count_minimal_masked(const Geometry& g, const BitVec& pts) {
    const auto& hps = g.hyperplanes();
    const int k = g.k();
    uint64_t m = 0;
    for (const auto& h : hps) {
        BitVec sec = pts & h.points;
        if (g.section_rank(sec, k - 1) == k - 1) ++m;
    }
    return m;
}

bool has_weight1(const Geometry& g, const BitVec& pts, int n) {
    for (const auto& h : g.hyperplanes())
        if (int64_t((pts & h.points).count()) >= int64_t(n) - 1) return true;
    return false;
}

struct Orderly {
    const Geometry& g;
    const EnumerateOptions& opt;
    const std::function<void(const BitVec&)>& visit;
    bool serialize_visit;
    SearchStats stats;

    Orderly(const Geometry& gg, const EnumerateOptions& o,
            const std::function<void(const BitVec&)>& v, bool ser)
        : g(gg), opt(o), visit(v), serialize_visit(ser) {}

    void emit(const BitVec& t, int rank_now) {
        bool ok = !opt.spanning_only || rank_now == g.k();
        if (ok && opt.restrict_min_dist_2 && has_weight1(g, t, opt.n)) ok = false;
        if (!ok) return;
        ++stats.visited;
        if (serialize_visit) {
#ifdef _OPENMP
#pragma omp critical(mincw_orderly_visit)
#endif
            visit(t);
        } else {
            visit(t);
        }
    }

    // extends T (current size `size`, maximum index `maxidx`) up to stop_size;
    // sets of size stop_size are either emitted (stop_size == n) or collected
    void dfs(BitVec& t, int maxidx, int size, int stop_size,
             std::vector<std::vector<uint32_t>>* collect) {
        const int n = opt.n, k = g.k();
        const int last = int(g.num_points()) - (n - size);  // leave room for the rest
        for (int x = maxidx + 1; x <= last; ++x) {
            t.set(uint32_t(x));
            ++stats.nodes;
            int rk = g.section_rank(t, k);
            if (opt.spanning_only && rk + (n - size - 1) < k) {
                t.reset(uint32_t(x));
                continue;
            }
            if (is_canonical(g, t)) {
                ++stats.canonical;
                if (size + 1 == stop_size) {
                    if (stop_size == n) {
                        emit(t, rk);
                    } else if (collect) {
                        collect->push_back(t.indices());
                    }
                } else {
                    dfs(t, x, size + 1, stop_size, collect);
                }
            }
            t.reset(uint32_t(x));
        }
    }
};

}  // namespace

SearchStats enumerate_projective_codes(const Geometry& g, const EnumerateOptions& opt,
                                       const std::function<void(const BitVec&)>& visit,
                                       const Checkpoint* resume, Checkpoint* save) {
    require_canonical_tables(g);
    if (opt.n < 1 || uint32_t(opt.n) > g.num_points())
        fail(Errc::out_of_range, "set size out of range");

    const int depth = std::max(1, opt.partition_depth);
    const int d0 = std::min(depth, opt.n);

    std::vector<std::vector<uint32_t>> roots;
    SearchStats total;

    if (resume) {
        if (resume->q != g.field().q() || resume->k != g.k() || resume->depth != d0)
            fail(Errc::invalid_input, "checkpoint does not match this search");
        roots = resume->roots;
    } else {
        Orderly phase1(g, opt, visit, false);
        BitVec t(g.num_points());
        phase1.dfs(t, -1, 0, d0, &roots);
        total = phase1.stats;
    }

    if (save) {
        save->q = g.field().q();
        save->k = g.k();
        save->n = opt.n;
        save->depth = d0;
        save->restrict_min_dist_2 = opt.restrict_min_dist_2;
        save->roots = roots;
    }

    if (d0 == opt.n) {
        if (resume) {
            // roots are the final sets; emit them directly
            Orderly em(g, opt, visit, false);
            for (const auto& r : roots) {
                BitVec t = BitVec::from_indices(g.num_points(), r);
                em.emit(t, g.section_rank(t, g.k()));
            }
            total.visited += em.stats.visited;
            total.canonical += roots.size();
        }
        return total;
    }

    const int64_t nr = int64_t(roots.size());
    std::vector<SearchStats> partial(nr);
#ifdef _OPENMP
    int nt = opt.workers > 0 ? opt.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
    for (int64_t i = 0; i < nr; ++i) {
        Orderly worker(g, opt, visit, true);
        BitVec t = BitVec::from_indices(g.num_points(), roots[size_t(i)]);
        worker.dfs(t, int(roots[size_t(i)].back()), d0, opt.n, nullptr);
        partial[size_t(i)] = worker.stats;
    }
    for (const auto& s : partial) {
        total.nodes += s.nodes;
        total.canonical += s.canonical;
        total.visited += s.visited;
    }
    return total;
}

// ---------------------------------------------------------------------------
// brute-subset engine
// ---------------------------------------------------------------------------

namespace {

struct PascalTable {
    std::array<std::array<uint64_t, 65>, 65> c{};
    PascalTable() {
        for (int n = 0; n <= 64; ++n) {
            c[n][0] = 1;
            for (int j = 1; j <= n; ++j)
                c[n][j] = c[n - 1][j - 1] + (j <= n - 1 ? c[n - 1][j] : 0);
        }
    }
};
const PascalTable pascal;

std::vector<int> unrank_combination(int npts, int n, uint64_t r) {
    std::vector<int> c(n);
    int x = 0;
    for (int pos = 0; pos < n; ++pos) {
        for (int cand = x;; ++cand) {
            uint64_t cnt = pascal.c[npts - 1 - cand][n - 1 - pos];
            if (r < cnt) {
                c[pos] = cand;
                x = cand + 1;
                break;
            }
            r -= cnt;
        }
    }
    return c;
}

bool next_combination(std::vector<int>& c, int npts) {
    int n = int(c.size());
    int i = n - 1;
    while (i >= 0 && c[i] == npts - n + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
    return true;
}

// rank of a set of points given as packed GF(2) vectors
int rank_q2(const std::vector<uint32_t>& pp, uint64_t mask, int cap) {
    uint32_t basis[32] = {0};
    int rank = 0;
    while (mask) {
        uint32_t i = uint32_t(std::countr_zero(mask));
        mask &= mask - 1;
        uint32_t v = pp[i];
        while (v) {
            int hb = 31 - std::countl_zero(v);
            if (!basis[hb]) {
                basis[hb] = v;
                if (++rank == cap) return rank;
                break;
            }
            v ^= basis[hb];
        }
    }
    return rank;
}

// generic small echelon rank over uint8 coordinates
struct EchelonRank {
    const Geometry& g;
    int rank_mask(uint64_t mask, int cap) const {
        const Field& f = g.field();
        const int k = g.k();
        std::array<std::array<uint8_t, 16>, 16> basis{};
        std::array<bool, 16> used{};
        int rank = 0;
        while (mask) {
            uint32_t i = uint32_t(std::countr_zero(mask));
            mask &= mask - 1;
            std::array<uint8_t, 16> v{};
            auto pt = g.point(i);
            std::copy(pt.begin(), pt.end(), v.begin());
            for (int pos = 0; pos < k; ++pos) {
                if (v[pos] == 0) continue;
                if (!used[pos]) {
                    uint8_t s = f.inv(v[pos]);
                    for (int t = pos; t < k; ++t) v[t] = f.mul(s, v[t]);
                    basis[pos] = v;
                    used[pos] = true;
                    ++rank;
                    break;
                }
                uint8_t cc = v[pos];
                for (int t = pos; t < k; ++t) v[t] = f.sub(v[t], f.mul(cc, basis[pos][t]));
            }
            if (rank == cap) return rank;
        }
        return rank;
    }
};

struct SmallScanResult {
    bool found = false;
    uint64_t value = 0;
    uint64_t mask = 0;
};

// -1 if a is the smaller index word (same popcount assumed)
int cmp_mask_word(uint64_t a, uint64_t b) {
    uint64_t d = a ^ b;
    if (!d) return 0;
    uint64_t low = d & (~d + 1);
    return (a & low) ? -1 : 1;
}

struct SmallSubsetScan {
    const Geometry& g;
    int n, k, q;
    uint32_t npts;
    Mode mode;
    std::vector<uint64_t> hmask;
    std::vector<uint32_t> pp;
    EchelonRank er;

    SmallSubsetScan(const Geometry& gg, int nn, Mode md) : g(gg), n(nn), k(gg.k()),
          q(gg.field().q()), npts(gg.num_points()), mode(md), er{gg} {
        const auto& hps = g.hyperplanes();
        hmask.reserve(hps.size());
        for (const auto& h : hps) hmask.push_back(h.points.word(0));
        if (q == 2) {
            pp.reserve(npts);
            for (uint32_t i = 0; i < npts; ++i) pp.push_back(g.packed_point(i));
        }
    }

    int rank_of(uint64_t mask, int cap) const {
        return q == 2 ? rank_q2(pp, mask, cap) : er.rank_mask(mask, cap);
    }

    uint64_t count_minimal_mask(uint64_t mask) const {
        uint64_t m = 0;
        for (uint64_t h : hmask) {
            uint64_t sec = mask & h;
            if (std::popcount(sec) < k - 1) continue;
            if (rank_of(sec, k - 1) == k - 1) ++m;
        }
        return m;
    }

    SmallScanResult scan_range(uint64_t lo, uint64_t hi) const {
        SmallScanResult best;
        if (lo >= hi) return best;
        std::vector<int> combo = unrank_combination(int(npts), n, lo);
        for (uint64_t r = lo; r < hi; ++r) {
            uint64_t mask = 0;
            for (int x : combo) mask |= uint64_t(1) << x;
            if (rank_of(mask, k) == k) {
                uint64_t v = count_minimal_mask(mask);
                bool better;
                if (!best.found) better = true;
                else if (mode == Mode::minimize) better = v < best.value;
                else better = v > best.value;
                if (better) best = {true, v, mask};
            }
            if (r + 1 < hi) next_combination(combo, int(npts));
        }
        return best;
    }
};

TableEntry entry_from_mask(const Geometry& g, int n, uint64_t value, uint64_t mask, Method m) {
    BitVec b(g.num_points());
    for (uint32_t i = 0; i < g.num_points(); ++i)
        if ((mask >> i) & 1) b.set(i);
    LinearCode code = code_from_points(g.field(), g.k(), b);
    TableEntry e;
    e.n = n;
    e.k = g.k();
    e.value = value;
    e.certificate = code.generator();
    e.method = m;
    return e;
}

// serial reference: plain loop over all n-subsets in lexicographic order
std::optional<TableEntry> subset_engine_serial(const Geometry& g, int n, Mode mode) {
    SmallSubsetScan scan(g, n, mode);
    uint64_t total = pascal.c[g.num_points()][n];
    SmallScanResult best = scan.scan_range(0, total);
    if (!best.found) return std::nullopt;
    return entry_from_mask(g, n, best.value, best.mask, Method::brute_subset);
}

std::optional<TableEntry> subset_engine_small(const Geometry& g, int n, Mode mode, int workers) {
    if (workers == 1) return subset_engine_serial(g, n, mode);
    SmallSubsetScan scan(g, n, mode);
    uint64_t total = pascal.c[g.num_points()][n];
#ifdef _OPENMP
    int nt = workers > 0 ? workers : omp_get_max_threads();
#else
    int nt = 1;
    (void)workers;
#endif
    uint64_t nchunks = std::min<uint64_t>(total, uint64_t(nt) * 8);
    if (nchunks == 0) return std::nullopt;
    std::vector<SmallScanResult> results(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
    for (int64_t c = 0; c < int64_t(nchunks); ++c) {
        uint64_t lo = total * uint64_t(c) / nchunks;
        uint64_t hi = total * uint64_t(c + 1) / nchunks;
        results[size_t(c)] = scan.scan_range(lo, hi);
    }
    SmallScanResult best;
    for (const auto& r : results) {
        if (!r.found) continue;
        bool better;
        if (!best.found) better = true;
        else if (mode == Mode::minimize)
            better = r.value < best.value || (r.value == best.value && cmp_mask_word(r.mask, best.mask) < 0);
        else
            better = r.value > best.value || (r.value == best.value && cmp_mask_word(r.mask, best.mask) < 0);
        if (better) best = r;
    }
    if (!best.found) return std::nullopt;
    return entry_from_mask(g, n, best.value, best.mask, Method::brute_subset);
}

// fallback for N > 64: generic bit-vector subsets, serial
std::optional<TableEntry> subset_engine_big(const Geometry& g, int n, Mode mode) {
    const uint32_t npts = g.num_points();
    const int k = g.k();
    std::vector<int> combo(n);
    for (int i = 0; i < n; ++i) combo[i] = i;
    std::optional<TableEntry> best;
    do {
        BitVec mask(npts);
        for (int x : combo) mask.set(uint32_t(x));
        if (g.section_rank(mask, k) != k) continue;
        uint64_t v = count_minimal_masked(g, mask);
        bool better = !best;
        if (best) better = (mode == Mode::minimize) ? v < best->value : v > best->value;
        if (better) {
            LinearCode code = code_from_points(g.field(), k, mask);
            TableEntry e;
            e.n = n;
            e.k = k;
            e.value = v;
            e.certificate = code.generator();
            e.method = Method::brute_subset;
            best = std::move(e);
        }
    } while (next_combination(combo, int(npts)));
    return best;
}

Matrix lengthen_certificate(const Field& f, const Matrix& sub) {
    // embed an [n-1, k-1] certificate in a hyperplane and add one point off it
    Matrix gen(f, sub.rows + 1, sub.cols + 1);
    gen.at(0, 0) = 1;
    for (int r = 0; r < sub.rows; ++r)
        for (int c = 0; c < sub.cols; ++c) gen.at(r + 1, c + 1) = sub.at(r, c);
    return gen;
}

}  // namespace

TableEntry m_value(int q, int k, int n, Mode mode, Engine engine, const SearchGuards& guards,
                   int workers, const Checkpoint* resume, Checkpoint* save) {
    auto geom = Geometry::get(q, k);
    const uint32_t npts = geom->num_points();
    if (k < 1 || n < k || uint32_t(n) > npts)
        fail(Errc::out_of_range, "need 1 <= k <= n <= [k;1]_q");

    if (engine == Engine::automatic) {
        uint64_t cnt = binomial_capped(npts, uint64_t(n), guards.max_subsets);
        engine = cnt <= guards.max_subsets ? Engine::subset : Engine::canonical;
    }

    if (engine == Engine::subset) {
        uint64_t cnt = binomial_capped(npts, uint64_t(n), guards.max_subsets);
        if (cnt > guards.max_subsets)
            fail(Errc::guard_exceeded, "subset count exceeds the brute-force guard");
        std::optional<TableEntry> e = npts <= 64 ? subset_engine_small(*geom, n, mode, workers)
                                                 : subset_engine_big(*geom, n, mode);
        if (!e) fail(Errc::out_of_range, "no spanning point set of this size");
        return *e;
    }

    // canonical augmentation with the weight-1 reduction of the search space
    if (k == 1) {
        TableEntry e;
        e.n = n;
        e.k = 1;
        e.value = 1;
        e.certificate = Matrix(Field::get(q), 1, 1);
        e.certificate.at(0, 0) = 1;
        e.method = Method::canonical_augmentation;
        return e;
    }
    require_canonical_tables(*geom);

    EnumerateOptions opt;
    opt.n = n;
    opt.spanning_only = true;
    opt.restrict_min_dist_2 = true;
    opt.workers = workers;
    opt.partition_depth = guards.partition_depth;

    struct Best {
        bool found = false;
        uint64_t value = 0;
        BitVec word;
    } best;
    auto visitor = [&](const BitVec& t) {
        uint64_t v = count_minimal_masked(*geom, t);
        bool better;
        if (!best.found) better = true;
        else if (mode == Mode::minimize)
            better = v < best.value || (v == best.value && t.cmp_indexword(best.word) < 0);
        else
            better = v > best.value || (v == best.value && t.cmp_indexword(best.word) < 0);
        if (better) best = {true, v, t};
    };
    enumerate_projective_codes(*geom, opt, visitor, resume, save);

    // codes with a weight-1 coordinate reduce to [n-1, k-1] codes
    std::optional<TableEntry> blended;
    uint64_t sub_npts = gaussian_binomial(k - 1, 1, q);
    if (n - 1 >= k - 1 && uint64_t(n - 1) <= sub_npts && k - 1 >= 1) {
        TableEntry sub = m_value(q, k - 1, n - 1, mode, Engine::automatic, guards, workers);
        TableEntry e;
        e.n = n;
        e.k = k;
        e.value = sub.value + 1;
        e.certificate = lengthen_certificate(Field::get(q), sub.certificate);
        e.method = Method::canonical_augmentation;
        blended = std::move(e);
    }

    std::optional<TableEntry> searched;
    if (best.found) {
        LinearCode code = code_from_points(Field::get(q), k, best.word);
        TableEntry e;
        e.n = n;
        e.k = k;
        e.value = best.value;
        e.certificate = code.generator();
        e.method = Method::canonical_augmentation;
        searched = std::move(e);
    }

    if (!searched && !blended)
        throw std::logic_error("no candidate found for m-value");
    if (!searched) return *blended;
    if (!blended) return *searched;
    if (mode == Mode::minimize)
        return blended->value < searched->value ? *blended : *searched;
    return blended->value > searched->value ? *blended : *searched;
}

std::vector<TableEntry> m_table(int q, int nmax, int kmax, Mode mode, const SearchGuards& guards,
                                int workers) {
    std::vector<TableEntry> out;
    for (int k = 1; k <= kmax; ++k) {
        uint64_t npts = gaussian_binomial(k, 1, q);
        for (int n = k; n <= nmax && uint64_t(n) <= npts; ++n) {
            TableEntry e;
            e.n = n;
            e.k = k;
            bool done = false;
            if (mode == Mode::minimize && k >= 2) {
                auto exact = alpha::exact_m(q, k, n);
                if (exact) {
                    e.value = *exact;
                    e.method = Method::prop2_window;
                    auto cert = alpha::exact_m_certificate(q, k, n);
                    if (cert) {
                        e.certificate = cert->generator();
                        done = true;
                    }
                }
            }
            if (!done) {
                try {
                    e = m_value(q, k, n, mode, Engine::automatic, guards, workers);
                } catch (const Error& err) {
                    if (err.code() != Errc::guard_exceeded && err.code() != Errc::too_large) throw;
                    e.guard_exceeded = true;
                }
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

uint64_t subset_class_count(const Geometry& g, int n, const SearchGuards& guards, int workers) {
    require_canonical_tables(g);
    const uint32_t npts = g.num_points();
    const int k = g.k();
    if (npts > 64) fail(Errc::too_large, "class partition supported up to 64 points");
    uint64_t total = binomial_capped(npts, uint64_t(n), guards.max_subsets);
    if (total > guards.max_subsets)
        fail(Errc::guard_exceeded, "subset count exceeds the brute-force guard");

#ifdef _OPENMP
    int nt = workers > 0 ? workers : omp_get_max_threads();
#else
    int nt = 1;
    (void)workers;
#endif
    uint64_t nchunks = std::min<uint64_t>(total, uint64_t(nt) * 4);
    if (nchunks == 0) return 0;
    std::vector<std::set<std::vector<uint64_t>>> parts(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
    for (int64_t c = 0; c < int64_t(nchunks); ++c) {
        uint64_t lo = total * uint64_t(c) / nchunks;
        uint64_t hi = total * uint64_t(c + 1) / nchunks;
        if (lo >= hi) continue;
        std::vector<int> combo = unrank_combination(int(npts), n, lo);
        for (uint64_t r = lo; r < hi; ++r) {
            BitVec mask(npts);
            for (int x : combo) mask.set(uint32_t(x));
            if (g.section_rank(mask, k) == k) {
                BitVec canon = canonical_form(g, mask);
                std::vector<uint64_t> key(canon.nwords());
                for (size_t wi = 0; wi < canon.nwords(); ++wi) key[wi] = canon.word(wi);
                parts[size_t(c)].insert(std::move(key));
            }
            if (r + 1 < hi) next_combination(combo, int(npts));
        }
    }
    std::set<std::vector<uint64_t>> all;
    for (auto& p : parts) all.merge(p);
    return all.size();
}

void save_checkpoint(std::ostream& os, const Checkpoint& cp) {
    os << "mincw-checkpoint 1\n";
    os << cp.q << ' ' << cp.k << ' ' << cp.n << ' ' << cp.depth << ' '
       << int(cp.restrict_min_dist_2) << '\n';
    os << cp.roots.size() << '\n';
    for (const auto& r : cp.roots) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
        os << '\n';
    }
}

Checkpoint load_checkpoint(std::istream& in) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "mincw-checkpoint" || version != 1)
        fail(Errc::invalid_input, "not a checkpoint file");
    Checkpoint cp;
    int restrict_flag = 0;
    size_t count = 0;
    if (!(in >> cp.q >> cp.k >> cp.n >> cp.depth >> restrict_flag >> count))
        fail(Errc::invalid_input, "bad checkpoint header");
    cp.restrict_min_dist_2 = restrict_flag != 0;
    cp.roots.resize(count);
    for (auto& r : cp.roots) {
        r.resize(size_t(cp.depth));
        for (auto& x : r)
            if (!(in >> x)) fail(Errc::invalid_input, "bad checkpoint roots");
    }
    return cp;
}

}  // namespace mincw::search
