#pragma once

#include <iosfwd>

#include "mincw/code.hpp"

namespace mincw::search {

struct SearchGuards {
    uint64_t max_subsets = 100'000'000;  // brute-subset cap on C(N, n)
    int partition_depth = 6;             // split depth for parallel augmentation
};

enum class Engine { automatic, subset, canonical };
enum class Mode { minimize, maximize };
enum class Method { brute_subset, canonical_augmentation, prop2_window };

const char* method_name(Method m);

/// Lexicographically least membership bit-vector in the GL(k,q)-orbit of the
/// point set (backtracking over group images with prefix pruning). Requires
/// the geometry's packed tables.
BitVec canonical_form(const Geometry& g, const BitVec& pts);
bool is_canonical(const Geometry& g, const BitVec& pts);

struct SearchStats {
    uint64_t nodes = 0;      // candidate augmentations tested
    uint64_t canonical = 0;  // accepted canonical sets, all sizes
    uint64_t visited = 0;    // size-n representatives passed to the visitor
};

struct EnumerateOptions {
    int n = 0;
    bool spanning_only = true;
    bool restrict_min_dist_2 = false;
    int workers = 0;
    int partition_depth = 6;
};

/// Checkpoint: the canonical sets at the partition depth, from which the
/// remaining augmentation subtrees can be resumed.
struct Checkpoint {
    int q = 0, k = 0, n = 0, depth = 0;
    bool restrict_min_dist_2 = false;
    std::vector<std::vector<uint32_t>> roots;
};

/// Orderly generation: extends point sets one index at a time and keeps a
/// child only when it is canonical, visiting exactly one representative per
/// equivalence class of size-n point sets (spanning ones when requested).
/// Visitor calls are serialized.
SearchStats enumerate_projective_codes(const Geometry& g, const EnumerateOptions& opt,
                                       const std::function<void(const BitVec&)>& visit,
                                       const Checkpoint* resume = nullptr,
                                       Checkpoint* save = nullptr);

struct TableEntry {
    int n = 0, k = 0;
    uint64_t value = 0;
    Matrix certificate;  // generator of an extremal code
    Method method = Method::brute_subset;
    bool guard_exceeded = false;
};

/// Exact m_q(n,k) (or M_q(n,k) in maximize mode) with an extremal certificate.
TableEntry m_value(int q, int k, int n, Mode mode = Mode::minimize,
                   Engine engine = Engine::automatic, const SearchGuards& g = {},
                   int workers = 0, const Checkpoint* resume = nullptr,
                   Checkpoint* save = nullptr);

inline TableEntry M_value(int q, int k, int n, Engine engine = Engine::automatic,
                          const SearchGuards& g = {}, int workers = 0) {
    return m_value(q, k, n, Mode::maximize, engine, g, workers);
}

/// Grid of m/M values for k <= kmax, n <= nmax, blending exact-window values
/// with searched ones; guard-exceeded entries are marked, not fatal.
std::vector<TableEntry> m_table(int q, int nmax, int kmax, Mode mode = Mode::minimize,
                                const SearchGuards& g = {}, int workers = 0);

/// Number of equivalence classes of spanning size-n point sets, computed the
/// slow way: enumerate subsets and partition by canonical form. Cross-check
/// for the orderly generator.
uint64_t subset_class_count(const Geometry& g, int n, const SearchGuards& guards = {},
                            int workers = 0);

void save_checkpoint(std::ostream& os, const Checkpoint& cp);
Checkpoint load_checkpoint(std::istream& in);

}  // namespace mincw::search
