#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mincw/code.hpp"

namespace mincw::alpha {

/// Witness for an alpha value: r distinct codim-l subspaces W_i with inner
/// codim-(l+1) subspaces U_i <= W_i; the covered set is U (W_i \ U_i).
struct CoverWitness {
    int q = 0, k = 0, r = 0, l = 1;
    std::vector<Subspace> hyperplanes;  // codim l
    std::vector<Subspace> inner;        // codim l+1
    BitVec union_points;
    uint64_t cardinality = 0;
};

struct AlphaGuards {
    uint64_t max_subspaces = 40;  // cap on [k;l]_q for brute force
    int max_r = 4;
};

enum class Provenance { closed, brute, construction };
const char* provenance_name(Provenance p);

/// Closed-form alpha_q(k,r) where known exactly:
///   r = 0 -> 0;  k = 2 -> r;  r = 1 -> q^{k-2};
///   r = 2, k >= 3 -> 2q^{k-2} - q^{k-3};
///   3 <= r <= q (q odd) or q+1 (q even), k >= 3 -> r q^{k-2} - C(r,2) q^{k-3}.
/// nullopt outside the covered range.
std::optional<uint64_t> alpha_closed(int q, int k, int r);

struct BruteResult {
    uint64_t value = 0;
    CoverWitness witness;
};

/// Exact minimum by exhaustive search with branch-and-bound (first flag fixed
/// by transitivity). Deterministic across worker counts.
BruteResult alpha_brute(int q, int k, int r, int l = 1, const AlphaGuards& g = {},
                        int workers = 0);
/// Straightforward exhaustive reference (no flag fixing, no pruning); used to
/// validate alpha_brute on small instances.
BruteResult alpha_brute_serial(int q, int k, int r, int l = 1, const AlphaGuards& g = {});

/// Arc in PG(F_q^3): the conic {(1,t,t^2)} plus (0,0,1), plus the nucleus
/// (0,1,0) for even q. Size q+1 (q odd) or q+2 (q even); no three collinear.
std::vector<std::vector<uint8_t>> arc_points(const Field& f);

/// Dual-arc witness of cardinality exactly r q^{k-2} - C(r,2) q^{k-3}
/// (l = 1, k >= 3, r + 1 at most the arc size).
CoverWitness alpha_construction(int q, int k, int r);

struct AlphaValue {
    uint64_t value = 0;
    Provenance prov = Provenance::closed;
};

/// Certified exact value: closed form when covered, else brute force within
/// guards (cached). Throws TooLarge when not certifiable.
AlphaValue alpha_value(int q, int k, int r, int l = 1, const AlphaGuards& g = {});

/// Largest certified lower bound on M(C) for projective [n,k]_q codes:
/// [k;1]_q - r + 1 for the least certified r with n > [k;1]_q - alpha_q(k,r);
/// 0 when no r is certified.
uint64_t bound_M(int q, int k, int n, const AlphaGuards& g = {});

/// Exact m_q(n,k) when some certified window
/// [k;1]_q - alpha(k,r) < n <= [k;1]_q - alpha(k,r-1) applies.
std::optional<uint64_t> exact_m(int q, int k, int n, const AlphaGuards& g = {});
std::optional<int> exact_m_window(int q, int k, int n, const AlphaGuards& g = {});

/// Code on the complement of the witness's covered set. Every witness
/// hyperplane is non-minimal in the result (checked).
LinearCode complement_code(const Field& f, int k, const CoverWitness& w);

/// Length-n extremal certificate for an exact_m window value: spanning
/// n-subset of the complement of an optimal (r-1)-witness.
std::optional<LinearCode> exact_m_certificate(int q, int k, int n, const AlphaGuards& g = {});

/// Tight length bound for projective minimal codes: [k;1]_q - q^{k-2} + 1.
uint64_t minimal_code_length_bound(int q, int k);

/// Prop-3 analogue of bound_M for subcode supports, alpha^l by brute force.
uint64_t bound_Ml(int q, int k, int l, int n, const AlphaGuards& g = {});

std::string serialize_witness(const CoverWitness& w);
CoverWitness parse_witness(std::istream& in);

}  // namespace mincw::alpha
