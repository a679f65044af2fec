#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mincw/geometry.hpp"

namespace mincw {

/// Subset or multiset of the indexed points of PG(F_q^k).
struct PointSet {
    bool multiset = false;
    BitVec mask;                  // support (points with multiplicity > 0)
    std::vector<uint32_t> mult;   // multiplicity per point index
    uint64_t cardinality() const {
        uint64_t c = 0;
        for (uint32_t m : mult) c += m;
        return c;
    }
};

/// A linear [n,k]_q code together with its cached point multiset in PG(F_q^k).
/// Immutable after construction.
class LinearCode {
public:
    /// Validates rank(gen) = k and absence of zero columns.
    LinearCode(const Field& f, Matrix gen);

    const Field& field() const { return *gen_.field; }
    int n() const { return gen_.cols; }
    int k() const { return gen_.rows; }
    const Matrix& generator() const { return gen_; }
    const Geometry& geometry() const { return *geom_; }
    std::shared_ptr<const Geometry> geometry_ptr() const { return geom_; }
    const PointSet& points() const { return points_; }
    bool is_projective() const { return projective_; }
    uint32_t column_point(int i) const { return col_point_[i]; }

private:
    Matrix gen_;
    std::shared_ptr<const Geometry> geom_;
    std::vector<uint32_t> col_point_;
    PointSet points_;
    bool projective_ = false;
};

/// Code whose columns are the representatives of the masked points, in index
/// order.
LinearCode code_from_points(const Field& f, int k, const BitVec& mask);

LinearCode simplex_code(const Field& f, int k);

/// Collapses multiplicities to 1, keeping the first column per point.
/// Returns the projective code and the number of removed columns.
std::pair<LinearCode, int> reduce_to_projective(const LinearCode& c);

struct MinimalityReport {
    Subspace hyperplane;
    std::vector<int> support;  // coordinate indices
    int weight = 0;
    bool minimal = false;
    /// For non-minimal codewords: a codimension-2 subspace U with
    /// span(P cap H) <= U <= H, canonical (lexicographically least dual basis).
    std::optional<Subspace> witness_codim2;
};

/// Geometric minimality test: the codeword class of hyperplane h is minimal
/// iff the points of c on h span a (k-1)-space.
MinimalityReport is_minimal_hyperplane(const LinearCode& c, const Subspace& h);

/// Number of non-equivalent minimal codewords, counted per hyperplane.
/// workers = 0 uses the OpenMP default; workers = 1 runs the serial reference.
uint64_t count_minimal(const LinearCode& c, int workers = 0);
uint64_t count_minimal_serial(const LinearCode& c);

/// Independent oracle: enumerates all q^k - 1 nonzero codewords and compares
/// supports pairwise; returns the count of minimal ones divided by q - 1.
uint64_t oracle_count_minimal(const LinearCode& c, uint64_t guard = uint64_t(1) << 20);

int min_distance(const LinearCode& c);

/// Maps an l-dimensional subcode (rows of `basis` are codewords spanning it)
/// to its codimension-l subspace: the nullspace of the coefficient matrix M
/// with M * G = basis.
Subspace subspace_of_subcode(const LinearCode& c, const Matrix& basis);

/// Inverse of the above: basis of the subcode associated with subspace w.
Matrix subcode_of_subspace(const LinearCode& c, const Subspace& w);

struct SubcodeSupport {
    std::vector<int> support;
    int weight = 0;
};

SubcodeSupport subcode_support(const LinearCode& c, const Subspace& w);

/// Support minimality of the subcode of w: span(P cap W) = W.
bool is_support_minimal(const LinearCode& c, const Subspace& w);

/// M^l(C): number of support-minimal l-dimensional subcodes (counted per
/// subspace, so l = 1 agrees with count_minimal).
uint64_t count_support_minimal(const LinearCode& c, int l, int workers = 0);
uint64_t count_support_minimal_serial(const LinearCode& c, int l);

/// Independent subcode oracle: enumerates all l-dimensional subcodes in
/// coefficient space and compares their supports pairwise.
uint64_t oracle_count_support_minimal(const LinearCode& c, int l,
                                      uint64_t guard = 2'000'000);

/// l-th generalized Hamming weight d_l = n - max |P cap W| over codim-l W.
int ghw(const LinearCode& c, int l, int workers = 0);

}  // namespace mincw
