#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mincw/gf.hpp"

namespace mincw {

/// Dense row-major matrix over GF(q); entries are field element codes.
struct Matrix {
    const Field* field = nullptr;
    int rows = 0, cols = 0;
    std::vector<uint8_t> a;

    Matrix() = default;
    Matrix(const Field& f, int r, int c) : field(&f), rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
    uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }

    std::span<const uint8_t> row(int r) const { return {a.data() + size_t(r) * cols, size_t(cols)}; }
    std::span<uint8_t> row(int r) { return {a.data() + size_t(r) * cols, size_t(cols)}; }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    static Matrix from_rows(const Field& f, const std::vector<std::vector<uint8_t>>& rows_in);
};

struct RrefResult {
    Matrix m;
    int rank = 0;
    std::vector<int> pivots;
};

/// Unique reduced row echelon form. Pivot choice: first nonzero entry in
/// column order, scanning rows top-down.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

/// Rows form a basis of the right nullspace {x : m x^T = 0}.
Matrix nullspace_basis(const Matrix& m);

/// Dimension of the linear span of the given vectors (0 for the empty list).
int span_dim(const Field& f, const std::vector<std::vector<uint8_t>>& vectors);

Matrix transpose(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);

/// Solve x * g = d for a row vector x; nullopt when d is not in the row space.
std::optional<std::vector<uint8_t>> solve_row(const Matrix& g, std::span<const uint8_t> d);

/// Enumerates every rows x cols rref matrix of full row rank, each exactly
/// once (these are canonical forms of the row spaces, so this walks all
/// `rows`-dimensional subspaces of F_q^cols).
void enumerate_rref_matrices(const Field& f, int rows, int cols,
                             const std::function<void(Matrix&)>& fn);

}  // namespace mincw
