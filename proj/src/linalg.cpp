#include "mincw/linalg.hpp"

#include <algorithm>

namespace mincw {

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<uint8_t>>& rows_in) {
    int r = int(rows_in.size());
    int c = r ? int(rows_in[0].size()) : 0;
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows_in[i].size()) != c)
            fail(Errc::dimension_mismatch, "rows of unequal length");
        std::copy(rows_in[i].begin(), rows_in[i].end(), m.row(i).begin());
    }
    return m;
}

namespace {

// In-place reduced elimination on a working copy; returns pivot columns.
std::vector<int> eliminate(Matrix& w) {
    const Field& f = *w.field;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int pr = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(pr, j), w.at(r, j));
        uint8_t s = f.inv(w.at(r, c));
        if (s != 1)
            for (int j = 0; j < w.cols; ++j) w.at(r, j) = f.mul(w.at(r, j), s);
        for (int i = 0; i < w.rows; ++i) {
            if (i == r) continue;
            uint8_t v = w.at(i, c);
            if (v == 0) continue;
            // row_i -= v * row_r
            for (int j = 0; j < w.cols; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(v, w.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// GF(2) fast path: rows packed into 64-bit words, XOR elimination.
std::vector<int> eliminate_q2(Matrix& w) {
    int words = (w.cols + 63) / 64;
    std::vector<uint64_t> rows(size_t(w.rows) * words, 0);
    auto bit = [&](int i, int c) -> uint64_t { return (rows[size_t(i) * words + c / 64] >> (c % 64)) & 1; };
    for (int i = 0; i < w.rows; ++i)
        for (int c = 0; c < w.cols; ++c)
            if (w.at(i, c)) rows[size_t(i) * words + c / 64] |= uint64_t(1) << (c % 64);

    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int pr = -1;
        for (int i = r; i < w.rows; ++i)
            if (bit(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < words; ++j)
                std::swap(rows[size_t(pr) * words + j], rows[size_t(r) * words + j]);
        for (int i = 0; i < w.rows; ++i)
            if (i != r && bit(i, c))
                for (int j = 0; j < words; ++j)
                    rows[size_t(i) * words + j] ^= rows[size_t(r) * words + j];
        pivots.push_back(c);
        ++r;
    }
    for (int i = 0; i < w.rows; ++i)
        for (int c = 0; c < w.cols; ++c) w.at(i, c) = uint8_t(bit(i, c));
    return pivots;
}

std::vector<int> eliminate_dispatch(Matrix& w) {
    return (w.field->q() == 2) ? eliminate_q2(w) : eliminate(w);
}

}  // namespace

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.m = m;
    res.pivots = eliminate_dispatch(res.m);
    res.rank = int(res.pivots.size());
    return res;
}

int rank(const Matrix& m) {
    Matrix w = m;
    return int(eliminate_dispatch(w).size());
}

Matrix nullspace_basis(const Matrix& m) {
    const Field& f = *m.field;
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : r.pivots) is_pivot[c] = true;

    Matrix basis(f, m.cols - r.rank, m.cols);
    int bi = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        basis.at(bi, c) = 1;
        for (int j = 0; j < r.rank; ++j)
            basis.at(bi, r.pivots[j]) = f.neg(r.m.at(j, c));
        ++bi;
    }
    return basis;
}

int span_dim(const Field& f, const std::vector<std::vector<uint8_t>>& vectors) {
    if (vectors.empty()) return 0;
    return rank(Matrix::from_rows(f, vectors));
}

Matrix transpose(const Matrix& m) {
    Matrix t(*m.field, m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) fail(Errc::dimension_mismatch, "matmul shape mismatch");
    const Field& f = *a.field;
    Matrix c(f, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int t = 0; t < a.cols; ++t) {
            uint8_t v = a.at(i, t);
            if (v == 0) continue;
            const uint8_t* mr = f.mul_row(v);
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) = f.add(c.at(i, j), mr[b.at(t, j)]);
        }
    return c;
}

void enumerate_rref_matrices(const Field& f, int rows, int cols,
                             const std::function<void(Matrix&)>& fn) {
    if (rows < 0 || rows > cols) fail(Errc::out_of_range, "rref enumeration shape");
    if (rows == 0) {
        Matrix m(f, 0, cols);
        fn(m);
        return;
    }
    const int q = f.q();
    std::vector<int> piv(rows);
    for (int i = 0; i < rows; ++i) piv[i] = i;
    while (true) {
        std::vector<bool> is_piv(cols, false);
        for (int c : piv) is_piv[c] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < rows; ++i)
            for (int c = piv[i] + 1; c < cols; ++c)
                if (!is_piv[c]) free_pos.emplace_back(i, c);

        Matrix base(f, rows, cols);
        for (int i = 0; i < rows; ++i) base.at(i, piv[i]) = 1;
        std::vector<uint8_t> od(free_pos.size(), 0);
        while (true) {
            Matrix cur = base;
            for (size_t t = 0; t < free_pos.size(); ++t)
                cur.at(free_pos[t].first, free_pos[t].second) = od[t];
            fn(cur);
            size_t t = 0;
            while (t < od.size() && od[t] == q - 1) od[t++] = 0;
            if (t == od.size()) break;
            ++od[t];
        }

        int i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
    }
}

std::optional<std::vector<uint8_t>> solve_row(const Matrix& g, std::span<const uint8_t> d) {
    if (int(d.size()) != g.cols) fail(Errc::dimension_mismatch, "solve_row length mismatch");
    const Field& f = *g.field;
    // Eliminate [g^T | d^T]; consistency gives the coefficients.
    Matrix aug(f, g.cols, g.rows + 1);
    for (int i = 0; i < g.cols; ++i) {
        for (int j = 0; j < g.rows; ++j) aug.at(i, j) = g.at(j, i);
        aug.at(i, g.rows) = d[i];
    }
    RrefResult r = rref(aug);
    std::vector<uint8_t> x(g.rows, 0);
    for (int i = 0; i < r.rank; ++i) {
        int p = r.pivots[i];
        if (p == g.rows) return std::nullopt;  // inconsistent
        x[p] = r.m.at(i, g.rows);
    }
    return x;
}

}  // namespace mincw
