#include "mincw/io.hpp"

#include <fstream>
#include <sstream>

namespace mincw::io {

namespace {

std::vector<long long> tokenize(std::istream& in) {
    std::vector<long long> toks;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long v;
        while (ls >> v) toks.push_back(v);
        std::string junk;
        if (ls.clear(), ls >> junk)
            fail(Errc::invalid_input, "non-integer token in matrix file");
    }
    return toks;
}

}  // namespace

LinearCode read_generator_matrix(std::istream& in) {
    auto toks = tokenize(in);
    if (toks.size() < 3) fail(Errc::invalid_input, "matrix file header must be 'q k n'");
    long long q = toks[0], k = toks[1], n = toks[2];
    if (q < 2 || q > 16) fail(Errc::invalid_input, "unsupported field size in matrix file");
    if (k < 1 || n < 1 || k > n) fail(Errc::invalid_input, "bad dimensions in matrix file");
    if (toks.size() != size_t(3 + k * n))
        fail(Errc::invalid_input, "matrix file entry count does not match k x n");
    const Field* f;
    try {
        f = &Field::get(int(q));
    } catch (const Error& e) {
        fail(Errc::invalid_input, std::string("bad field size: ") + e.what());
    }
    Matrix gen(*f, int(k), int(n));
    for (long long r = 0; r < k; ++r)
        for (long long c = 0; c < n; ++c) {
            long long v = toks[size_t(3 + r * n + c)];
            if (v < 0 || v >= q) fail(Errc::invalid_input, "matrix entry out of field range");
            gen.at(int(r), int(c)) = uint8_t(v);
        }
    try {
        return LinearCode(*f, std::move(gen));
    } catch (const Error& e) {
        if (e.code() == Errc::zero_column || e.code() == Errc::rank_deficient)
            fail(Errc::invalid_input, std::string("invalid generator matrix: ") + e.what());
        throw;
    }
}

LinearCode read_generator_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::invalid_input, "cannot open file: " + path);
    return read_generator_matrix(in);
}

void write_generator_matrix(std::ostream& os, const Matrix& gen) {
    os << gen.field->q() << ' ' << gen.rows << ' ' << gen.cols << '\n';
    for (int r = 0; r < gen.rows; ++r) {
        for (int c = 0; c < gen.cols; ++c) os << (c ? " " : "") << int(gen.at(r, c));
        os << '\n';
    }
}

}  // namespace mincw::io
