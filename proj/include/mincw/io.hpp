#pragma once

#include <iosfwd>
#include <string>

#include "mincw/code.hpp"

namespace mincw::io {

/// Generator-matrix text format: first line "q k n", then k lines of n
/// whitespace-separated element codes in 0..q-1. '#' starts a comment.
LinearCode read_generator_matrix(std::istream& in);
LinearCode read_generator_matrix_file(const std::string& path);

void write_generator_matrix(std::ostream& os, const Matrix& gen);

}  // namespace mincw::io
