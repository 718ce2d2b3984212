#pragma once

#include <iosfwd>
#include <string>

#include "rsc/matrix.hpp"

namespace rsc {

// Reads a rectangular numeric CSV (no header unless skip_header). Ragged
// rows or unparseable tokens raise parse_error with 1-based coordinates.
Matrix read_csv_matrix(std::istream& in, bool skip_header = false);
Matrix read_csv_matrix_file(const std::string& path, bool skip_header = false);

void write_csv_matrix(std::ostream& out, const Matrix& m);

}  // namespace rsc
