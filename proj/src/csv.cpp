#include "rsc/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace rsc {

Matrix read_csv_matrix(std::istream& in, bool skip_header) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool skipped = !skip_header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!skipped) {
            skipped = true;
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0, col = 0;
        while (start <= line.size()) {
            std::size_t end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            ++col;
            std::string_view tok(line.data() + start, end - start);
            // trim spaces
            while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t'))
                tok.remove_prefix(1);
            while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t'))
                tok.remove_suffix(1);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw parse_error(lineno, col,
                                  "cannot parse '" + std::string(tok) + "' at row " +
                                      std::to_string(lineno) + ", column " +
                                      std::to_string(col));
            row.push_back(v);
            if (end == line.size()) break;
            start = end + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error(lineno, row.size(),
                              "row " + std::to_string(lineno) + " has " +
                                  std::to_string(row.size()) + " fields, expected " +
                                  std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error(0, 0, "empty input");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

Matrix read_csv_matrix_file(const std::string& path, bool skip_header) {
    std::ifstream f(path);
    if (!f) throw parameter_error("cannot open input file: " + path);
    return read_csv_matrix(f, skip_header);
}

void write_csv_matrix(std::ostream& out, const Matrix& m) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
        os << '\n';
    }
    out << os.str();
}

}  // namespace rsc
