#include "kgd/problems/libsvm.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "kgd/text.hpp"

namespace kgd {

namespace {

double map_label(double raw, int line_no) {
    if (raw == -1.0 || raw == 0.0) return 0.0;
    if (raw == 1.0) return 1.0;
    throw BadLabel("line " + std::to_string(line_no) + ": label " + format_double(raw) +
                   " is outside {-1, 0, +1}");
}

}  // namespace

LibsvmData parse_libsvm(std::istream& in) {
    std::vector<Eigen::Triplet<double>> entries;
    std::vector<double> labels;
    long max_index = 0;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string tok;
        if (!(tokens >> tok)) continue;  // blank line

        auto raw_label = parse_double(tok);
        if (!raw_label) throw ParseError(line_no, "bad label token '" + tok + "'");
        const long row = static_cast<long>(labels.size());
        labels.push_back(map_label(*raw_label, line_no));

        long prev_index = 0;
        while (tokens >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
                throw ParseError(line_no, "bad feature token '" + tok + "'");
            }
            auto index = parse_long(tok.substr(0, colon));
            auto value = parse_double(tok.substr(colon + 1));
            if (!index || !value) throw ParseError(line_no, "bad feature token '" + tok + "'");
            if (*index < 1) throw ParseError(line_no, "feature index must be >= 1");
            if (*index <= prev_index) {
                throw ParseError(line_no, "feature indices must be strictly increasing");
            }
            prev_index = *index;
            max_index = std::max(max_index, *index);
            entries.emplace_back(row, *index - 1, *value);
        }
    }

    const long m = static_cast<long>(labels.size());
    SparseRowMatrix a(m, max_index);
    a.setFromTriplets(entries.begin(), entries.end());
    Vector y = Eigen::Map<const Vector>(labels.data(), m);
    return LibsvmData{std::move(a), std::move(y)};
}

LibsvmData parse_libsvm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_libsvm(in);
}

void write_libsvm(const SparseRowMatrix& a, const Vector& y, std::ostream& out) {
    for (long i = 0; i < a.rows(); ++i) {
        out << (y[i] == 1.0 ? '1' : '0');
        for (SparseRowMatrix::InnerIterator it(a, i); it; ++it) {
            out << ' ' << (it.col() + 1) << ':' << format_double(it.value());
        }
        out << '\n';
    }
}

}  // namespace kgd
