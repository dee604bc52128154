#pragma once

#include <iosfwd>
#include <string>

#include "kgd/problems/logistic.hpp"

namespace kgd {

struct LibsvmData {
    SparseRowMatrix a;  // columns = largest feature index seen
    Vector y;           // labels mapped to {0, 1}
};

/// Reads the LIBSVM text format: one sample per line, "label idx:val ...",
/// 1-based strictly increasing indices. Labels -1 and 0 map to 0; +1 and 1
/// map to 1; anything else raises BadLabel. Malformed tokens raise
/// ParseError with the offending line number.
LibsvmData parse_libsvm(std::istream& in);
LibsvmData parse_libsvm_file(const std::string& path);

/// Inverse of parse_libsvm for {0,1} labels; stored entries are written in
/// column order with round-trip double formatting.
void write_libsvm(const SparseRowMatrix& a, const Vector& y, std::ostream& out);

}  // namespace kgd
