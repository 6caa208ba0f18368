#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "rgd/linalg.hpp"

namespace rgd {

// MatrixMarket "array real general": header line, "rows cols", then the
// values in column-major order, one per line. Values are written in shortest
// round-trip form, so write → read is exact and output is byte-stable.

void write_matrix_market(std::ostream& out, const DenseMatrix& A);
void write_matrix_market(std::ostream& out, std::span<const double> v);  // as len×1
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& A);
void write_matrix_market(const std::filesystem::path& path, std::span<const double> v);

DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market(const std::filesystem::path& path);

/// Reads an n×1 (or 1×n) array as a vector.
Vector read_matrix_market_vector(std::istream& in);
Vector read_matrix_market_vector(const std::filesystem::path& path);

}  // namespace rgd
