#include "rgd/matrix_market.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rgd/errors.hpp"

namespace rgd {

namespace {

constexpr const char* kHeader = "%%MatrixMarket matrix array real general";

void write_values(std::ostream& out, std::size_t rows, std::size_t cols,
                  std::span<const double> col_major) {
  out << kHeader << '\n' << rows << ' ' << cols << '\n';
  std::array<char, 32> buf{};
  for (double v : col_major) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), res.ptr - buf.data());
    out.put('\n');
  }
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct ArrayData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> col_major;
};

ArrayData read_array(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("MatrixMarket: empty input");
  std::istringstream header(lowercase(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || format != "array" ||
      field != "real" || symmetry != "general") {
    throw UsageError("MatrixMarket: expected '" + std::string(kHeader) + "', got '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  ArrayData data;
  std::istringstream dims(line);
  if (!(dims >> data.rows >> data.cols) || data.rows == 0 || data.cols == 0) {
    throw UsageError("MatrixMarket: malformed size line '" + line + "'");
  }
  const std::size_t count = data.rows * data.cols;
  data.col_major.reserve(count);
  while (data.col_major.size() < count && std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw UsageError("MatrixMarket: cannot parse value '" + line + "'");
    }
    data.col_major.push_back(v);
  }
  if (data.col_major.size() != count) {
    throw UsageError("MatrixMarket: expected " + std::to_string(count) + " values, found " +
                     std::to_string(data.col_major.size()));
  }
  return data;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_matrix_market(std::ostream& out, const DenseMatrix& A) {
  write_values(out, A.rows(), A.cols(), A.col_major());
}

void write_matrix_market(std::ostream& out, std::span<const double> v) {
  write_values(out, v.size(), 1, v);
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& A) {
  auto out = open_out(path);
  write_matrix_market(out, A);
}

void write_matrix_market(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_matrix_market(out, v);
}

DenseMatrix read_matrix_market(std::istream& in) {
  auto data = read_array(in);
  return DenseMatrix::from_column_major(data.rows, data.cols, data.col_major);
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

Vector read_matrix_market_vector(std::istream& in) {
  auto data = read_array(in);
  if (data.rows != 1 && data.cols != 1) {
    throw UsageError("MatrixMarket: expected a vector, got " + std::to_string(data.rows) + "x" +
                     std::to_string(data.cols));
  }
  return std::move(data.col_major);
}

Vector read_matrix_market_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market_vector(in);
}

}  // namespace rgd
