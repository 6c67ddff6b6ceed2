#include "pinvup/matrix_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace pinvup {

namespace {

std::string describe(const std::string& source, std::size_t line, const std::string& message) {
  std::ostringstream os;
  os << source << ":" << line << ": " << message;
  return os.str();
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

// strtod accepts the forms we write and the scientific notation others emit;
// from_chars for doubles is not available on every libstdc++ we target.
bool parse_double(const std::string& token, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size() && errno != ERANGE && std::isfinite(out);
}

bool parse_count(const std::string& token, std::size_t& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(describe(source, line, message)), source_(source), line_(line) {}

Matrix read_matrix(std::istream& in, const std::string& source) {
  std::string text;
  std::size_t line_no = 0;

  do {
    if (!std::getline(in, text)) throw ParseError(source, line_no + 1, "missing header 'rows cols'");
    ++line_no;
  } while (blank(text));

  std::size_t rows = 0, cols = 0;
  {
    std::istringstream header(text);
    std::string r, c, extra;
    if (!(header >> r >> c) || (header >> extra) || !parse_count(r, rows) || !parse_count(c, cols)) {
      throw ParseError(source, line_no, "header must be two non-negative integers 'rows cols'");
    }
  }

  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, text)) {
      std::ostringstream os;
      os << "expected " << rows << " data rows, found " << i;
      throw ParseError(source, line_no + 1, os.str());
    }
    ++line_no;
    std::istringstream row(text);
    std::string token;
    std::size_t count = 0;
    while (row >> token) {
      double v = 0.0;
      if (!parse_double(token, v)) throw ParseError(source, line_no, "invalid number '" + token + "'");
      if (count < cols) data.push_back(v);
      ++count;
    }
    if (count != cols) {
      std::ostringstream os;
      os << "expected " << cols << " values, found " << count;
      throw ParseError(source, line_no, os.str());
    }
  }

  while (std::getline(in, text)) {
    ++line_no;
    if (!blank(text)) throw ParseError(source, line_no, "unexpected trailing data");
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const Matrix& m) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace pinvup
