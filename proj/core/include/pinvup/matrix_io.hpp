#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pinvup/matrix.hpp"

namespace pinvup {

/// Parse failure in the matrix text format; what() carries source and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Text format: first line "rows cols", then `rows` lines of `cols`
// whitespace-separated decimal values. Output uses 17 significant digits so
// every double round-trips exactly.

Matrix read_matrix(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

}  // namespace pinvup
