#pragma once

#include "pmrank/poly_matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmrank {

/// Malformed pmx text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Text format:
///   # pmx v1
///   modulus <p>
///   dims <m> <n>
///   <m body lines, entries separated by " ; ", each entry the low-to-high
///    coefficient residues separated by spaces, 0 for the zero polynomial>
/// Parsing accepts extra blanks, CRLF line ends, trailing zero coefficients
/// and trailing blank lines; serialization is canonical.
PolyMatrix parse_pmx(std::string_view text);
std::string serialize_pmx(const PolyMatrix& F);

PolyMatrix read_pmx_file(const std::string& path);
void write_pmx_file(const std::string& path, const PolyMatrix& F);

} // namespace pmrank
