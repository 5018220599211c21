#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wedge/kernel.hpp"
#include "wedge/matrix.hpp"

namespace wedge::io {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// One row per line, comma-separated. Blank lines are ignored.
DenseMatrix parse_matrix_csv(std::string_view text);

/// {"data": [[...], ...]}
DenseMatrix parse_matrix_json(std::string_view text);

/// JSON when the first non-blank character is '{', CSV otherwise.
DenseMatrix parse_matrix(std::string_view text);

std::string to_csv(const DenseMatrix& m);

/// CSV table (nodes are the uniform midpoints) or
/// {"nodes": [...], "values": [[...], ...]}.
KernelSpec parse_kernel(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace wedge::io
