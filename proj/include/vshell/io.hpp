#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

namespace vshell {

/// Shortest round-trip decimal text of a double, 17 significant digits.
std::string format_double(double v);

/// Writes a CSV file; every cell already formatted. Throws IoError.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Writes "row col value" lines (0-based indices, 17 significant digits) for
/// every stored entry of a sparse matrix. Throws IoError.
void write_triplets(const std::string& path, const Eigen::SparseMatrix<double>& m);

/// Writes a whole text file. Throws IoError.
void write_text(const std::string& path, const std::string& text);

/// Creates a directory and its parents. Throws IoError.
void ensure_directory(const std::string& path);

}  // namespace vshell
