#include "vshell/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vshell/errors.hpp"

namespace vshell {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  return out;
}

void check(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto out = open_out(path);
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  check(out, path);
}

void write_triplets(const std::string& path, const Eigen::SparseMatrix<double>& m) {
  auto out = open_out(path);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
    }
  }
  check(out, path);
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  check(out, path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create directory '" + path + "': " + ec.message());
}

}  // namespace vshell
