#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fzdr/errors.hpp"
#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  char buf[64];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto idx = m.row_indices(r);
    auto val = m.row_values(r);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", val[p]);
      out << r + 1 << ' ' << idx[p] + 1 << ' ' << buf << '\n';
    }
  }
  if (!out) throw PathError("write failed: " + path);
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market file", 1);
  ++lineno;
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    std::transform(format.begin(), format.end(), format.begin(), ::tolower);
    std::transform(field.begin(), field.end(), field.begin(), ::tolower);
    std::transform(symmetry.begin(), symmetry.end(), symmetry.begin(), ::tolower);
    if (banner != "%%MatrixMarket" || format != "coordinate" ||
        (field != "real" && field != "integer") || symmetry != "general")
      throw ParseError("expected '%%MatrixMarket matrix coordinate real general' header", lineno);
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<std::vector<SparseEntry>> entries;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!have_size) {
      if (!(ls >> rows >> cols >> nnz)) throw ParseError("bad size line", lineno);
      entries.assign(rows, {});
      have_size = true;
      continue;
    }
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (!(ls >> r >> c >> v)) throw ParseError("bad entry", lineno);
    if (r < 1 || r > rows || c < 1 || c > cols) throw ParseError("index out of range", lineno);
    entries[r - 1].push_back({static_cast<std::uint32_t>(c - 1), v});
    ++seen;
  }
  if (!have_size) throw ParseError("missing size line", lineno);
  if (seen != nnz) throw ParseError("entry count does not match header", lineno);
  for (auto& row : entries) {
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].col == row[i - 1].col) throw ParseError("duplicate coordinate");
  }
  return SparseMatrix::from_rows(cols, entries);
}

}  // namespace fzdr
