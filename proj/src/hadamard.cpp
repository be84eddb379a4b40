#include "oatk/hadamard.hpp"

#include <fstream>

#include "oatk/spectra.hpp"

namespace oatk {

HadamardMatrix make_hadamard(int order, std::vector<std::int8_t> cells) {
  if (order <= 0 || cells.size() != static_cast<std::size_t>(order) * order)
    throw NotHadamard("matrix shape mismatch");
  for (auto v : cells)
    if (v != 1 && v != -1) throw NotHadamard("entries must be +1/-1");
  HadamardMatrix h;
  h.order = order;
  h.cells = std::move(cells);
  for (int i = 0; i < order; ++i)
    for (int j = i; j < order; ++j) {
      i64 dot = 0;
      for (int c = 0; c < order; ++c) dot += i64{h.at(i, c)} * h.at(j, c);
      if (dot != (i == j ? i64{order} : 0)) throw NotHadamard("H * H^T != N * I");
    }
  return h;
}

HadamardMatrix load_hadamard(const std::string& path, bool zeros_ones) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  std::vector<std::int8_t> cells;
  std::string line;
  int order = -1, rows = 0;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (order < 0) order = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != order) throw ParseError("ragged row in " + path);
    for (char ch : line) {
      std::int8_t v;
      if (zeros_ones) {
        if (ch == '0') v = 1;
        else if (ch == '1') v = -1;
        else throw ParseError(std::string("unexpected character '") + ch + "' in " + path);
      } else {
        if (ch == '+') v = 1;
        else if (ch == '-') v = -1;
        else throw ParseError(std::string("unexpected character '") + ch + "' in " + path);
      }
      cells.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("empty matrix file: " + path);
  if (rows != order) throw ParseError("matrix is not square in " + path);
  return make_hadamard(order, std::move(cells));
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
  int n = a.order * b.order;
  std::vector<std::int8_t> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cells[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::int8_t>(a.at(i / b.order, j / b.order) * b.at(i % b.order, j % b.order));
  return make_hadamard(n, std::move(cells));
}

std::vector<Design> derive_oas(const HadamardMatrix& h) {
  int n = h.order;
  DesignParams params = make_params(n, n - 1, 2, 2);
  std::vector<Design> out;
  out.reserve(n);
  for (int scale = 0; scale < n; ++scale) {
    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (c == scale) continue;  // the scaled column itself turns constant
        int v = h.at(r, c) * h.at(r, scale);
        cells.push_back(v == 1 ? 0 : 1);
      }
    Design d = make_design(params, std::move(cells));
    if (!verify_strength(d, 2)) throw NotHadamard("derived array failed the strength check");
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace oatk
