#include "oatk/encode.hpp"

#include <set>

namespace oatk {

BinaryExpansion expand(const Design& d) {
  const auto& p = d.params;
  BinaryExpansion y;
  y.params = p;
  y.bit_columns = (p.levels - 1) * p.factors;
  int words = (p.runs + 63) / 64;
  y.cols.assign(y.bit_columns, std::vector<std::uint64_t>(words, 0));
  for (int row = 0; row < p.runs; ++row)
    for (int j = 0; j < p.factors; ++j) {
      int level = d.at(row, j);
      if (level <= p.levels - 2)
        y.cols[(p.levels - 1) * j + level][row >> 6] |= (std::uint64_t{1} << (row & 63));
    }
  return y;
}

Design collapse(const BinaryExpansion& y) {
  const auto& p = y.params;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(p.runs) * p.factors);
  for (int row = 0; row < p.runs; ++row)
    for (int j = 0; j < p.factors; ++j) {
      int level = p.levels - 1;  // all-zero block row
      int seen = 0;
      for (int r = 0; r < p.levels - 1; ++r)
        if (y.bit((p.levels - 1) * j + r, row)) {
          ++seen;
          level = r;
        }
      if (seen > 1) throw MalformedExpansion("two bits set within one factor block row");
      cells[static_cast<std::size_t>(row) * p.factors + j] = static_cast<std::uint8_t>(level);
    }
  return make_design(p, std::move(cells));
}

std::vector<std::uint8_t> product_column(const BinaryExpansion& y, const std::vector<int>& bit_cols) {
  if (bit_cols.empty()) throw InvalidParams("product_column needs at least one column");
  std::set<int> factors;
  for (int c : bit_cols) {
    if (c < 0 || c >= y.bit_columns) throw InvalidParams("bit column index out of range");
    if (!factors.insert(y.factor_of(c)).second)
      throw SameFactorBlock("two bit columns share a factor block");
  }
  int words = static_cast<int>(y.cols[bit_cols[0]].size());
  std::vector<std::uint64_t> acc(y.cols[bit_cols[0]]);
  for (std::size_t i = 1; i < bit_cols.size(); ++i)
    for (int w = 0; w < words; ++w) acc[w] &= y.cols[bit_cols[i]][w];
  std::vector<std::uint8_t> out(y.params.runs);
  for (int row = 0; row < y.params.runs; ++row) out[row] = (acc[row >> 6] >> (row & 63)) & 1;
  return out;
}

}  // namespace oatk
