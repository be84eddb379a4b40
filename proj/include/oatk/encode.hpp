#pragma once

#include "oatk/core.hpp"

namespace oatk {

struct MalformedExpansion : Error {
  using Error::Error;
};
struct SameFactorBlock : Error {
  using Error::Error;
};

/// 0/1 expansion of a design: bit column (s-1)*(j-1) + (r-1) flags
/// "factor j has level r-1" for r = 1..s-1. Within each factor's block a row
/// has at most one bit set; an all-zero block row means level s-1.
/// Columns are stored as packed bitsets so the extension solver can take
/// row-set intersections cheaply.
struct BinaryExpansion {
  DesignParams params;
  int bit_columns = 0;                           // (s-1) * k
  std::vector<std::vector<std::uint64_t>> cols;  // [bit_columns][words], N bits each

  int factor_of(int bit_col) const { return bit_col / (params.levels - 1); }
  bool bit(int bit_col, int row) const {
    return (cols[bit_col][row >> 6] >> (row & 63)) & 1;
  }
};

BinaryExpansion expand(const Design& d);

/// Inverse of expand; throws MalformedExpansion if a block row has two bits.
Design collapse(const BinaryExpansion& y);

/// Entry-wise AND of the chosen bit columns; the columns must come from
/// pairwise distinct factor blocks (SameFactorBlock otherwise).
std::vector<std::uint8_t> product_column(const BinaryExpansion& y, const std::vector<int>& bit_cols);

}  // namespace oatk
