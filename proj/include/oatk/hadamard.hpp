#pragma once

#include <string>

#include "oatk/core.hpp"
#include "oatk/design_io.hpp"

namespace oatk {

struct NotHadamard : Error {
  using Error::Error;
};

/// +1/-1 matrix with H * H^T = N * I (checked on construction/load).
struct HadamardMatrix {
  int order = 0;
  std::vector<std::int8_t> cells;  // row-major

  std::int8_t at(int r, int c) const { return cells[static_cast<std::size_t>(r) * order + c]; }
};

HadamardMatrix make_hadamard(int order, std::vector<std::int8_t> cells);

/// Text format: one row per line of '+'/'-' characters. With zeros_ones,
/// '0' reads as +1 and '1' as -1 (the inverse of the OA recoding).
HadamardMatrix load_hadamard(const std::string& path, bool zeros_ones = false);

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

/// The N saturated two-level arrays of a Hadamard matrix: scale the columns
/// by one column elementwise, drop the resulting constant column, recode
/// +1 -> 0 and -1 -> 1. Every output is strength 2 with N-1 factors.
std::vector<Design> derive_oas(const HadamardMatrix& h);

}  // namespace oatk
