#pragma once

#include <string>
#include <vector>

#include "oatk/core.hpp"

namespace oatk::test {

/// Design from digit rows, e.g. {"00", "01", "10", "11"}.
inline Design design_from_rows(const std::vector<std::string>& rows, int levels, int strength) {
  int n = static_cast<int>(rows.size());
  int k = static_cast<int>(rows[0].size());
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * k);
  for (const auto& row : rows)
    for (char ch : row) cells.push_back(static_cast<std::uint8_t>(ch - '0'));
  return make_design(make_params(n, k, levels, strength), std::move(cells));
}

/// The 4-run full factorial as an OA(4,2,2,2).
inline Design factorial22() { return design_from_rows({"00", "01", "10", "11"}, 2, 2); }

/// The XOR extension OA(4,3,2,2).
inline Design xor43() { return design_from_rows({"000", "011", "101", "110"}, 2, 2); }

inline std::string data_path(const std::string& rel) {
  return std::string(OATK_SOURCE_DIR) + "/data/" + rel;
}

}  // namespace oatk::test
