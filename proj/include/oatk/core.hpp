#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oatk {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
  using Error::Error;
};
struct ParamMismatch : Error {
  using Error::Error;
};
/// Exact integer arithmetic left the representable range.
struct Overflow : Error {
  using Error::Error;
};

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

/// Exact binomial coefficient; throws Overflow past the 64-bit range.
i64 binomial(int n, int r);

/// Renders scaled/denom as a decimal string, rounding half away from zero.
std::string format_scaled(i64 scaled, i64 denom, int places = 2);

/// The tuple (N, k, s, t) of an OA(N,k,s,t), with the index lambda = N/s^t.
struct DesignParams {
  int runs = 0;      // N
  int factors = 0;   // k
  int levels = 0;    // s
  int strength = 0;  // t
  i64 index = 0;     // lambda, derived

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Validates and completes a parameter tuple. Requires s >= 2, 1 <= t <= k,
/// and s^t | N; throws InvalidParams otherwise.
DesignParams make_params(int runs, int factors, int levels, int strength);

/// Same-shape params for a column projection onto `factors` columns.
DesignParams projection_params(const DesignParams& p, int factors);

/// An N x k level matrix over {0,...,s-1}. Strength is *not* an invariant
/// of the type; verify_strength checks it.
struct Design {
  DesignParams params;
  std::vector<std::uint8_t> cells;  // row-major

  std::uint8_t at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * params.factors + col];
  }
  std::uint8_t& at(int row, int col) {
    return cells[static_cast<std::size_t>(row) * params.factors + col];
  }

  friend bool operator==(const Design&, const Design&) = default;
};

/// Validates entries against params and returns the design.
Design make_design(const DesignParams& params, std::vector<std::uint8_t> cells);

/// Parent plus one appended column.
Design append_column(const Design& parent, const std::vector<std::uint8_t>& col);

/// Design with column `col` removed.
Design delete_column(const Design& d, int col);

/// Column projection; cols must be distinct and in range.
Design project_columns(const Design& d, const std::vector<int>& cols);

/// Generalized word length pattern held exactly: scaled[j] = N^2 * A_j.
struct Gwp {
  DesignParams params;
  std::vector<i64> scaled;  // size k+1, scaled[0] = N^2

  friend bool operator==(const Gwp&, const Gwp&) = default;
};

/// Distance distribution held exactly: scaled[i] = N * B_i.
/// Invariants: sum == N^2 and scaled[0] >= N.
struct DistanceDistribution {
  DesignParams params;
  std::vector<i64> scaled;  // size k+1

  friend bool operator==(const DistanceDistribution&, const DistanceDistribution&) = default;
};

/// J-characteristics of a 2-level design, dense by factor-subset bitmask.
/// Valid for nonempty masks with popcount <= rmax.
struct JSpectrum {
  DesignParams params;
  int rmax = 0;
  std::vector<i64> by_mask;  // size 1 << k

  i64 j(std::uint32_t mask) const { return by_mask[mask]; }
  /// mu with J = mu * 2^t; throws Error when 2^t does not divide J.
  i64 mu_of(std::uint32_t mask) const;
};

/// values[j][x] = P_j(x, s, k) for 0 <= j, x <= k.
struct KrawtchoukTable {
  int levels = 0;
  int factors = 0;
  std::vector<std::vector<i64>> values;
};

}  // namespace oatk
