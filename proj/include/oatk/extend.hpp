#pragma once

#include <map>
#include <optional>

#include "oatk/core.hpp"
#include "oatk/encode.hpp"

namespace oatk {

struct DirectedUnsupported : Error {
  using Error::Error;
};
struct OutOfChain : Error {
  using Error::Error;
};

enum class ExtendMode { Plain, Directed };

/// Optional objective for heuristic extension steps: cost[r-1][i] weights
/// x_{i,r}. Each row of costs is 0/1 with exactly N/s ones.
struct Objective {
  std::vector<std::vector<i64>> cost;  // (s-1) x N
};

/// Interval count constraint on one new-column level over a fixed row set.
struct CountConstraint {
  std::vector<std::int32_t> rows;
  std::uint8_t level;  // which new-column level is counted
  std::int32_t lo = 0, hi = 0;
};

/// The extension feasibility system for appending one factor to `parent`:
///   - balance: each level r-1 of the new column appears N/s times;
///   - products: for q = 2..t, every admissible choice of q-1 parent bit
///     columns meets each counted level N/s^q times;
///   - the first run's new entry is level 0;
///   - equal parent rows receive non-decreasing new levels;
///   - Directed adds, per t-subset of parent columns and level combination,
///     (lambda-1)/2 <= (level-0 count in the cell) <= (lambda+1)/2
///     (2-level, odd lambda only).
struct ExtensionProblem {
  Design parent;
  BinaryExpansion expansion;
  ExtendMode mode = ExtendMode::Plain;
  std::optional<Objective> objective;
  bool enumerate_all = true;

  std::vector<CountConstraint> constraints;
  std::vector<std::vector<std::int32_t>> row_constraints;  // per row, indices
  std::vector<std::int32_t> prev_equal;  // previous row with equal parent content, or -1
};

ExtensionProblem build_problem(const Design& parent, ExtendMode mode,
                               const Objective* objective = nullptr,
                               bool enumerate_all = true);

/// All solutions (sorted by new column), or the single minimum-objective
/// solution when an objective is present and enumerate_all is off. An
/// infeasible system yields an empty list.
std::vector<Design> enumerate_solutions(const ExtensionProblem& p);

enum class RecursionMode { Literal, Sharpened };

/// Descending feasibility bounds on N^2 * A_{t+2} for k = k_input down to
/// t+2. Each step scales by (k-t-2)/k and floors; Sharpened then snaps to
/// the largest value of the admissible residue class phi1 + m*phi2 below,
/// Literal keeps the bare floor quotient as printed. Infeasible levels carry
/// bound -1.
struct RecursionBoundChain {
  DesignParams base;  // N, s, t (factor count unused)
  int k_input = 0;
  RecursionMode mode = RecursionMode::Sharpened;
  std::map<int, i64> bounds;
};

RecursionBoundChain recursion_chain(const DesignParams& base, int k_input, i64 a_bound_scaled,
                                    RecursionMode mode);

/// True iff N^2 * A_{t+2}(d) <= chain.bounds at d's factor count.
/// Throws OutOfChain when the factor count is outside the chain's domain.
bool passes_bound(const Design& d, const RecursionBoundChain& chain);

}  // namespace oatk
