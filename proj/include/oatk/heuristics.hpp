#pragma once

#include <functional>
#include <map>

#include "oatk/core.hpp"
#include "oatk/extend.hpp"

namespace oatk {

struct BadProjection : Error {
  using Error::Error;
};

/// Deterministic search configuration: identical config and inputs give
/// identical outputs when the stop condition is the iteration cap (a
/// wall-clock budget stops at a machine-dependent point by nature).
struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts = 100;
  double budget_seconds = -1;  // negative: no wall-clock cap
  i64 max_iterations = -1;     // negative: no iteration cap
  ExtendMode mode = ExtendMode::Plain;
  std::function<void(const std::string&)> log;
};

/// Best design seen per factor count, monotone under the lexicographic GWP
/// order with a canonical-key tie break.
struct BestPerK {
  std::map<int, std::pair<Design, Gwp>> entries;

  /// True when the table changed.
  bool offer(const Design& d, const Gwp& g);
};

/// Hill climb over k-column projections of `parent`: from a random subset,
/// repeatedly apply the (out, in) column swap with the lexicographically
/// greatest GWP reduction (ties: lowest out index, then lowest in index)
/// until no swap improves; best local optimum over cfg.restarts starts.
std::pair<Design, Gwp> backward_search(const Design& parent, int k, const SearchConfig& cfg);

struct ForwardBackwardResult {
  BestPerK best;
  i64 iterations = 0;  // extension solves performed
  double seconds = 0;
  bool hit_budget = false;
};

/// Random-objective forward walks from the seed design, extending while
/// feasible; every strict improvement at k also folds all k delete-one
/// projections into the k-1 entry. Walks restart from the seed until the
/// budget or iteration cap stops the search.
ForwardBackwardResult forward_backward_search(const DesignParams& base, const SearchConfig& cfg);

/// For each r = 1..s-1, a 0/1 sequence of length N with exactly N/s ones,
/// drawn by seeded shuffle.
Objective random_objective(const DesignParams& params, std::uint64_t seed);

}  // namespace oatk
