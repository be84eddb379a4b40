#include "oatk/extend.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "oatk/spectra.hpp"

namespace oatk {

namespace {

// All size-r subsets of {0,...,n-1}, lexicographic.
template <typename F>
void for_each_subset(int n, int r, F&& fn) {
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  if (r > n) return;
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::int32_t> rows_of_mask(const std::vector<std::uint8_t>& mask) {
  std::vector<std::int32_t> rows;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[i]) rows.push_back(i);
  return rows;
}

class SolutionSearch {
 public:
  SolutionSearch(const ExtensionProblem& p) : p_(p), n_(p.parent.params.runs),
                                              s_(p.parent.params.levels) {
    cons_.reserve(p.constraints.size());
    for (const auto& c : p.constraints)
      cons_.push_back({c.level, c.lo, c.hi, 0, static_cast<std::int32_t>(c.rows.size())});
    levels_.assign(n_, 0);
    objective_mode_ = p.objective.has_value() && !p.enumerate_all;
    if (p.objective) {
      // cost of giving row i level l; level s-1 has no variable, cost 0
      cost_.assign(n_, std::vector<i64>(s_, 0));
      for (int r = 0; r < s_ - 1; ++r)
        for (int i = 0; i < n_; ++i) cost_[i][r] = p.objective->cost[r][i];
      suffix_min_.assign(n_ + 1, 0);
      for (int i = n_ - 1; i >= 0; --i)
        suffix_min_[i] = suffix_min_[i + 1] + *std::min_element(cost_[i].begin(), cost_[i].end());
    }
  }

  std::vector<std::vector<std::uint8_t>> run() {
    dfs(0);
    if (objective_mode_) {
      if (best_cost_ == INT64_MAX) return {};
      return {best_levels_};
    }
    std::sort(solutions_.begin(), solutions_.end());
    return std::move(solutions_);
  }

 private:
  struct State {
    std::uint8_t level;
    std::int32_t lo, hi, ones, rem;
  };

  bool apply(int row, int level) {
    const auto& ids = p_.row_constraints[row];
    for (auto id : ids) {
      auto& c = cons_[id];
      --c.rem;
      if (c.level == level) ++c.ones;
    }
    for (auto id : ids) {
      const auto& c = cons_[id];
      if (c.ones > c.hi || c.ones + c.rem < c.lo) {
        undo(row, level);
        return false;
      }
    }
    return true;
  }

  void undo(int row, int level) {
    for (auto id : p_.row_constraints[row]) {
      auto& c = cons_[id];
      ++c.rem;
      if (c.level == level) --c.ones;
    }
  }

  void dfs(int row) {
    if (row == n_) {
      if (objective_mode_) {
        if (cur_cost_ < best_cost_ || (cur_cost_ == best_cost_ && levels_ < best_levels_)) {
          best_cost_ = cur_cost_;
          best_levels_ = levels_;
        }
      } else {
        solutions_.push_back(levels_);
      }
      return;
    }
    int lmin = p_.prev_equal[row] >= 0 ? levels_[p_.prev_equal[row]] : 0;
    if (!objective_mode_) {
      for (int l = lmin; l < s_; ++l) {
        levels_[row] = static_cast<std::uint8_t>(l);
        if (apply(row, l)) {
          dfs(row + 1);
          undo(row, l);
        }
      }
      return;
    }
    // cheaper branch first; bound by the sum of remaining minimal costs
    int order[8];
    int cnt = 0;
    for (int l = lmin; l < s_; ++l) order[cnt++] = l;
    std::stable_sort(order, order + cnt, [&](int a, int b) { return cost_[row][a] < cost_[row][b]; });
    for (int oi = 0; oi < cnt; ++oi) {
      int l = order[oi];
      i64 c = cost_[row][l];
      if (cur_cost_ + c + suffix_min_[row + 1] > best_cost_) continue;
      levels_[row] = static_cast<std::uint8_t>(l);
      if (apply(row, l)) {
        cur_cost_ += c;
        dfs(row + 1);
        cur_cost_ -= c;
        undo(row, l);
      }
    }
  }

  const ExtensionProblem& p_;
  int n_, s_;
  std::vector<State> cons_;
  std::vector<std::uint8_t> levels_;
  std::vector<std::vector<std::uint8_t>> solutions_;
  bool objective_mode_ = false;
  std::vector<std::vector<i64>> cost_;
  std::vector<i64> suffix_min_;
  i64 cur_cost_ = 0;
  i64 best_cost_ = INT64_MAX;
  std::vector<std::uint8_t> best_levels_;
};

}  // namespace

ExtensionProblem build_problem(const Design& parent, ExtendMode mode, const Objective* objective,
                               bool enumerate_all) {
  const auto& p = parent.params;
  int n = p.runs, s = p.levels, t = p.strength, kp = p.factors;

  ExtensionProblem prob;
  prob.parent = parent;
  prob.expansion = expand(parent);
  prob.mode = mode;
  prob.enumerate_all = enumerate_all;
  if (objective) {
    if (static_cast<int>(objective->cost.size()) != s - 1)
      throw InvalidParams("objective needs s-1 rows");
    for (const auto& row : objective->cost) {
      if (static_cast<int>(row.size()) != n) throw InvalidParams("objective row length mismatch");
      i64 ones = 0;
      for (i64 v : row) {
        if (v != 0 && v != 1) throw InvalidParams("objective entries must be 0/1");
        ones += v;
      }
      if (ones != n / s) throw InvalidParams("objective rows need exactly N/s ones");
    }
    prob.objective = *objective;
  }

  auto add = [&](std::vector<std::int32_t> rows, int level, int lo, int hi) {
    prob.constraints.push_back(
        {std::move(rows), static_cast<std::uint8_t>(level), lo, hi});
  };

  // balance per counted level
  std::vector<std::int32_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int r = 0; r < s - 1; ++r) add(all, r, n / s, n / s);

  // products against q-1 parent bit columns, q = 2..t
  for (int q = 2; q <= t; ++q) {
    i64 sq = 1;
    for (int i = 0; i < q; ++i) sq *= s;
    int target = static_cast<int>(n / sq);
    for_each_subset(kp, q - 1, [&](const std::vector<int>& factors) {
      // one bit column per chosen factor
      std::vector<int> choice(q - 1, 0);
      while (true) {
        std::vector<int> bit_cols;
        for (int i = 0; i < q - 1; ++i)
          bit_cols.push_back((s - 1) * factors[i] + choice[i]);
        auto mask = product_column(prob.expansion, bit_cols);
        auto rows = rows_of_mask(mask);
        for (int r = 0; r < s - 1; ++r) add(rows, r, target, target);
        int i = q - 2;
        while (i >= 0 && choice[i] == s - 2) --i;
        if (i < 0) break;
        ++choice[i];
        for (int j = i + 1; j < q - 1; ++j) choice[j] = 0;
      }
    });
  }

  // fix the first run's new entry to level 0
  add({0}, 0, 1, 1);

  // equal parent rows take non-decreasing new levels
  prob.prev_equal.assign(n, -1);
  std::map<std::vector<std::uint8_t>, int> last_seen;
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint8_t> row(parent.cells.begin() + static_cast<std::size_t>(i) * kp,
                                  parent.cells.begin() + static_cast<std::size_t>(i + 1) * kp);
    auto it = last_seen.find(row);
    if (it != last_seen.end()) {
      prob.prev_equal[i] = it->second;
      it->second = i;
    } else {
      last_seen.emplace(std::move(row), i);
    }
  }

  if (mode == ExtendMode::Directed) {
    if (s != 2) throw DirectedUnsupported("directed constraints are defined for 2-level designs");
    if (p.index % 2 == 0)
      throw DirectedUnsupported("directed constraints need odd lambda; raise t instead");
    int lo = static_cast<int>((p.index - 1) / 2);
    int hi = static_cast<int>((p.index + 1) / 2);
    for_each_subset(kp, t, [&](const std::vector<int>& cols) {
      for (int combo = 0; combo < (1 << t); ++combo) {
        std::vector<std::int32_t> rows;
        for (int i = 0; i < n; ++i) {
          bool in = true;
          for (int j = 0; j < t && in; ++j)
            in = parent.at(i, cols[j]) == ((combo >> j) & 1);
          if (in) rows.push_back(i);
        }
        add(std::move(rows), 0, lo, hi);
      }
    });
  }

  prob.row_constraints.assign(n, {});
  for (int id = 0; id < static_cast<int>(prob.constraints.size()); ++id)
    for (auto r : prob.constraints[id].rows)
      prob.row_constraints[r].push_back(id);

  return prob;
}

std::vector<Design> enumerate_solutions(const ExtensionProblem& p) {
  auto columns = SolutionSearch(p).run();
  std::vector<Design> out;
  out.reserve(columns.size());
  for (const auto& col : columns) out.push_back(append_column(p.parent, col));
  return out;
}

RecursionBoundChain recursion_chain(const DesignParams& base, int k_input, i64 a_bound_scaled,
                                    RecursionMode mode) {
  if (base.levels != 2) throw InvalidParams("recursion bounds are defined for 2-level designs");
  int t = base.strength;
  if (k_input < t + 2) throw InvalidParams("k_input must be at least t+2");

  RecursionBoundChain chain;
  chain.base = base;
  chain.k_input = k_input;
  chain.mode = mode;
  chain.bounds[k_input] = a_bound_scaled;
  for (int k = k_input; k >= t + 3; --k) {
    i64 cur = chain.bounds[k];
    if (cur < 0) {
      chain.bounds[k - 1] = -1;
      continue;
    }
    i64 raw = cur * (k - t - 2) / k;  // floor; operands nonnegative
    auto proj = make_params(base.runs, k - 1, base.levels, base.strength);
    auto [phi1, phi2] = lemma3_residue(proj, t + 2);
    if (raw < phi1) {
      chain.bounds[k - 1] = -1;
      continue;
    }
    i64 m = (raw - phi1) / phi2;
    chain.bounds[k - 1] = (mode == RecursionMode::Sharpened) ? phi1 + m * phi2 : m;
  }
  return chain;
}

bool passes_bound(const Design& d, const RecursionBoundChain& chain) {
  auto it = chain.bounds.find(d.params.factors);
  if (it == chain.bounds.end()) throw OutOfChain("factor count outside the bound chain");
  if (it->second < 0) return false;
  auto gwp = gwp_from_distance(distance_distribution(d));
  return gwp.scaled[d.params.strength + 2] <= it->second;
}

}  // namespace oatk
