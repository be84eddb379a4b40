#include "oatk/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "oatk/enumerate.hpp"
#include "oatk/iso.hpp"
#include "oatk/rng.hpp"
#include "oatk/spectra.hpp"

namespace oatk {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string gwp_prefix_string(const Gwp& g, int upto = 6) {
  std::ostringstream os;
  os << "[";
  i64 n2 = static_cast<i64>(g.params.runs) * g.params.runs;
  int last = std::min(upto, g.params.factors);
  for (int j = 1; j <= last; ++j) {
    if (j > 1) os << " ";
    os << format_scaled(g.scaled[j], n2);
  }
  if (last < g.params.factors) os << " ...";
  os << "]";
  return os.str();
}

// Pairwise distance bookkeeping for fast projection GWPs during swaps.
class ProjectionScorer {
 public:
  explicit ProjectionScorer(const Design& parent, int k)
      : parent_(parent),
        n_(parent.params.runs),
        k0_(parent.params.factors),
        k_(k),
        proj_params_(make_params(parent.params.runs, k, parent.params.levels,
                                 parent.params.strength)),
        table_(krawtchouk_table(parent.params.levels, k)) {
    pair_count_ = n_ * (n_ - 1) / 2;
    diff_.assign(k0_, std::vector<std::uint8_t>(pair_count_));
    int p = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j, ++p)
        for (int c = 0; c < k0_; ++c) diff_[c][p] = parent_.at(i, c) != parent_.at(j, c);
  }

  void reset(const std::vector<int>& subset) {
    subset_ = subset;
    dist_.assign(pair_count_, 0);
    for (int c : subset_)
      for (int p = 0; p < pair_count_; ++p) dist_[p] += diff_[c][p];
  }

  Gwp current_gwp() const {
    std::vector<i64> hist(k_ + 1, 0);
    for (int p = 0; p < pair_count_; ++p) hist[dist_[p]] += 2;
    hist[0] += n_;
    return gwp_of_hist(hist);
  }

  Gwp swapped_gwp(int out_col, int in_col) const {
    std::vector<i64> hist(k_ + 1, 0);
    const auto& dout = diff_[out_col];
    const auto& din = diff_[in_col];
    for (int p = 0; p < pair_count_; ++p) hist[dist_[p] - dout[p] + din[p]] += 2;
    hist[0] += n_;
    return gwp_of_hist(hist);
  }

  void apply_swap(int out_col, int in_col) {
    const auto& dout = diff_[out_col];
    const auto& din = diff_[in_col];
    for (int p = 0; p < pair_count_; ++p) dist_[p] = dist_[p] - dout[p] + din[p];
    auto it = std::find(subset_.begin(), subset_.end(), out_col);
    *it = in_col;
    std::sort(subset_.begin(), subset_.end());
  }

  const std::vector<int>& subset() const { return subset_; }

 private:
  Gwp gwp_of_hist(const std::vector<i64>& hist) const {
    Gwp g;
    g.params = proj_params_;
    g.scaled.assign(k_ + 1, 0);
    for (int j = 0; j <= k_; ++j) {
      __int128 acc = 0;
      for (int i = 0; i <= k_; ++i)
        acc += static_cast<__int128>(table_->values[j][i]) * hist[i];
      if (acc > INT64_MAX || acc < INT64_MIN) throw Overflow("projection gwp overflow");
      g.scaled[j] = static_cast<i64>(acc);
    }
    return g;
  }

  const Design& parent_;
  int n_, k0_, k_;
  DesignParams proj_params_;
  std::shared_ptr<const KrawtchoukTable> table_;
  int pair_count_ = 0;
  std::vector<std::vector<std::uint8_t>> diff_;
  std::vector<int> subset_;
  std::vector<int> dist_;
};

}  // namespace

bool BestPerK::offer(const Design& d, const Gwp& g) {
  int k = d.params.factors;
  auto it = entries.find(k);
  if (it == entries.end()) {
    entries.emplace(k, std::make_pair(d, g));
    return true;
  }
  switch (compare_gwp(g, it->second.second)) {
    case Ordering::Less:
      it->second = {d, g};
      return true;
    case Ordering::Greater:
      return false;
    case Ordering::Equal:
      break;
  }
  // deterministic merge independent of arrival order
  if (canonical_key(d) < canonical_key(it->second.first)) {
    it->second = {d, g};
    return true;
  }
  return false;
}

std::pair<Design, Gwp> backward_search(const Design& parent, int k, const SearchConfig& cfg) {
  if (k >= parent.params.factors)
    throw BadProjection("projection must drop at least one column");
  SplitMix64 rng(cfg.seed);
  ProjectionScorer scorer(parent, k);
  int k0 = parent.params.factors;

  bool have_best = false;
  Gwp best_gwp;
  std::vector<int> best_subset;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    scorer.reset(rng.sample(k0, k));
    Gwp cur = scorer.current_gwp();
    while (true) {
      std::vector<char> in_set(k0, 0);
      for (int c : scorer.subset()) in_set[c] = 1;
      bool improved = false;
      int best_out = -1, best_in = -1;
      Gwp best_cand;
      for (int out : scorer.subset())
        for (int in = 0; in < k0; ++in) {
          if (in_set[in]) continue;
          Gwp cand = scorer.swapped_gwp(out, in);
          if (compare_gwp(cand, improved ? best_cand : cur) == Ordering::Less) {
            best_cand = std::move(cand);
            best_out = out;
            best_in = in;
            improved = true;
          }
        }
      if (!improved) break;
      scorer.apply_swap(best_out, best_in);
      cur = std::move(best_cand);
    }
    if (!have_best || compare_gwp(cur, best_gwp) == Ordering::Less) {
      best_gwp = cur;
      best_subset = scorer.subset();
      have_best = true;
    }
  }
  Design best = project_columns(parent, best_subset);
  return {std::move(best), std::move(best_gwp)};
}

Objective random_objective(const DesignParams& params, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Objective obj;
  int ones = params.runs / params.levels;
  for (int r = 0; r < params.levels - 1; ++r) {
    std::vector<i64> row(params.runs, 0);
    for (int i = 0; i < ones; ++i) row[i] = 1;
    rng.shuffle(row);
    obj.cost.push_back(std::move(row));
  }
  return obj;
}

ForwardBackwardResult forward_backward_search(const DesignParams& base, const SearchConfig& cfg) {
  if (cfg.budget_seconds < 0 && cfg.max_iterations < 0)
    throw InvalidParams("forward-and-backward search needs a budget or an iteration cap");
  auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(cfg.seed);
  ForwardBackwardResult res;

  auto log_improvement = [&](const Design& d, const Gwp& g) {
    if (!cfg.log) return;
    std::ostringstream os;
    os << "improved k = " << d.params.factors << "  A = " << gwp_prefix_string(g)
       << "  iteration = " << res.iterations << "  elapsed = " << seconds_since(t0) << "s";
    cfg.log(os.str());
  };
  auto offer = [&](const Design& d) {
    Gwp g = gwp_from_distance(distance_distribution(d));
    bool improved = res.best.offer(d, g);
    if (improved) log_improvement(d, g);
    return improved;
  };
  auto out_of_budget = [&] {
    if (cfg.max_iterations >= 0 && res.iterations >= cfg.max_iterations) return true;
    if (cfg.budget_seconds >= 0 && seconds_since(t0) > cfg.budget_seconds) return true;
    return false;
  };

  Design seed = seed_design(base);
  offer(seed);

  while (!out_of_budget()) {
    Design cur = seed;
    while (true) {
      if (out_of_budget()) {
        res.hit_budget = true;
        break;
      }
      Objective obj = random_objective(base, rng.next());
      auto sols = enumerate_solutions(
          build_problem(cur, cfg.mode, &obj, /*enumerate_all=*/false));
      ++res.iterations;
      if (sols.empty()) break;  // the walk is extinct; restart from the seed
      cur = std::move(sols.front());
      if (offer(cur) && cur.params.factors - 1 >= base.strength)
        for (int c = 0; c < cur.params.factors; ++c) offer(delete_column(cur, c));
    }
  }
  res.hit_budget = true;  // the caps are the only way out
  res.seconds = seconds_since(t0);
  return res;
}

}  // namespace oatk
