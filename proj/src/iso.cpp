#include "oatk/iso.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "oatk/rng.hpp"
#include "oatk/spectra.hpp"

namespace oatk {

namespace {

std::vector<std::vector<std::uint8_t>> level_permutations(int s) {
  std::vector<std::uint8_t> p(s);
  for (int i = 0; i < s; ++i) p[i] = static_cast<std::uint8_t>(i);
  std::vector<std::vector<std::uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Depth-first minimal-image search. A node holds an ordering of the rows
// consistent with sorting by the columns chosen so far, partitioned into
// groups of rows equal on that prefix. A candidate (column, level map)
// appends one column of the reading: the relabeled column sorted within each
// group, which is exactly what full row sorting would place there. A
// candidate whose reading loses at its own node cannot start the minimal
// string, so only minimal ties branch; an incumbent prunes ties that turn
// worse deeper down.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Design& d)
      : d_(d),
        n_(d.params.runs),
        k_(d.params.factors),
        s_(d.params.levels),
        perms_(level_permutations(s_)) {}

  Design run() {
    std::vector<int> rows(n_);
    for (int i = 0; i < n_; ++i) rows[i] = i;
    dfs(0, rows, {0}, 0u);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n_) * k_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < k_; ++c) cells[static_cast<std::size_t>(r) * k_ + c] = best_[c][r];
    return make_design(d_.params, std::move(cells));
  }

 private:
  void dfs(int depth, const std::vector<int>& rows, const std::vector<int>& starts,
           std::uint32_t used) {
    if (depth == k_) {
      // equal_upto_ == k means this path spells the incumbent exactly;
      // anything else that survived the pruning is strictly smaller.
      if (!has_best_ || equal_upto_ < k_) {
        best_ = cur_;
        has_best_ = true;
        ++generation_;
      }
      equal_upto_ = k_;
      return;
    }

    struct Cand {
      int col;
      int perm;
      std::vector<std::uint8_t> reading;
    };
    std::vector<Cand> cands;
    for (int c = 0; c < k_; ++c) {
      if (used & (1u << c)) continue;
      for (int pi = 0; pi < static_cast<int>(perms_.size()); ++pi) {
        std::vector<std::uint8_t> reading(n_);
        const auto& perm = perms_[pi];
        int groups = static_cast<int>(starts.size());
        for (int g = 0; g < groups; ++g) {
          int a = starts[g];
          int b = (g + 1 < groups) ? starts[g + 1] : n_;
          int counts[8] = {0};
          for (int i = a; i < b; ++i) counts[perm[d_.at(rows[i], c)]]++;
          int pos = a;
          for (int v = 0; v < s_; ++v)
            for (int rep = 0; rep < counts[v]; ++rep) reading[pos++] = static_cast<std::uint8_t>(v);
        }
        if (!cands.empty() && reading > cands.front().reading) continue;
        if (!cands.empty() && reading < cands.front().reading) cands.clear();
        cands.push_back({c, pi, std::move(reading)});
      }
    }

    for (const auto& cand : cands) {
      if (has_best_ && equal_upto_ >= depth && cand.reading > best_[depth])
        break;  // ties share one reading, so the rest lose as well
      int saved_equal = equal_upto_;
      if (has_best_ && equal_upto_ == depth && cand.reading == best_[depth])
        equal_upto_ = depth + 1;

      std::vector<int> new_rows(n_);
      std::vector<int> new_starts;
      const auto& perm = perms_[cand.perm];
      int groups = static_cast<int>(starts.size());
      for (int g = 0; g < groups; ++g) {
        int a = starts[g];
        int b = (g + 1 < groups) ? starts[g + 1] : n_;
        int pos = a;
        for (int v = 0; v < s_; ++v) {
          bool first = true;
          for (int i = a; i < b; ++i)
            if (perm[d_.at(rows[i], cand.col)] == v) {
              if (first) {
                new_starts.push_back(pos);
                first = false;
              }
              new_rows[pos++] = rows[i];
            }
        }
      }

      std::uint64_t gen_before = generation_;
      cur_.push_back(cand.reading);
      dfs(depth + 1, new_rows, new_starts, used | (1u << cand.col));
      cur_.pop_back();
      // If the incumbent was replaced inside the subtree it runs through this
      // node, so the live prefix matches it exactly this far; otherwise the
      // old relation still stands.
      equal_upto_ = (generation_ != gen_before) ? depth : saved_equal;
    }
  }

  const Design& d_;
  int n_, k_, s_;
  std::vector<std::vector<std::uint8_t>> perms_;
  std::vector<std::vector<std::uint8_t>> cur_, best_;
  bool has_best_ = false;
  std::uint64_t generation_ = 0;
  int equal_upto_ = 0;  // cur_[0..e) equals best_[0..e) along the live path
};

}  // namespace

Design canonical_form(const Design& d) {
  if (d.params.factors > 30) throw InvalidParams("canonical search limited to 30 factors");
  if (d.params.levels > 8) throw InvalidParams("canonical search limited to 8 levels");
  return CanonicalSearch(d).run();
}

CanonicalKey key_of_form(const Design& form) {
  const auto& p = form.params;
  CanonicalKey key;
  key.bytes.reserve(16 + form.cells.size());
  key.bytes += std::to_string(p.runs) + "," + std::to_string(p.factors) + "," +
               std::to_string(p.levels) + "," + std::to_string(p.strength) + "|";
  // column-major digits, matching the search's reading order
  for (int c = 0; c < p.factors; ++c)
    for (int r = 0; r < p.runs; ++r)
      key.bytes.push_back(static_cast<char>('0' + form.at(r, c)));
  return key;
}

CanonicalKey canonical_key(const Design& d) { return key_of_form(canonical_form(d)); }

std::vector<i64> iso_fingerprint(const Design& d) {
  const auto& p = d.params;
  int n = p.runs, k = p.factors;
  std::vector<i64> full(k + 1, 0);
  std::vector<std::vector<i64>> drop(k, std::vector<i64>(k, 0));
  full[0] = n;
  for (int c = 0; c < k; ++c) drop[c][0] = n;
  std::vector<std::uint8_t> diffs(k);
  for (int i = 0; i < n; ++i) {
    const std::uint8_t* ri = &d.cells[static_cast<std::size_t>(i) * k];
    for (int j = i + 1; j < n; ++j) {
      const std::uint8_t* rj = &d.cells[static_cast<std::size_t>(j) * k];
      int dist = 0;
      for (int c = 0; c < k; ++c) {
        diffs[c] = (ri[c] != rj[c]);
        dist += diffs[c];
      }
      full[dist] += 2;
      for (int c = 0; c < k; ++c) drop[c][dist - diffs[c]] += 2;
    }
  }
  std::sort(drop.begin(), drop.end());
  std::vector<i64> out = full;
  for (const auto& v : drop) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<Design> reduce_to_classes(const std::vector<Design>& ds, int workers) {
  if (ds.empty()) return {};
  for (const auto& d : ds)
    if (!(d.params == ds.front().params)) throw ParamMismatch("mixed parameters in class reduction");

  // Representatives are the canonical forms themselves, so every candidate
  // gets canonicalized; duplicates then collapse on the key.
  std::vector<Design> forms(ds.size());
  auto canonicalize_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) forms[i] = canonical_form(ds[i]);
  };
  if (workers <= 1 || ds.size() < 16) {
    canonicalize_range(0, ds.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (ds.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t b = std::min(ds.size(), static_cast<std::size_t>(w) * chunk);
      std::size_t e = std::min(ds.size(), b + chunk);
      if (b < e) pool.emplace_back(canonicalize_range, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::map<CanonicalKey, int> by_key;
  for (int i = 0; i < static_cast<int>(forms.size()); ++i)
    by_key.emplace(key_of_form(forms[i]), i);

  std::vector<Design> out;
  out.reserve(by_key.size());
  for (const auto& [key, idx] : by_key) out.push_back(forms[idx]);
  return out;
}

Design random_isomorph(const Design& d, std::uint64_t seed) {
  const auto& p = d.params;
  SplitMix64 rng(seed);
  std::vector<int> rowp(p.runs), colp(p.factors);
  for (int i = 0; i < p.runs; ++i) rowp[i] = i;
  for (int i = 0; i < p.factors; ++i) colp[i] = i;
  rng.shuffle(rowp);
  rng.shuffle(colp);
  std::vector<std::vector<std::uint8_t>> lvl(p.factors);
  for (int c = 0; c < p.factors; ++c) {
    std::vector<std::uint8_t> m(p.levels);
    for (int v = 0; v < p.levels; ++v) m[v] = static_cast<std::uint8_t>(v);
    rng.shuffle(m);
    lvl[c] = std::move(m);
  }
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(p.runs) * p.factors);
  for (int r = 0; r < p.runs; ++r)
    for (int c = 0; c < p.factors; ++c)
      cells[static_cast<std::size_t>(r) * p.factors + c] = lvl[c][d.at(rowp[r], colp[c])];
  return make_design(p, std::move(cells));
}

}  // namespace oatk
