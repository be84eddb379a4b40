#include "oatk/spectra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>

namespace oatk {

namespace {

constexpr int kMaxSpectrumFactors = 22;  // dense spectrum storage is 8 << k bytes

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// C(n, r) mod 2 by Lucas: odd iff the bits of r are a subset of the bits of n.
bool binomial_odd(int n, int r) {
  if (r < 0 || r > n) return false;
  return (n & r) == r;
}

i64 narrow_i128(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow(what);
  return static_cast<i64>(v);
}

// Row contents packed as level-1 indicator bits (2-level designs).
std::vector<std::uint32_t> row_bits(const Design& d) {
  std::vector<std::uint32_t> bits(d.params.runs, 0);
  for (int r = 0; r < d.params.runs; ++r)
    for (int c = 0; c < d.params.factors; ++c)
      if (d.at(r, c)) bits[r] |= (std::uint32_t{1} << c);
  return bits;
}

void check_same_params(const DesignParams& a, const DesignParams& b) {
  if (!(a == b)) throw ParamMismatch("parameter tuples differ");
}

}  // namespace

std::shared_ptr<const KrawtchoukTable> krawtchouk_table(int levels, int factors) {
  if (levels < 2 || factors < 1) throw InvalidParams("krawtchouk_table needs s >= 2, k >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const KrawtchoukTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(levels, factors);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto table = std::make_shared<KrawtchoukTable>();
  table->levels = levels;
  table->factors = factors;
  int k = factors;
  i64 sm1 = levels - 1;
  auto& v = table->values;
  v.assign(k + 1, std::vector<i64>(k + 1, 0));
  for (int x = 0; x <= k; ++x) v[0][x] = 1;
  for (int j = 1; j <= k; ++j) v[j][0] = checked_mul(ipow(sm1, j), binomial(k, j));
  for (int j = 1; j <= k; ++j)
    for (int x = 1; x <= k; ++x)
      v[j][x] = checked_add(v[j][x - 1],
                            -checked_add(v[j - 1][x - 1], checked_mul(sm1, v[j - 1][x])));

  cache.emplace(key, table);
  return table;
}

JSpectrum j_spectrum(const Design& d, int rmax) {
  const auto& p = d.params;
  if (p.levels != 2) throw UnsupportedLevels("J-characteristics need 2-level designs");
  if (rmax < 1 || rmax > p.factors) throw InvalidParams("rmax out of range");
  if (p.factors > kMaxSpectrumFactors)
    throw InvalidParams("factor count too large for a dense J-spectrum");

  int k = p.factors;
  JSpectrum js;
  js.params = p;
  js.rmax = rmax;
  js.by_mask.assign(std::size_t{1} << k, 0);
  auto bits = row_bits(d);

  if (rmax == k) {
    // Full spectrum via the Walsh-Hadamard transform of the run histogram.
    for (auto b : bits) js.by_mask[b] += 1;
    for (int bit = 0; bit < k; ++bit) {
      std::size_t step = std::size_t{1} << bit;
      for (std::size_t base = 0; base < js.by_mask.size(); base += 2 * step)
        for (std::size_t i = base; i < base + step; ++i) {
          i64 u = js.by_mask[i], v = js.by_mask[i + step];
          js.by_mask[i] = u + v;
          js.by_mask[i + step] = u - v;
        }
    }
    return js;
  }

  // Sparse sizes: walk subsets of each cardinality directly.
  for (int r = 1; r <= rmax; ++r) {
    std::uint32_t mask = (std::uint32_t{1} << r) - 1;
    std::uint32_t limit = std::uint32_t{1} << k;
    while (mask < limit) {
      i64 j = 0;
      for (auto b : bits) j += 1 - 2 * (std::popcount(mask & b) & 1);
      js.by_mask[mask] = j;
      // Gosper's hack: next mask with the same popcount
      std::uint32_t c = mask & -mask;
      std::uint32_t rr = mask + c;
      if (rr == 0) break;
      mask = (((rr ^ mask) >> 2) / c) | rr;
    }
  }
  return js;
}

Gwp gwp_from_j(const JSpectrum& js) {
  const auto& p = js.params;
  if (js.rmax != p.factors) throw IncompleteSpectrum("spectrum must cover all subset sizes");
  Gwp g;
  g.params = p;
  g.scaled.assign(p.factors + 1, 0);
  g.scaled[0] = checked_mul(p.runs, p.runs);
  std::uint32_t limit = std::uint32_t{1} << p.factors;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    i64 j = js.by_mask[mask];
    g.scaled[std::popcount(mask)] = checked_add(g.scaled[std::popcount(mask)], checked_mul(j, j));
  }
  return g;
}

DistanceDistribution distance_distribution(const Design& d) {
  const auto& p = d.params;
  int n = p.runs, k = p.factors;
  DistanceDistribution b;
  b.params = p;
  b.scaled.assign(k + 1, 0);
  b.scaled[0] = n;  // diagonal pairs
  if (p.levels == 2 && k <= 64) {
    std::vector<std::uint64_t> bits(n, 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < k; ++c)
        if (d.at(r, c)) bits[r] |= (std::uint64_t{1} << c);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) b.scaled[std::popcount(bits[i] ^ bits[j])] += 2;
    return b;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int dist = 0;
      const std::uint8_t* ri = &d.cells[static_cast<std::size_t>(i) * k];
      const std::uint8_t* rj = &d.cells[static_cast<std::size_t>(j) * k];
      for (int c = 0; c < k; ++c) dist += (ri[c] != rj[c]);
      b.scaled[dist] += 2;
    }
  return b;
}

Gwp gwp_from_distance(const DistanceDistribution& b) {
  const auto& p = b.params;
  auto table = krawtchouk_table(p.levels, p.factors);
  Gwp g;
  g.params = p;
  g.scaled.assign(p.factors + 1, 0);
  for (int j = 0; j <= p.factors; ++j) {
    __int128 acc = 0;
    for (int i = 0; i <= p.factors; ++i)
      acc += static_cast<__int128>(table->values[j][i]) * b.scaled[i];
    i64 v = narrow_i128(acc, "gwp_from_distance overflow");
    if (v < 0) {
      std::ostringstream os;
      os << "negative scaled A_" << j << " = " << v << "; not a design distribution";
      throw NegativeGwp(os.str());
    }
    g.scaled[j] = v;
  }
  return g;
}

DistanceDistribution distance_from_gwp(const Gwp& a) {
  const auto& p = a.params;
  auto table = krawtchouk_table(p.levels, p.factors);
  i64 sk = ipow(p.levels, p.factors);
  DistanceDistribution b;
  b.params = p;
  b.scaled.assign(p.factors + 1, 0);
  for (int j = 0; j <= p.factors; ++j) {
    __int128 acc = 0;
    for (int i = 0; i <= p.factors; ++i)
      acc += static_cast<__int128>(table->values[j][i]) * a.scaled[i];
    if (acc % sk != 0) {
      std::ostringstream os;
      os << "s^k does not divide the inverse-transform intermediate at index " << j;
      throw NotIntegral(os.str());
    }
    b.scaled[j] = narrow_i128(acc / sk, "distance_from_gwp overflow");
  }
  return b;
}

Ordering compare_gwp(const Gwp& a, const Gwp& b) {
  check_same_params(a.params, b.params);
  for (int j = 1; j <= a.params.factors; ++j) {
    if (a.scaled[j] < b.scaled[j]) return Ordering::Less;
    if (a.scaled[j] > b.scaled[j]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

bool weak_gma_equal(const Gwp& a, const Gwp& b) {
  check_same_params(a.params, b.params);
  for (int j = 1; j <= a.params.factors; ++j) {
    if (a.scaled[j] == 0 && b.scaled[j] == 0) continue;
    return a.scaled[j] == b.scaled[j];
  }
  return true;  // both identically zero
}

bool verify_strength(const Design& d, int strength) {
  const auto& p = d.params;
  if (strength < 1 || strength > p.factors) throw InvalidParams("strength out of range");
  i64 cells = ipow(p.levels, strength);
  if (p.runs % cells != 0) return false;
  i64 want = p.runs / cells;
  std::vector<i64> counts(static_cast<std::size_t>(cells));
  std::vector<int> cols(strength);
  for (int i = 0; i < strength; ++i) cols[i] = i;
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int r = 0; r < p.runs; ++r) {
      i64 idx = 0;
      for (int c : cols) idx = idx * p.levels + d.at(r, c);
      counts[static_cast<std::size_t>(idx)]++;
    }
    for (i64 c : counts)
      if (c != want) return false;
    // next combination
    int i = strength - 1;
    while (i >= 0 && cols[i] == p.factors - strength + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int j = i + 1; j < strength; ++j) cols[j] = cols[j - 1] + 1;
  }
  return true;
}

ParityReport check_lemma2(const JSpectrum& js) {
  const auto& p = js.params;
  if (p.levels != 2) throw UnsupportedLevels("parity checks need 2-level designs");
  ParityReport report;
  int t = p.strength;
  i64 p2t = i64{1} << t;
  bool lambda_even = (p.index % 2 == 0);
  std::uint32_t limit = std::uint32_t{1} << p.factors;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    int r = std::popcount(mask);
    if (r > js.rmax) continue;
    i64 j = js.by_mask[mask];
    if (j % p2t != 0) {
      report.violations.push_back({mask, j, "J not a multiple of 2^t"});
      continue;
    }
    i64 mu = j / p2t;
    bool mu_odd = (mu % 2) != 0;
    if (lambda_even) {
      if (mu_odd) report.violations.push_back({mask, j, "even lambda requires even mu"});
    } else {
      bool want_odd = binomial_odd(r - 1, r - t - 1);
      if (mu_odd != want_odd)
        report.violations.push_back(
            {mask, j, want_odd ? "odd lambda requires odd mu here" : "mu must be even here"});
    }
  }
  return report;
}

std::pair<i64, i64> lemma3_residue(const DesignParams& p, int j) {
  if (p.levels != 2) throw UnsupportedLevels("residues defined for 2-level designs");
  if (j < p.strength + 1 || j > p.factors) throw InvalidParams("index j out of range");
  int t = p.strength;
  // mu is forced odd only when lambda is odd AND C(j-1, j-t-1) is odd;
  // even lambda forces every mu even, so the offset class is empty then
  int I = (p.index % 2 == 1 && binomial_odd(j - 1, j - t - 1)) ? 1 : 0;
  i64 phi1 = I == 0 ? 0 : checked_mul(binomial(p.factors, j), i64{1} << (2 * t));
  i64 phi2 = i64{1} << (2 * t + 2 + I);
  return {phi1, phi2};
}

}  // namespace oatk
