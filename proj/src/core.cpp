#include "oatk/core.hpp"

#include <algorithm>
#include <sstream>

namespace oatk {

namespace {

i64 ipow_checked(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer addition overflow");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer multiplication overflow");
  return r;
}

i64 binomial(int n, int r) {
  if (r < 0 || r > n || n < 0) return 0;
  r = std::min(r, n - r);
  i64 result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) is divisible by i at every step
    __int128 v = static_cast<__int128>(result) * (n - r + i) / i;
    if (v > INT64_MAX) throw Overflow("binomial coefficient exceeds 64 bits");
    result = static_cast<i64>(v);
  }
  return result;
}

std::string format_scaled(i64 scaled, i64 denom, int places) {
  if (denom <= 0) throw InvalidParams("format_scaled: nonpositive denominator");
  bool neg = scaled < 0;
  __int128 num = neg ? -static_cast<__int128>(scaled) : static_cast<__int128>(scaled);
  __int128 p10 = 1;
  for (int i = 0; i < places; ++i) p10 *= 10;
  // round(num * 10^places / denom), half away from zero
  __int128 q = (num * p10 * 2 + denom) / (2 * static_cast<__int128>(denom));
  std::string digits;
  if (q == 0) digits = "0";
  while (q > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(q % 10)));
    q /= 10;
  }
  while (static_cast<int>(digits.size()) < places + 1) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  std::string out;
  if (neg) out.push_back('-');
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - places);
  }
  return out;
}

DesignParams make_params(int runs, int factors, int levels, int strength) {
  if (runs <= 0 || factors <= 0) throw InvalidParams("runs and factors must be positive");
  if (levels < 2) throw InvalidParams("levels must be at least 2");
  if (strength < 1) throw InvalidParams("strength must be at least 1");
  if (strength > factors) throw InvalidParams("strength exceeds factor count");
  i64 st = ipow_checked(levels, strength);
  if (runs % st != 0) {
    std::ostringstream os;
    os << "s^t = " << st << " does not divide N = " << runs;
    throw InvalidParams(os.str());
  }
  DesignParams p;
  p.runs = runs;
  p.factors = factors;
  p.levels = levels;
  p.strength = strength;
  p.index = runs / st;
  return p;
}

DesignParams projection_params(const DesignParams& p, int factors) {
  return make_params(p.runs, factors, p.levels, p.strength);
}

Design make_design(const DesignParams& params, std::vector<std::uint8_t> cells) {
  if (cells.size() != static_cast<std::size_t>(params.runs) * params.factors)
    throw InvalidParams("cell count does not match params");
  for (auto e : cells)
    if (e >= params.levels) throw InvalidParams("cell entry out of level range");
  Design d;
  d.params = params;
  d.cells = std::move(cells);
  return d;
}

Design append_column(const Design& parent, const std::vector<std::uint8_t>& col) {
  const auto& p = parent.params;
  if (static_cast<int>(col.size()) != p.runs) throw InvalidParams("column length mismatch");
  DesignParams np = make_params(p.runs, p.factors + 1, p.levels, p.strength);
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(np.runs) * np.factors);
  for (int r = 0; r < p.runs; ++r) {
    for (int c = 0; c < p.factors; ++c) cells.push_back(parent.at(r, c));
    cells.push_back(col[r]);
  }
  return make_design(np, std::move(cells));
}

Design delete_column(const Design& d, int col) {
  std::vector<int> keep;
  for (int c = 0; c < d.params.factors; ++c)
    if (c != col) keep.push_back(c);
  return project_columns(d, keep);
}

Design project_columns(const Design& d, const std::vector<int>& cols) {
  if (cols.empty()) throw InvalidParams("projection needs at least one column");
  for (int c : cols)
    if (c < 0 || c >= d.params.factors) throw InvalidParams("projection column out of range");
  DesignParams np = projection_params(d.params, static_cast<int>(cols.size()));
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(np.runs) * np.factors);
  for (int r = 0; r < d.params.runs; ++r)
    for (int c : cols) cells.push_back(d.at(r, c));
  return make_design(np, std::move(cells));
}

i64 JSpectrum::mu_of(std::uint32_t mask) const {
  i64 v = by_mask[mask];
  i64 p2 = i64{1} << params.strength;
  if (v % p2 != 0) throw Error("J value not divisible by 2^t");
  return v / p2;
}

}  // namespace oatk
