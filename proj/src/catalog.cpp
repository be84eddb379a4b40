#include "oatk/catalog.hpp"

#include <fstream>
#include <sstream>

#include "oatk/spectra.hpp"

namespace oatk {

namespace {

// Parses a decimal literal into (numerator, power-of-ten denominator).
std::pair<i64, i64> parse_decimal(const std::string& tok, const std::string& where) {
  i64 num = 0, den = 1;
  bool seen_digit = false, seen_dot = false;
  for (char ch : tok) {
    if (ch == '.') {
      if (seen_dot) throw CatalogRowInvalid("bad number '" + tok + "' in " + where);
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      throw CatalogRowInvalid("bad number '" + tok + "' in " + where);
    }
  }
  if (!seen_digit) throw CatalogRowInvalid("bad number '" + tok + "' in " + where);
  return {num, den};
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CatalogRowInvalid("cannot open catalog: " + path);
  std::vector<CatalogEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::string where = path + ":" + std::to_string(lineno);
    int n, k, s, t;
    char c1;
    std::istringstream ls(line);
    if (!(ls >> c1) || c1 != 'O') throw CatalogRowInvalid("expected OA(...) in " + where);
    char buf[3];
    ls.read(buf, 2);  // "A("
    if (!(ls >> n >> c1 >> k >> c1 >> s >> c1 >> t >> c1))
      throw CatalogRowInvalid("bad parameter tuple in " + where);
    std::string rest;
    std::getline(ls, rest);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw CatalogRowInvalid("missing ':' in " + where);
    rest = rest.substr(colon + 1);

    CatalogEntry e;
    e.params = make_params(n, k, s, t);
    e.provenance = "gma-catalog";
    e.dist.params = e.params;
    std::istringstream vs(rest);
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      auto b = tok.find_first_not_of(" \t\r");
      auto eo = tok.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw CatalogRowInvalid("empty value in " + where);
      auto [num, den] = parse_decimal(tok.substr(b, eo - b + 1), where);
      // scaled entry = round(N * num / den), rejected when off by 0.02*N
      i64 scaled = (2 * n * num + den) / (2 * den);
      if (50 * std::abs(n * num - scaled * den) >= static_cast<i64>(n) * den)
        throw CatalogRowInvalid("value '" + tok + "' is not close to a multiple of 1/N in " + where);
      e.dist.scaled.push_back(scaled);
    }
    if (static_cast<int>(e.dist.scaled.size()) != k + 1)
      throw CatalogRowInvalid("expected k+1 distribution entries in " + where);

    i64 sum = 0;
    for (i64 v : e.dist.scaled) {
      if (v < 0) throw CatalogRowInvalid("negative entry in " + where);
      sum += v;
    }
    if (sum != static_cast<i64>(n) * n)
      throw CatalogRowInvalid("distribution does not sum to N^2 in " + where);
    if (e.dist.scaled[0] < n)
      throw CatalogRowInvalid("distance-0 count below N in " + where);
    try {
      e.gwp = gwp_from_distance(e.dist);
    } catch (const Error& err) {
      throw CatalogRowInvalid(std::string("transform failed in ") + where + ": " + err.what());
    }
    for (int j = 1; j <= t; ++j)
      if (e.gwp.scaled[j] != 0)
        throw CatalogRowInvalid("A_" + std::to_string(j) + " != 0 in " + where);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> validate_entry(const CatalogEntry& e) {
  std::vector<std::string> report;
  const auto& p = e.params;
  Gwp gwp;
  try {
    gwp = gwp_from_distance(e.dist);
  } catch (const Error& err) {
    report.push_back(std::string("distance -> gwp failed: ") + err.what());
    return report;
  }
  if (!(gwp == e.gwp)) report.push_back("cached gwp differs from the distribution's transform");
  for (int j = 1; j <= p.strength; ++j)
    if (gwp.scaled[j] != 0) report.push_back("A_" + std::to_string(j) + " is nonzero");
  try {
    auto back = distance_from_gwp(gwp);
    if (!(back.scaled == e.dist.scaled)) report.push_back("B -> A -> B round trip changed the row");
  } catch (const Error& err) {
    report.push_back(std::string("gwp -> distance failed: ") + err.what());
  }
  if (p.levels == 2) {
    for (int j = p.strength + 1; j <= p.factors; ++j) {
      auto [phi1, phi2] = lemma3_residue(p, j);
      i64 v = gwp.scaled[j] - phi1;
      if (v < 0 || v % phi2 != 0)
        report.push_back("scaled A_" + std::to_string(j) + " violates the residue divisibility");
    }
  }
  return report;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const DesignParams& p) {
  for (const auto& e : entries)
    if (e.params == p) return &e;
  return nullptr;
}

CatalogStatus compare_against_catalog(const Design& d, const std::vector<CatalogEntry>& entries) {
  const CatalogEntry* e = find_entry(entries, d.params);
  if (!e) return CatalogStatus::NoEntry;
  Gwp gwp = gwp_from_distance(distance_distribution(d));
  if (gwp.scaled == e->gwp.scaled) return CatalogStatus::MatchesGma;
  if (weak_gma_equal(gwp, e->gwp)) return CatalogStatus::WeakGma;
  return CatalogStatus::Worse;
}

}  // namespace oatk
