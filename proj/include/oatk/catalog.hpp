#pragma once

#include <string>

#include "oatk/core.hpp"

namespace oatk {

struct CatalogRowInvalid : Error {
  using Error::Error;
};

/// One shipped GMA reference entry: exact distance distribution plus the
/// derived word-length pattern.
struct CatalogEntry {
  DesignParams params;
  DistanceDistribution dist;
  Gwp gwp;
  std::string provenance;
};

/// Parses "OA(N,k,s,t) : B0, B1, ..., Bk" lines. Printed decimals d become
/// round(N*d) and are accepted only when |N*d - round(N*d)| < 0.02*N; every
/// loaded row satisfies the distribution invariants and derives a
/// nonnegative GWP with A_1..A_t = 0.
std::vector<CatalogEntry> load_catalog(const std::string& path);

/// Re-checks an entry: nonnegative GWP, A_1..A_t = 0, B -> A -> B round
/// trip, and (2-level) the residue divisibility of every N^2 A_j. Returns
/// human-readable findings; empty means clean.
std::vector<std::string> validate_entry(const CatalogEntry& e);

enum class CatalogStatus { MatchesGma, WeakGma, Worse, NoEntry };

CatalogStatus compare_against_catalog(const Design& d, const std::vector<CatalogEntry>& entries);

/// Entry lookup by exact parameter tuple; nullptr when absent.
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const DesignParams& p);

}  // namespace oatk
