#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "oatk/core.hpp"
#include "oatk/extend.hpp"

namespace oatk {

struct CheckpointCorrupt : Error {
  using Error::Error;
};

enum class CampaignMode { Full, Directed, DirectedRecursion };

struct LevelStats {
  i64 solution_count = 0;  // |M| at this level (post-filter when a chain runs)
  i64 class_count = 0;
  double seconds = 0;
};

struct EnumerationState {
  DesignParams base;  // parameters at k = t
  CampaignMode mode = CampaignMode::Full;
  std::map<int, LevelStats> per_level;
  std::map<int, Gwp> gma_gwp;     // lexicographic minimum per completed level
  std::map<int, Design> gma_rep;  // a representative attaining it
  int last_k = 0;
  bool done = false;
  bool budget_exceeded = false;
};

/// The s^t full factorial replicated lambda times, rows sorted. This is the
/// singleton class at k = t and the root of every campaign.
Design seed_design(const DesignParams& params);

struct ExtendLevelResult {
  std::vector<Design> reps;  // canonical forms, sorted by key
  LevelStats stats;
};

/// One level of the extension algorithm: solve the extension system for
/// every representative, optionally discard by the recursion bound, then
/// reduce to classes.
ExtendLevelResult extend_level(const std::vector<Design>& reps, CampaignMode mode,
                               const RecursionBoundChain* chain = nullptr, int workers = 1);

struct CampaignOptions {
  int k_max = -1;  // run to extinction when negative
  std::string checkpoint_dir;
  int workers = 1;
  bool resume = false;
  const RecursionBoundChain* chain = nullptr;  // DirectedRecursion only
  double budget_seconds = -1;
  std::function<void(const std::string&)> log;
};

/// Runs levels k = t+1, t+2, ... until extinction, k_max, or budget; after
/// each level the representatives and a manifest are staged and renamed so
/// an interrupted campaign resumes from the last completed level.
EnumerationState run_campaign(const DesignParams& base, CampaignMode mode,
                              const CampaignOptions& opt);

}  // namespace oatk
