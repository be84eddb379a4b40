#include "oatk/enumerate.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oatk/design_io.hpp"
#include "oatk/iso.hpp"
#include "oatk/parallel.hpp"
#include "oatk/spectra.hpp"

namespace oatk {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

u64 fnv1a(const std::string& data) {
  u64 h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string file_hash(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointCorrupt("cannot read " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(fnv1a(buf.str())));
  return hex;
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

std::string reps_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "reps_k%02d.txt", k);
  return buf;
}

std::string mode_name(CampaignMode m) {
  switch (m) {
    case CampaignMode::Full: return "full";
    case CampaignMode::Directed: return "directed";
    case CampaignMode::DirectedRecursion: return "directed-recursion";
  }
  return "?";
}

std::string join_i64(const std::vector<i64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

struct Manifest {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  const std::string& get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw CheckpointCorrupt("manifest missing key: " + key);
    return it->second;
  }
};

Manifest read_manifest(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw CheckpointCorrupt("cannot read manifest: " + path.string());
  Manifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CheckpointCorrupt("malformed manifest line: " + line);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    m.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

struct GmaPick {
  int index = -1;
  Gwp gwp;
};

GmaPick pick_gma(const std::vector<Design>& reps) {
  GmaPick pick;
  if (reps.empty()) return pick;
  pick.index = 0;
  pick.gwp = gwp_from_distance(distance_distribution(reps[0]));
  for (int i = 1; i < static_cast<int>(reps.size()); ++i) {
    Gwp g = gwp_from_distance(distance_distribution(reps[i]));
    if (compare_gwp(g, pick.gwp) == Ordering::Less) {
      pick.gwp = std::move(g);
      pick.index = i;
    }
  }
  return pick;
}

}  // namespace

Design seed_design(const DesignParams& params) {
  if (params.factors != params.strength) throw InvalidParams("the seed lives at k = t");
  int t = params.strength, s = params.levels;
  i64 combos = 1;
  for (int i = 0; i < t; ++i) combos *= s;
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(params.runs) * t);
  for (i64 combo = 0; combo < combos; ++combo) {
    std::vector<std::uint8_t> row(t);
    i64 v = combo;
    for (int c = t - 1; c >= 0; --c) {
      row[c] = static_cast<std::uint8_t>(v % s);
      v /= s;
    }
    for (i64 rep = 0; rep < params.index; ++rep)
      cells.insert(cells.end(), row.begin(), row.end());
  }
  return make_design(params, std::move(cells));
}

ExtendLevelResult extend_level(const std::vector<Design>& reps, CampaignMode mode,
                               const RecursionBoundChain* chain, int workers) {
  ExtendLevelResult result;
  if (reps.empty()) return result;
  auto t0 = std::chrono::steady_clock::now();

  ExtendMode xmode = mode == CampaignMode::Full ? ExtendMode::Plain : ExtendMode::Directed;
  int next_k = reps.front().params.factors + 1;
  bool filter = chain && chain->bounds.count(next_k) > 0;

  std::vector<std::vector<Design>> per_parent(reps.size());
  parallel_for(reps.size(), workers, [&](std::size_t i) {
    auto sols = enumerate_solutions(build_problem(reps[i], xmode));
    if (filter) {
      std::vector<Design> kept;
      kept.reserve(sols.size());
      for (auto& d : sols)
        if (passes_bound(d, *chain)) kept.push_back(std::move(d));
      sols = std::move(kept);
    }
    per_parent[i] = std::move(sols);
  });

  std::vector<Design> pool;
  for (auto& chunk : per_parent) {
    result.stats.solution_count += static_cast<i64>(chunk.size());
    for (auto& d : chunk) pool.push_back(std::move(d));
  }
  result.reps = reduce_to_classes(pool, workers);
  result.stats.class_count = static_cast<i64>(result.reps.size());
  result.stats.seconds = seconds_since(t0);
  return result;
}

namespace {

void write_checkpoint(const fs::path& dir, const EnumerationState& st,
                      const std::vector<Design>& reps, const CampaignOptions& opt,
                      const std::map<int, int>& gma_index) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  // reps file first, manifest second: a torn write leaves the previous
  // manifest pointing at intact files
  if (!reps.empty()) {
    std::ostringstream os;
    write_design_set(os, reps);
    atomic_write(dir / reps_name(st.last_k), os.str());
  }

  std::ostringstream m;
  m << "format = oatk-campaign-v1\n";
  m << "N = " << st.base.runs << "\n";
  m << "s = " << st.base.levels << "\n";
  m << "t = " << st.base.strength << "\n";
  m << "mode = " << mode_name(st.mode) << "\n";
  if (opt.chain) {
    m << "kinput = " << opt.chain->k_input << "\n";
    m << "abound = " << opt.chain->bounds.at(opt.chain->k_input) << "\n";
    m << "recursion = "
      << (opt.chain->mode == RecursionMode::Sharpened ? "sharpened" : "literal") << "\n";
  }
  m << "last_k = " << st.last_k << "\n";
  m << "done = " << (st.done ? 1 : 0) << "\n";
  m << "budget_exceeded = " << (st.budget_exceeded ? 1 : 0) << "\n";
  for (const auto& [k, stats] : st.per_level) {
    m << "classes." << k << " = " << stats.class_count << "\n";
    m << "m." << k << " = " << stats.solution_count << "\n";
    m << "time." << k << " = " << stats.seconds << "\n";
    if (fs::exists(dir / reps_name(k))) {
      m << "file." << k << " = " << reps_name(k) << "\n";
      m << "hash." << k << " = " << file_hash(dir / reps_name(k)) << "\n";
    }
    if (st.gma_gwp.count(k)) {
      m << "gma." << k << " = " << join_i64(st.gma_gwp.at(k).scaled) << "\n";
      if (gma_index.count(k)) m << "gmaidx." << k << " = " << gma_index.at(k) << "\n";
    }
  }
  atomic_write(dir / "manifest.txt", m.str());
}

// Restores state from a manifest; returns the last level's representatives.
std::vector<Design> load_checkpoint(const fs::path& dir, const DesignParams& base,
                                    CampaignMode mode, const CampaignOptions& opt,
                                    EnumerationState& st, std::map<int, int>& gma_index) {
  Manifest man = read_manifest(dir / "manifest.txt");
  if (man.get("format") != "oatk-campaign-v1") throw CheckpointCorrupt("unknown manifest format");
  if (std::stoi(man.get("N")) != base.runs || std::stoi(man.get("s")) != base.levels ||
      std::stoi(man.get("t")) != base.strength || man.get("mode") != mode_name(mode))
    throw CheckpointCorrupt("checkpoint was written for different campaign parameters");
  if (opt.chain &&
      (!man.has("kinput") || std::stoi(man.get("kinput")) != opt.chain->k_input ||
       std::stoll(man.get("abound")) != opt.chain->bounds.at(opt.chain->k_input)))
    throw CheckpointCorrupt("checkpoint was written for a different bound chain");
  st.last_k = std::stoi(man.get("last_k"));
  st.done = man.get("done") == "1";
  st.budget_exceeded = man.has("budget_exceeded") && man.get("budget_exceeded") == "1";

  std::vector<Design> reps;
  for (int k = base.strength; k <= st.last_k; ++k) {
    std::string suffix = "." + std::to_string(k);
    if (!man.has("classes" + suffix)) continue;
    LevelStats stats;
    stats.class_count = std::stoll(man.get("classes" + suffix));
    stats.solution_count = std::stoll(man.get("m" + suffix));
    stats.seconds = std::stod(man.get("time" + suffix));
    st.per_level[k] = stats;
    if (man.has("file" + suffix)) {
      fs::path f = dir / man.get("file" + suffix);
      if (file_hash(f) != man.get("hash" + suffix))
        throw CheckpointCorrupt("hash mismatch for " + f.string());
      if (k == st.last_k || man.has("gmaidx" + suffix)) {
        auto designs = load_design_set(f.string());
        if (man.has("gmaidx" + suffix)) {
          int idx = std::stoi(man.get("gmaidx" + suffix));
          gma_index[k] = idx;
          st.gma_rep[k] = designs[idx];
        }
        if (k == st.last_k) reps = std::move(designs);
      }
    }
    if (man.has("gma" + suffix)) {
      Gwp g;
      g.params = make_params(base.runs, k, base.levels, base.strength);
      std::istringstream gs(man.get("gma" + suffix));
      std::string tok;
      while (std::getline(gs, tok, ',')) g.scaled.push_back(std::stoll(tok));
      st.gma_gwp[k] = std::move(g);
    }
  }
  return reps;
}

}  // namespace

EnumerationState run_campaign(const DesignParams& base, CampaignMode mode,
                              const CampaignOptions& opt) {
  if (base.factors != base.strength)
    throw InvalidParams("campaign parameters are given at k = t");
  if (mode != CampaignMode::Full) {
    if (base.levels != 2) throw DirectedUnsupported("directed campaigns need 2-level designs");
    if (base.index % 2 == 0)
      throw DirectedUnsupported("directed campaigns need odd lambda; raise t instead");
  }
  if (mode == CampaignMode::DirectedRecursion && !opt.chain)
    throw InvalidParams("directed-recursion campaigns need a bound chain");

  auto t0 = std::chrono::steady_clock::now();
  EnumerationState st;
  st.base = base;
  st.mode = mode;
  std::map<int, int> gma_index;

  std::vector<Design> reps;
  fs::path dir = opt.checkpoint_dir;
  if (opt.resume && !dir.empty() && fs::exists(dir / "manifest.txt")) {
    reps = load_checkpoint(dir, base, mode, opt, st, gma_index);
    if (opt.log)
      opt.log("resumed at k = " + std::to_string(st.last_k) + " with " +
              std::to_string(reps.size()) + " classes");
    if (st.done) return st;
    st.budget_exceeded = false;
  } else {
    reps = {seed_design(base)};
    st.last_k = base.strength;
    st.per_level[base.strength] = LevelStats{1, 1, 0.0};
    auto pick = pick_gma(reps);
    st.gma_gwp[base.strength] = pick.gwp;
    st.gma_rep[base.strength] = reps[0];
    gma_index[base.strength] = 0;
    write_checkpoint(dir, st, reps, opt, gma_index);
  }

  while (!st.done) {
    int k = st.last_k + 1;
    // a k_max stop is resumable, so it does not mark the campaign done
    if (opt.k_max >= 0 && k > opt.k_max) break;
    if (opt.budget_seconds >= 0 && seconds_since(t0) > opt.budget_seconds) {
      st.budget_exceeded = true;
      write_checkpoint(dir, st, reps, opt, gma_index);
      break;
    }
    auto level = extend_level(reps, mode, opt.chain, opt.workers);
    st.per_level[k] = level.stats;
    st.last_k = k;
    reps = std::move(level.reps);
    auto pick = pick_gma(reps);
    if (pick.index >= 0) {
      st.gma_gwp[k] = pick.gwp;
      st.gma_rep[k] = reps[pick.index];
      gma_index[k] = pick.index;
    }
    if (reps.empty()) st.done = true;
    write_checkpoint(dir, st, reps, opt, gma_index);
    if (opt.log) {
      std::ostringstream os;
      os << "k = " << k << "  classes = " << level.stats.class_count
         << "  solutions = " << level.stats.solution_count << "  time = " << level.stats.seconds
         << "s";
      opt.log(os.str());
    }
  }
  return st;
}

}  // namespace oatk
