// Command-line front end: enumeration campaigns, heuristic searches, word
// length pattern reports, catalog validation, Hadamard-derived inputs.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oatk/catalog.hpp"
#include "oatk/design_io.hpp"
#include "oatk/enumerate.hpp"
#include "oatk/hadamard.hpp"
#include "oatk/heuristics.hpp"
#include "oatk/iso.hpp"
#include "oatk/spectra.hpp"

namespace fs = std::filesystem;
using namespace oatk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

std::string default_catalog_path() {
  if (const char* env = std::getenv("OATK_CATALOG")) return env;
  return "data/gma_catalog.txt";
}

// "NUM/DEN" or plain integer
std::pair<i64, i64> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return {std::stoll(s), 1};
  return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

std::string gwp_decimals(const Gwp& g, int from, int upto) {
  std::ostringstream os;
  i64 n2 = static_cast<i64>(g.params.runs) * g.params.runs;
  for (int j = from; j <= std::min(upto, g.params.factors); ++j) {
    if (j > from) os << ", ";
    os << format_scaled(g.scaled[j], n2);
  }
  return os.str();
}

std::string join_i64(const std::vector<i64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

int found_strength(const Design& d) {
  int t = 0;
  for (int probe = 1; probe <= d.params.factors; ++probe) {
    DesignParams p;
    try {
      p = make_params(d.params.runs, d.params.factors, d.params.levels, probe);
    } catch (const InvalidParams&) {
      break;
    }
    Design copy = d;
    copy.params = p;
    if (!verify_strength(copy, probe)) break;
    t = probe;
  }
  return t;
}

int cmd_enumerate(int n, int s, int t, int kmax, const std::string& mode_name,
                  const std::string& kinput_opt, const std::string& abound_opt,
                  const std::string& recursion_name, const std::string& out_dir, int workers,
                  bool resume, double budget) {
  DesignParams base = make_params(n, t, s, t);
  CampaignMode mode;
  if (mode_name == "full") mode = CampaignMode::Full;
  else if (mode_name == "directed") mode = CampaignMode::Directed;
  else if (mode_name == "directed-recursion") mode = CampaignMode::DirectedRecursion;
  else throw CLI::ValidationError("--mode must be full, directed or directed-recursion");

  RecursionBoundChain chain;
  CampaignOptions opt;
  opt.k_max = kmax;
  opt.checkpoint_dir = out_dir;
  opt.workers = workers;
  opt.resume = resume;
  opt.budget_seconds = budget;
  opt.log = [](const std::string& line) { std::cout << line << "\n"; };
  if (mode == CampaignMode::DirectedRecursion) {
    if (kinput_opt.empty() || abound_opt.empty())
      throw CLI::ValidationError("directed-recursion needs --kinput and --a-bound");
    auto [num, den] = parse_rational(abound_opt);
    i64 scaled = static_cast<i64>(n) * n * num / den;
    chain = recursion_chain(base, std::stoi(kinput_opt), scaled,
                            recursion_name == "literal" ? RecursionMode::Literal
                                                        : RecursionMode::Sharpened);
    opt.chain = &chain;
  } else if (!kinput_opt.empty() || !abound_opt.empty()) {
    throw CLI::ValidationError("--kinput/--a-bound apply to directed-recursion mode only");
  }

  EnumerationState st = run_campaign(base, mode, opt);

  std::ostringstream summary;
  summary << "   k     classes         |M|    time(s)   gma A_" << (t + 1) << ".." << (t + 4)
          << "\n";
  for (const auto& [k, stats] : st.per_level) {
    summary << std::setw(4) << k << std::setw(12) << stats.class_count << std::setw(12)
            << stats.solution_count << std::setw(11) << std::fixed << std::setprecision(2)
            << stats.seconds;
    if (st.gma_gwp.count(k)) summary << "   " << gwp_decimals(st.gma_gwp.at(k), t + 1, t + 4);
    summary << "\n";
  }
  summary << "\n";
  for (const auto& [k, stats] : st.per_level) {
    summary << "classes." << k << " = " << stats.class_count << "\n";
    summary << "m." << k << " = " << stats.solution_count << "\n";
    if (st.gma_gwp.count(k)) summary << "gma." << k << " = " << join_i64(st.gma_gwp.at(k).scaled) << "\n";
  }
  summary << "budget_exceeded = " << (st.budget_exceeded ? 1 : 0) << "\n";
  std::cout << summary.str();
  if (!out_dir.empty()) {
    std::ofstream os(fs::path(out_dir) / "summary.txt");
    os << summary.str();
  }
  return st.budget_exceeded ? kExitBudget : kExitOk;
}

int cmd_gwp(const std::string& file, bool exact, int rmax) {
  Design d = load_design(file);
  const auto& p = d.params;
  i64 n2 = static_cast<i64>(p.runs) * p.runs;
  std::cout << "OA(" << p.runs << "," << p.factors << "," << p.levels << "," << p.strength
            << ")  lambda = " << p.index << "\n";
  std::cout << "strength found: " << found_strength(d) << " (declared " << p.strength << ")\n";

  auto dist = distance_distribution(d);
  std::cout << "distance distribution B:";
  for (int i = 0; i <= p.factors; ++i) std::cout << " " << format_scaled(dist.scaled[i], p.runs, 3);
  std::cout << "\n";
  if (exact) std::cout << "scaled N*B: " << join_i64(dist.scaled) << "\n";

  auto gwp = gwp_from_distance(dist);
  std::cout << "gwp A: " << gwp_decimals(gwp, 1, p.factors) << "\n";
  if (exact) std::cout << "scaled N^2*A: " << join_i64(gwp.scaled) << "\n";

  if (p.levels == 2) {
    int r = rmax > 0 ? std::min(rmax, p.factors) : std::min(p.factors, 12);
    auto js = j_spectrum(d, r);
    auto report = check_lemma2(js);
    std::cout << "parity checks (subset sizes <= " << r << "): "
              << (report.ok() ? "ok" : std::to_string(report.violations.size()) + " violations")
              << "\n";
    bool ok = true;
    for (int j = p.strength + 1; j <= p.factors && ok; ++j) {
      auto [phi1, phi2] = lemma3_residue(p, j);
      i64 v = gwp.scaled[j] - phi1;
      ok = v >= 0 && v % phi2 == 0;
      if (!ok)
        std::cout << "residue divisibility fails at j = " << j << " (phi1 = " << phi1
                  << ", phi2 = " << phi2 << ", N^2*A_j = " << gwp.scaled[j] << ")\n";
    }
    if (ok) std::cout << "residue divisibility: ok\n";
  }
  (void)n2;
  return kExitOk;
}

int cmd_search_backward(const std::string& parent_file, int k, int restarts, std::uint64_t seed,
                        const std::string& out_dir) {
  Design parent = load_design(parent_file);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  auto [best, gwp] = backward_search(parent, k, cfg);
  std::cout << "best A: " << gwp_decimals(gwp, 1, std::min(k, best.params.strength + 4)) << "\n";
  std::cout << "scaled: " << join_i64(gwp.scaled) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    char name[32];
    std::snprintf(name, sizeof(name), "best_k%02d.txt", k);
    save_design((fs::path(out_dir) / name).string(), best);
  }
  return kExitOk;
}

int cmd_search_fb(int n, int s, int t, const std::string& mode_name, double budget,
                  i64 iterations, std::uint64_t seed, const std::string& out_dir) {
  DesignParams base = make_params(n, t, s, t);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.budget_seconds = budget;
  cfg.max_iterations = iterations;
  cfg.mode = mode_name == "directed" ? ExtendMode::Directed : ExtendMode::Plain;
  std::ofstream log_file;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    log_file.open(fs::path(out_dir) / "log.txt");
  }
  cfg.log = [&](const std::string& line) {
    std::cout << line << "\n";
    if (log_file) log_file << line << "\n";
  };
  auto res = forward_backward_search(base, cfg);
  std::cout << "iterations = " << res.iterations << "\n";
  int kmax = 0;
  for (const auto& [k, entry] : res.best.entries) {
    kmax = std::max(kmax, k);
    std::cout << "k = " << k << "  A = " << gwp_decimals(entry.second, t + 1, t + 4) << "\n";
    if (!out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "best_k%02d.txt", k);
      save_design((fs::path(out_dir) / name).string(), entry.first);
    }
  }
  std::cout << "kmax = " << kmax << "\n";
  return kExitOk;
}

int cmd_hadamard_derive(const std::string& file, const std::string& out_dir, bool dedupe,
                        bool zeros_ones) {
  auto h = load_hadamard(file, zeros_ones);
  auto designs = derive_oas(h);
  std::cout << "derived " << designs.size() << " saturated designs of order " << h.order << "\n";
  if (dedupe) {
    designs = reduce_to_classes(designs);
    std::cout << "classes after reduction: " << designs.size() << "\n";
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    save_design_set((fs::path(out_dir) / "derived.txt").string(), designs);
  }
  return kExitOk;
}

int cmd_hadamard_kron(const std::string& a_file, const std::string& b_file,
                      const std::string& out_file, bool zeros_ones) {
  auto a = load_hadamard(a_file, zeros_ones);
  auto b = load_hadamard(b_file, zeros_ones);
  auto k = kronecker(a, b);
  std::ofstream os(out_file);
  if (!os) throw ParseError("cannot open for writing: " + out_file);
  for (int i = 0; i < k.order; ++i) {
    for (int j = 0; j < k.order; ++j) os << (k.at(i, j) == 1 ? '+' : '-');
    os << '\n';
  }
  std::cout << "order " << k.order << " matrix written to " << out_file << "\n";
  return kExitOk;
}

int cmd_catalog_validate(const std::string& path) {
  auto entries = load_catalog(path);
  int failures = 0;
  for (const auto& e : entries) {
    auto report = validate_entry(e);
    if (!report.empty()) {
      ++failures;
      std::cout << "OA(" << e.params.runs << "," << e.params.factors << "," << e.params.levels
                << "," << e.params.strength << "):\n";
      for (const auto& line : report) std::cout << "  " << line << "\n";
    }
  }
  std::cout << (entries.size() - failures) << "/" << entries.size() << " rows pass\n";
  return failures == 0 ? kExitOk : kExitData;
}

int cmd_catalog_compare(const std::string& design_file, const std::string& catalog_path) {
  auto entries = load_catalog(catalog_path);
  Design d = load_design(design_file);
  auto status = compare_against_catalog(d, entries);
  switch (status) {
    case CatalogStatus::NoEntry:
      std::cout << "no catalog entry for these parameters\n";
      break;
    case CatalogStatus::MatchesGma:
      std::cout << "matches the catalog optimum\n";
      break;
    case CatalogStatus::WeakGma:
      std::cout << "weak match: first nonzero pattern entry agrees\n";
      break;
    case CatalogStatus::Worse: {
      const CatalogEntry* e = find_entry(entries, d.params);
      Gwp mine = gwp_from_distance(distance_distribution(d));
      std::cout << "worse than the catalog optimum\n";
      std::cout << "design  A: " << gwp_decimals(mine, 1, d.params.factors) << "\n";
      std::cout << "catalog A: " << gwp_decimals(e->gwp, 1, d.params.factors) << "\n";
      for (int j = 1; j <= d.params.factors; ++j)
        if (mine.scaled[j] != e->gwp.scaled[j]) {
          std::cout << "first difference at j = " << j << "\n";
          break;
        }
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal array enumeration and search toolkit"};
  app.require_subcommand(1);

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate classes by column extension");
  int n = 0, s = 2, t = 2, kmax = -1, workers = 1;
  std::string mode = "full", kinput, abound, recursion = "sharpened", out_dir;
  bool resume = false;
  double budget = -1;
  enum_cmd->add_option("--N", n, "runs")->required();
  enum_cmd->add_option("--s", s, "levels")->required();
  enum_cmd->add_option("--t", t, "strength")->required();
  enum_cmd->add_option("--kmax", kmax, "stop after this many factors");
  enum_cmd->add_option("--mode", mode, "full | directed | directed-recursion");
  enum_cmd->add_option("--kinput", kinput, "bound chain start (directed-recursion)");
  enum_cmd->add_option("--a-bound", abound, "A_{t+2} bound at kinput, NUM/DEN (directed-recursion)");
  enum_cmd->add_option("--recursion", recursion, "sharpened | literal bound stepping");
  enum_cmd->add_option("--out", out_dir, "checkpoint/summary directory");
  enum_cmd->add_option("--workers", workers, "worker threads");
  enum_cmd->add_flag("--resume", resume, "resume from the checkpoint directory");
  enum_cmd->add_option("--budget", budget, "wall-clock budget in seconds");

  // gwp
  auto* gwp_cmd = app.add_subcommand("gwp", "report the word length pattern of a design file");
  std::string gwp_file;
  bool gwp_exact = false;
  int gwp_rmax = 0;
  gwp_cmd->add_option("file", gwp_file, "design file")->required();
  gwp_cmd->add_flag("--exact", gwp_exact, "print exact scaled integers too");
  gwp_cmd->add_option("--rmax", gwp_rmax, "parity check subset size cap");

  // search backward / fb
  auto* search_cmd = app.add_subcommand("search", "heuristic searches");
  search_cmd->require_subcommand(1);
  auto* back_cmd = search_cmd->add_subcommand("backward", "hill-climb column projections");
  std::string back_parent, back_out;
  int back_k = 0, back_restarts = 100;
  std::uint64_t back_seed = 1;
  back_cmd->add_option("--parent", back_parent, "parent design file")->required();
  back_cmd->add_option("--k", back_k, "projection size")->required();
  back_cmd->add_option("--restarts", back_restarts, "random restarts");
  back_cmd->add_option("--seed", back_seed, "rng seed");
  back_cmd->add_option("--out", back_out, "output directory");

  auto* fb_cmd = search_cmd->add_subcommand("fb", "forward walks with random objectives");
  int fb_n = 0, fb_s = 2, fb_t = 2;
  std::string fb_mode = "plain", fb_out;
  double fb_budget = -1;
  i64 fb_iters = -1;
  std::uint64_t fb_seed = 1;
  fb_cmd->add_option("--N", fb_n, "runs")->required();
  fb_cmd->add_option("--s", fb_s, "levels")->required();
  fb_cmd->add_option("--t", fb_t, "strength")->required();
  fb_cmd->add_option("--mode", fb_mode, "plain | directed extension steps");
  fb_cmd->add_option("--budget", fb_budget, "wall-clock budget in seconds");
  fb_cmd->add_option("--iterations", fb_iters, "cap on extension solves");
  fb_cmd->add_option("--seed", fb_seed, "rng seed");
  fb_cmd->add_option("--out", fb_out, "output directory");

  // hadamard derive / kron
  auto* had_cmd = app.add_subcommand("hadamard", "Hadamard matrix utilities");
  had_cmd->require_subcommand(1);
  auto* derive_cmd = had_cmd->add_subcommand("derive", "derive saturated designs");
  std::string derive_file, derive_out;
  bool derive_dedupe = false, derive_zeros = false;
  derive_cmd->add_option("file", derive_file, "matrix file")->required();
  derive_cmd->add_option("--out", derive_out, "output directory");
  derive_cmd->add_flag("--dedupe", derive_dedupe, "reduce to isomorphism classes");
  derive_cmd->add_flag("--zeros-ones", derive_zeros, "read 0/1 instead of +/-");

  auto* kron_cmd = had_cmd->add_subcommand("kron", "Kronecker product of two matrices");
  std::string kron_a, kron_b, kron_out;
  bool kron_zeros = false;
  kron_cmd->add_option("a", kron_a, "left matrix file")->required();
  kron_cmd->add_option("b", kron_b, "right matrix file")->required();
  kron_cmd->add_option("--out", kron_out, "output file")->required();
  kron_cmd->add_flag("--zeros-ones", kron_zeros, "read 0/1 instead of +/-");

  // catalog validate / compare
  auto* cat_cmd = app.add_subcommand("catalog", "reference catalog operations");
  cat_cmd->require_subcommand(1);
  auto* validate_cmd = cat_cmd->add_subcommand("validate", "check every shipped row");
  std::string cat_path = default_catalog_path();
  validate_cmd->add_option("--catalog", cat_path, "catalog file path");
  auto* compare_cmd = cat_cmd->add_subcommand("compare", "compare a design against the catalog");
  std::string compare_file, compare_cat = default_catalog_path();
  compare_cmd->add_option("file", compare_file, "design file")->required();
  compare_cmd->add_option("--catalog", compare_cat, "catalog file path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enum_cmd)
      return cmd_enumerate(n, s, t, kmax, mode, kinput, abound, recursion, out_dir, workers,
                           resume, budget);
    if (*gwp_cmd) return cmd_gwp(gwp_file, gwp_exact, gwp_rmax);
    if (*back_cmd) return cmd_search_backward(back_parent, back_k, back_restarts, back_seed, back_out);
    if (*fb_cmd) return cmd_search_fb(fb_n, fb_s, fb_t, fb_mode, fb_budget, fb_iters, fb_seed, fb_out);
    if (*derive_cmd) return cmd_hadamard_derive(derive_file, derive_out, derive_dedupe, derive_zeros);
    if (*kron_cmd) return cmd_hadamard_kron(kron_a, kron_b, kron_out, kron_zeros);
    if (*validate_cmd) return cmd_catalog_validate(cat_path);
    if (*compare_cmd) return cmd_catalog_compare(compare_file, compare_cat);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
