#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oatk/enumerate.hpp"
#include "oatk/extend.hpp"
#include "oatk/iso.hpp"
#include "oatk/spectra.hpp"

using namespace oatk;

namespace {

// Brute-force oracle: all 0/1 columns satisfying balance and the product
// equations (no symmetry-breaking constraints, no fixed first entry).
std::vector<std::vector<std::uint8_t>> brute_force_extensions(const Design& parent) {
  int n = parent.params.runs;
  int t = parent.params.strength;
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::vector<std::uint8_t> col(n);
    for (int i = 0; i < n; ++i) col[i] = (bits >> i) & 1;
    Design cand = append_column(parent, col);
    if (verify_strength(cand, t)) out.push_back(col);
  }
  return out;
}

i64 count_ordered_with_orbits(const Design& parent, const std::vector<Design>& sols) {
  // each ordered solution stands for prod C(group size, ones in group)
  // raw columns once within-group permutations are freed
  std::map<std::vector<std::uint8_t>, std::vector<int>> groups;
  int n = parent.params.runs, kp = parent.params.factors;
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint8_t> row(parent.cells.begin() + static_cast<std::size_t>(i) * kp,
                                  parent.cells.begin() + static_cast<std::size_t>(i + 1) * kp);
    groups[row].push_back(i);
  }
  i64 total = 0;
  for (const auto& d : sols) {
    i64 orbit = 1;
    for (const auto& [row, members] : groups) {
      int ones = 0;
      for (int i : members) ones += d.at(i, kp) == 0;  // level 0 = bit 1
      orbit *= binomial(static_cast<int>(members.size()), ones);
    }
    total += orbit;
  }
  return total;
}

}  // namespace

TEST_CASE("full factorial has exactly one extension") {
  auto prob = build_problem(test::factorial22(), ExtendMode::Plain);
  auto sols = enumerate_solutions(prob);
  REQUIRE(sols.size() == 1);
  // new column in level form: 0,1,1,0 (bit form 1,0,0,1)
  CHECK(sols[0].at(0, 2) == 0);
  CHECK(sols[0].at(1, 2) == 1);
  CHECK(sols[0].at(2, 2) == 1);
  CHECK(sols[0].at(3, 2) == 0);
  // oracle agreement: 2 raw columns collapse to 1 once level flips are fixed
  CHECK(brute_force_extensions(test::factorial22()).size() == 2);
}

TEST_CASE("constraint layout on the full factorial") {
  auto prob = build_problem(test::factorial22(), ExtendMode::Plain);
  // balance + two products + the fixed first entry; no equal rows
  REQUIRE(prob.constraints.size() == 4);
  CHECK(prob.constraints[0].rows.size() == 4);
  CHECK(prob.constraints[0].lo == 2);
  CHECK(prob.constraints[1].rows == std::vector<std::int32_t>{0, 1});
  CHECK(prob.constraints[1].lo == 1);
  CHECK(prob.constraints[2].rows == std::vector<std::int32_t>{0, 2});
  CHECK(prob.constraints[3].rows == std::vector<std::int32_t>{0});
  for (auto p : prob.prev_equal) CHECK(p == -1);
}

TEST_CASE("twenty-run seed extends to five ordered solutions") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto sols = enumerate_solutions(build_problem(seed, ExtendMode::Plain));
  CHECK(sols.size() == 5);
  for (const auto& d : sols) {
    CHECK(verify_strength(d, 2));
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 2; ++c) CHECK(d.at(r, c) == seed.at(r, c));
  }
  CHECK(reduce_to_classes(sols).size() == 3);
}

TEST_CASE("directed constraints trim the seed extension") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto plain = build_problem(seed, ExtendMode::Plain);
  auto directed = build_problem(seed, ExtendMode::Directed);
  // one projection, four cells, interval constraints on each
  CHECK(directed.constraints.size() == plain.constraints.size() + 4);
  auto sols = enumerate_solutions(directed);
  // cells must hold 2 or 3 level-0 entries; two ordered assignments remain
  CHECK(sols.size() == 2);
  CHECK(reduce_to_classes(sols).size() == 1);
  for (const auto& d : sols) {
    auto js = j_spectrum(d, 3);
    CHECK(std::abs(js.j(0b111)) == 4);
  }
}

TEST_CASE("directed mode requires two levels and odd replication") {
  auto seed24 = seed_design(make_params(24, 2, 2, 2));  // lambda 6
  CHECK_THROWS_AS(build_problem(seed24, ExtendMode::Directed), DirectedUnsupported);
  auto seed27 = seed_design(make_params(27, 3, 3, 3));
  CHECK_THROWS_AS(build_problem(seed27, ExtendMode::Directed), DirectedUnsupported);
}

TEST_CASE("ordered solutions expand to the raw solution count") {
  // freeing within-group row permutations and the fixed first entry must
  // recover the brute-force count on small instances
  for (int n : {4, 8}) {
    auto seed = seed_design(make_params(n, 2, 2, 2));
    auto prob = build_problem(seed, ExtendMode::Plain);
    // drop the fixed first entry (the only single-row constraint)
    std::vector<CountConstraint> kept;
    for (const auto& c : prob.constraints)
      if (c.rows.size() != 1) kept.push_back(c);
    prob.constraints = std::move(kept);
    prob.row_constraints.assign(n, {});
    for (int id = 0; id < static_cast<int>(prob.constraints.size()); ++id)
      for (auto r : prob.constraints[id].rows) prob.row_constraints[r].push_back(id);
    auto ordered = enumerate_solutions(prob);
    CHECK(count_ordered_with_orbits(seed, ordered) ==
          static_cast<i64>(brute_force_extensions(seed).size()));
  }
}

TEST_CASE("min-objective extension is deterministic and minimal") {
  auto seed = seed_design(make_params(8, 2, 2, 2));
  Objective obj;
  obj.cost = {{1, 0, 1, 0, 1, 0, 1, 0}};
  auto one = enumerate_solutions(build_problem(seed, ExtendMode::Plain, &obj, false));
  REQUIRE(one.size() == 1);
  auto all = enumerate_solutions(build_problem(seed, ExtendMode::Plain));
  REQUIRE(!all.empty());
  auto cost_of = [&](const Design& d) {
    i64 c = 0;
    for (int i = 0; i < 8; ++i)
      if (d.at(i, 2) == 0) c += obj.cost[0][i];
    return c;
  };
  i64 best = INT64_MAX;
  for (const auto& d : all) best = std::min(best, cost_of(d));
  CHECK(cost_of(one[0]) == best);
  // ties break toward the lexicographically smallest column
  std::vector<std::uint8_t> col(8), best_col;
  bool first = true;
  for (const auto& d : all) {
    if (cost_of(d) != best) continue;
    for (int i = 0; i < 8; ++i) col[i] = d.at(i, 2);
    if (first || col < best_col) {
      best_col = col;
      first = false;
    }
  }
  for (int i = 0; i < 8; ++i) CHECK(one[0].at(i, 2) == best_col[i]);
}

TEST_CASE("objective shape is validated") {
  auto seed = seed_design(make_params(8, 2, 2, 2));
  Objective bad;
  bad.cost = {{1, 1, 1, 0, 0, 0, 0, 0}};  // three ones, needs four
  CHECK_THROWS_AS(build_problem(seed, ExtendMode::Plain, &bad, false), InvalidParams);
}

TEST_CASE("recursion bound chain, sharpened and literal") {
  auto base = make_params(20, 2, 2, 2);
  auto chain = recursion_chain(base, 10, 5500, RecursionMode::Sharpened);
  std::map<int, i64> want{{10, 5500}, {9, 3296}, {8, 1760}, {7, 816}, {6, 240}, {5, 80}, {4, 16}};
  CHECK(chain.bounds == want);

  auto literal = recursion_chain(base, 10, 5500, RecursionMode::Literal);
  CHECK(literal.bounds.at(9) == 10);
  CHECK(literal.bounds.at(8) == -1);  // infeasible from here down
  CHECK(literal.bounds.at(4) == -1);
}

TEST_CASE("bound filtering on extension output") {
  auto base = make_params(20, 2, 2, 2);
  auto chain = recursion_chain(base, 10, 5500, RecursionMode::Sharpened);
  auto seed = seed_design(base);
  auto level3 = reduce_to_classes(enumerate_solutions(build_problem(seed, ExtendMode::Directed)));
  REQUIRE(level3.size() == 1);
  auto level4 = enumerate_solutions(build_problem(level3[0], ExtendMode::Directed));
  bool saw_pass = false, saw_fail = false;
  for (const auto& d : level4) {
    auto g = gwp_from_distance(distance_distribution(d));
    bool pass = passes_bound(d, chain);
    CHECK(pass == (g.scaled[4] <= 16));
    saw_pass |= pass;
    saw_fail |= !pass;
  }
  CHECK(saw_pass);
  CHECK(saw_fail);
  CHECK_THROWS_AS(passes_bound(seed_design(make_params(20, 2, 2, 2)), chain), OutOfChain);
}
