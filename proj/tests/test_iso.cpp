#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "oatk/enumerate.hpp"
#include "oatk/extend.hpp"
#include "oatk/iso.hpp"
#include "oatk/rng.hpp"
#include "oatk/spectra.hpp"

using namespace oatk;

namespace {

// Oracle: exhaustive isomorphism test over all column permutations and
// per-column level maps, with rows compared as sorted multisets.
bool brute_force_isomorphic(const Design& a, const Design& b) {
  if (!(a.params == b.params)) return false;
  int n = a.params.runs, k = a.params.factors, s = a.params.levels;
  auto sorted_rows = [&](const Design& d) {
    std::vector<std::vector<std::uint8_t>> rows(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < k; ++c) rows[r].push_back(d.at(r, c));
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  auto target = sorted_rows(b);

  std::vector<int> colp(k);
  std::iota(colp.begin(), colp.end(), 0);
  std::vector<std::uint8_t> base(s);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<std::uint8_t>> perms;
  {
    auto p = base;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  do {
    std::vector<int> pick(k, 0);
    while (true) {
      std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(k));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) rows[r][c] = perms[pick[c]][a.at(r, colp[c])];
      std::sort(rows.begin(), rows.end());
      if (rows == target) return true;
      int i = k - 1;
      while (i >= 0 && pick[i] == static_cast<int>(perms.size()) - 1) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = 0;
    }
  } while (std::next_permutation(colp.begin(), colp.end()));
  return false;
}

}  // namespace

TEST_CASE("canonical key is invariant under seeded isomorphs") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto designs = {test::factorial22(), test::xor43(), seed,
                  test::design_from_rows({"012", "120", "201", "000", "111", "222", "021", "102",
                                          "210"},
                                         3, 1)};
  for (const auto& d : designs) {
    auto key = canonical_key(d);
    for (std::uint64_t s = 1; s <= 100; ++s) CHECK(canonical_key(random_isomorph(d, s)) == key);
  }
}

TEST_CASE("canonical form is idempotent") {
  for (const auto& d : {test::xor43(), seed_design(make_params(12, 2, 2, 2))}) {
    auto form = canonical_form(d);
    CHECK(canonical_form(form) == form);
    CHECK(canonical_key(form) == canonical_key(d));
  }
}

TEST_CASE("the five seed extensions fall into three classes") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto sols = enumerate_solutions(build_problem(seed, ExtendMode::Plain));
  REQUIRE(sols.size() == 5);
  std::set<CanonicalKey> keys;
  for (const auto& d : sols) keys.insert(canonical_key(d));
  CHECK(keys.size() == 3);
  auto reps = reduce_to_classes(sols);
  CHECK(reps.size() == 3);
  // representatives are canonical forms, ordered by key
  for (const auto& r : reps) CHECK(canonical_form(r) == r);
  for (std::size_t i = 1; i < reps.size(); ++i)
    CHECK(key_of_form(reps[i - 1]) < key_of_form(reps[i]));
}

TEST_CASE("class reduction is idempotent and order-insensitive") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto sols = enumerate_solutions(build_problem(seed, ExtendMode::Plain));
  auto reps = reduce_to_classes(sols);
  CHECK(reduce_to_classes(reps) == reps);
  auto shuffled = sols;
  SplitMix64 rng(7);
  rng.shuffle(shuffled);
  CHECK(reduce_to_classes(shuffled) == reps);
  // single design reduces to its own class form
  CHECK(reduce_to_classes({test::xor43()}).size() == 1);
  CHECK_THROWS_AS(reduce_to_classes({test::xor43(), test::factorial22()}), ParamMismatch);
}

TEST_CASE("distance distribution is isomorphism invariant") {
  auto d = test::xor43();
  auto b = distance_distribution(d);
  for (std::uint64_t s = 1; s <= 25; ++s)
    CHECK(distance_distribution(random_isomorph(d, s)).scaled == b.scaled);
  auto fp = iso_fingerprint(d);
  for (std::uint64_t s = 1; s <= 25; ++s) CHECK(iso_fingerprint(random_isomorph(d, s)) == fp);
}

TEST_CASE("keys agree with the exhaustive group search on small cases") {
  auto seed = seed_design(make_params(20, 2, 2, 2));
  auto level3 = reduce_to_classes(enumerate_solutions(build_problem(seed, ExtendMode::Plain)));
  std::vector<Design> level4;
  for (const auto& parent : level3) {
    auto sols = enumerate_solutions(build_problem(parent, ExtendMode::Plain));
    level4.insert(level4.end(), sols.begin(), sols.end());
  }
  auto reps4 = reduce_to_classes(level4);
  CHECK(reps4.size() == 3);

  // distinct representatives: never isomorphic by brute force
  for (std::size_t i = 0; i < reps4.size(); ++i)
    for (std::size_t j = i + 1; j < reps4.size(); ++j)
      CHECK(!brute_force_isomorphic(reps4[i], reps4[j]));
  // same class: always isomorphic by brute force
  for (const auto& r : reps4) CHECK(brute_force_isomorphic(r, random_isomorph(r, 99)));
  // cross-check key equality against brute force over the raw pool
  for (const auto& d : level4) {
    auto key = canonical_key(d);
    for (const auto& r : reps4)
      CHECK((key == key_of_form(r)) == brute_force_isomorphic(d, r));
  }
}

TEST_CASE("random isomorph is deterministic in the seed") {
  auto d = test::xor43();
  CHECK(random_isomorph(d, 5) == random_isomorph(d, 5));
  CHECK(verify_strength(random_isomorph(d, 5), 2));
}
