#include <doctest.h>

#include <bit>

#include "helpers.hpp"
#include "oatk/iso.hpp"
#include "oatk/spectra.hpp"

using namespace oatk;

namespace {

// Independent oracle: the direct summation
//   P_j(x,s,k) = sum_i (-1)^i (s-1)^(j-i) C(x,i) C(k-x,j-i)
i64 krawtchouk_direct(int j, int x, int s, int k) {
  i64 acc = 0;
  for (int i = 0; i <= j; ++i) {
    i64 term = binomial(x, i) * binomial(k - x, j - i);
    i64 pw = 1;
    for (int e = 0; e < j - i; ++e) pw *= (s - 1);
    term *= pw;
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

// Oracle: J over a subset as the raw product sum with +-1 coding.
i64 j_direct(const Design& d, std::uint32_t mask) {
  i64 acc = 0;
  for (int r = 0; r < d.params.runs; ++r) {
    int prod = 1;
    for (int c = 0; c < d.params.factors; ++c)
      if (mask & (1u << c)) prod *= 1 - 2 * d.at(r, c);
    acc += prod;
  }
  return acc;
}

}  // namespace

TEST_CASE("krawtchouk initial values and frozen spots") {
  auto t5 = krawtchouk_table(2, 5);
  for (int x = 0; x <= 5; ++x) CHECK(t5->values[0][x] == 1);
  CHECK(t5->values[2][0] == 10);  // (s-1)^j C(k,j)
  auto t3 = krawtchouk_table(2, 3);
  CHECK(t3->values[1][1] == 1);   // frozen from the direct summation
  CHECK(krawtchouk_direct(1, 1, 2, 3) == 1);
}

TEST_CASE("krawtchouk recursion equals direct summation exhaustively") {
  for (int s : {2, 3})
    for (int k = 1; k <= 20; ++k) {
      auto table = krawtchouk_table(s, k);
      for (int j = 0; j <= k; ++j)
        for (int x = 0; x <= k; ++x) CHECK(table->values[j][x] == krawtchouk_direct(j, x, s, k));
    }
}

TEST_CASE("j spectrum of small designs") {
  auto f = test::factorial22();
  auto js = j_spectrum(f, 2);
  CHECK(js.j(0b11) == 0);  // strength-2 orthogonality

  auto x = test::xor43();
  auto jx = j_spectrum(x, 3);
  CHECK(jx.j(0b111) == j_direct(x, 0b111));
  CHECK(std::abs(jx.j(0b111)) == 4);

  // constant design: every J equals N
  auto c = test::design_from_rows({"000", "000", "000", "000", "000", "000"}, 2, 1);
  auto jc = j_spectrum(c, 3);
  for (std::uint32_t mask = 1; mask < 8; ++mask) CHECK(jc.j(mask) == 6);

  CHECK_THROWS_AS(j_spectrum(test::design_from_rows({"012", "120", "201"}, 3, 1), 2),
                  UnsupportedLevels);
}

TEST_CASE("wht path matches the direct product sum") {
  // 12-run strength-2 array from a Hadamard-style construction
  auto d = test::design_from_rows(
      {"00000", "00011", "01101", "01110", "10101", "10110", "11000", "11011", "00101", "01010",
       "10000", "11111"},
      2, 1);
  auto js = j_spectrum(d, 5);
  for (std::uint32_t mask = 1; mask < 32; ++mask) CHECK(js.j(mask) == j_direct(d, mask));
}

TEST_CASE("gwp from j spectrum") {
  auto x = test::xor43();
  auto g = gwp_from_j(j_spectrum(x, 3));
  CHECK(g.scaled[0] == 16);
  CHECK(g.scaled[1] == 0);
  CHECK(g.scaled[2] == 0);
  CHECK(g.scaled[3] == 16);  // single subset, J^2 = 16

  auto f = test::factorial22();
  auto gf = gwp_from_j(j_spectrum(f, 2));
  CHECK(gf.scaled[1] == 0);
  CHECK(gf.scaled[2] == 0);

  CHECK_THROWS_AS(gwp_from_j(j_spectrum(x, 2)), IncompleteSpectrum);
}

TEST_CASE("distance distribution basics") {
  auto c = test::design_from_rows({"000", "000", "000", "000"}, 2, 1);
  auto b = distance_distribution(c);
  CHECK(b.scaled == std::vector<i64>{16, 0, 0, 0});

  auto f = test::factorial22();
  auto bf = distance_distribution(f);
  CHECK(bf.scaled == std::vector<i64>{4, 8, 4});  // brute force over 16 ordered pairs
}

TEST_CASE("gwp from distance on reference rows") {
  // 24-run 12-factor optimum: B = (1,0,0,0,0,0,22,0,0,0,0,0,1)
  DistanceDistribution b;
  b.params = make_params(24, 12, 2, 2);
  b.scaled = {24, 0, 0, 0, 0, 0, 528, 0, 0, 0, 0, 0, 24};
  auto g = gwp_from_distance(b);
  CHECK(g.scaled[3] == 0);
  CHECK(g.scaled[4] == 55 * 576);  // A_4 = 55, cross-check 495 * 64
  CHECK(g.scaled[4] == 495 * 64);

  // 28-run 14-factor optimum rounds to 7.43, 65.00, 52.00, 104.00
  DistanceDistribution b28;
  b28.params = make_params(28, 14, 2, 2);
  b28.scaled = {28, 2, 0, 0, 0, 0, 156, 364, 208, 0, 0, 0, 0, 26, 0};
  auto g28 = gwp_from_distance(b28);
  i64 n2 = 28 * 28;
  CHECK(format_scaled(g28.scaled[3], n2) == "7.43");
  CHECK(format_scaled(g28.scaled[4], n2) == "65.00");
  CHECK(format_scaled(g28.scaled[5], n2) == "52.00");
  CHECK(format_scaled(g28.scaled[6], n2) == "104.00");

  // all-pairs-at-distance-zero: A_j = (s-1)^j C(k,j)
  DistanceDistribution z;
  z.params = make_params(9, 4, 3, 1);
  z.scaled = {81, 0, 0, 0, 0};
  auto gz = gwp_from_distance(z);
  for (int j = 0; j <= 4; ++j) {
    i64 pw = 1;
    for (int e = 0; e < j; ++e) pw *= 2;
    CHECK(gz.scaled[j] == 81 * pw * binomial(4, j));
  }
}

TEST_CASE("negative transform result is rejected") {
  DistanceDistribution b;
  b.params = make_params(4, 2, 2, 1);
  b.scaled = {4, 0, 12};  // too much mass at full distance
  CHECK_THROWS_AS(gwp_from_distance(b), NegativeGwp);
}

TEST_CASE("distance from gwp inverts the transform") {
  auto f = test::xor43();
  auto b = distance_distribution(f);
  auto g = gwp_from_distance(b);
  auto back = distance_from_gwp(g);
  CHECK(back.scaled == b.scaled);

  // full factorial gwp maps to B = (1,2,1)
  auto bf = distance_distribution(test::factorial22());
  auto gf = gwp_from_distance(bf);
  auto bb = distance_from_gwp(gf);
  CHECK(bb.scaled == std::vector<i64>{4, 8, 4});

  Gwp bad;
  bad.params = make_params(4, 2, 2, 1);
  bad.scaled = {16, 1, 0};
  CHECK_THROWS_AS(distance_from_gwp(bad), NotIntegral);
}

TEST_CASE("gwp comparison and weak equality") {
  auto p = make_params(28, 5, 2, 2);
  Gwp a{p, {784, 0, 0, 160, 10, 0}};
  Gwp b{p, {784, 0, 0, 176, 0, 0}};
  CHECK(compare_gwp(a, b) == Ordering::Less);
  CHECK(compare_gwp(a, a) == Ordering::Equal);
  CHECK(compare_gwp(b, a) == Ordering::Greater);
  CHECK(weak_gma_equal(a, a));
  Gwp c{p, {784, 0, 0, 160, 90, 12}};
  CHECK(weak_gma_equal(a, c));   // same first nonzero entry
  CHECK(!weak_gma_equal(a, b));  // differs at the first nonzero index
  Gwp zero1{p, {784, 0, 0, 0, 0, 0}};
  Gwp zero2{p, {784, 0, 0, 0, 0, 0}};
  CHECK(weak_gma_equal(zero1, zero2));
  Gwp other{make_params(28, 4, 2, 2), {784, 0, 0, 160, 10}};
  CHECK_THROWS_AS(compare_gwp(a, other), ParamMismatch);
}

TEST_CASE("strength verification") {
  auto x = test::xor43();
  CHECK(verify_strength(x, 2));
  CHECK(!verify_strength(x, 3));
  auto f = test::factorial22();
  CHECK(verify_strength(f, 2));
  auto broken = x;
  broken.at(0, 0) = 1;  // one perturbed cell
  CHECK(!verify_strength(broken, 2));
}

TEST_CASE("parity checks catch fabricated violations") {
  // genuine array: clean report
  auto x = test::xor43();
  CHECK(check_lemma2(j_spectrum(x, 3)).ok());

  // random non-array matrix: expect violations
  auto junk = test::design_from_rows({"001", "011", "111", "110"}, 2, 1);
  auto report = check_lemma2(j_spectrum(junk, 3));
  CHECK(!report.ok());
}

TEST_CASE("residue pair values") {
  auto p = make_params(20, 10, 2, 2);
  auto [phi1, phi2] = lemma3_residue(p, 4);
  CHECK(phi1 == 3360);  // C(10,4) * 16, parity indicator on
  CHECK(phi2 == 128);
  // indicator off when C(j-1, j-t-1) is even
  auto p6 = make_params(20, 10, 2, 2);
  auto [q1, q2] = lemma3_residue(p6, 6);  // C(5,3) = 10 even
  CHECK(q1 == 0);
  CHECK(q2 == 64);
  CHECK_THROWS_AS(lemma3_residue(p, 2), InvalidParams);
}

TEST_CASE("two gwp routes agree on two-level designs") {
  auto designs = {test::factorial22(), test::xor43()};
  for (const auto& d : designs) {
    auto via_j = gwp_from_j(j_spectrum(d, d.params.factors));
    auto via_b = gwp_from_distance(distance_distribution(d));
    CHECK(via_j.scaled == via_b.scaled);
  }
}
