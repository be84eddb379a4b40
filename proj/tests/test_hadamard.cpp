#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "oatk/hadamard.hpp"
#include "oatk/iso.hpp"
#include "oatk/spectra.hpp"

using namespace oatk;
namespace fs = std::filesystem;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = (fs::temp_directory_path() / name).string();
  std::ofstream os(path);
  os << content;
  return path;
}

}  // namespace

TEST_CASE("loading small matrices") {
  auto h2 = load_hadamard(temp_file("oatk_h2.had", "++\n+-\n"));
  CHECK(h2.order == 2);
  CHECK(h2.at(1, 1) == -1);

  CHECK_THROWS_AS(load_hadamard(temp_file("oatk_ragged.had", "++\n+\n")), ParseError);
  CHECK_THROWS_AS(load_hadamard(temp_file("oatk_bad.had", "++\n++\n")), NotHadamard);

  auto h2z = load_hadamard(temp_file("oatk_h2z.had", "00\n01\n"), /*zeros_ones=*/true);
  CHECK(h2z.at(1, 1) == -1);
}

TEST_CASE("shipped catalog matrices validate") {
  for (const char* name :
       {"hadamard/h2.had", "hadamard/h12_paley.had", "hadamard/h16_sylvester.had",
        "hadamard/h20_paley.had", "hadamard/h24_paley.had"}) {
    auto h = load_hadamard(test::data_path(name));
    CHECK(h.order >= 2);
  }
}

TEST_CASE("kronecker products") {
  auto h2 = load_hadamard(test::data_path("hadamard/h2.had"));
  auto h4 = kronecker(h2, h2);
  CHECK(h4.order == 4);
  auto h1 = make_hadamard(1, {1});
  auto same = kronecker(h2, h1);
  CHECK(same.cells == h2.cells);

  auto h20 = load_hadamard(test::data_path("hadamard/h20_paley.had"));
  auto h40 = kronecker(h20, h2);
  CHECK(h40.order == 40);  // input shape for 40-run saturated designs
}

TEST_CASE("derived saturated designs") {
  auto h2 = load_hadamard(test::data_path("hadamard/h2.had"));
  auto h4 = kronecker(h2, h2);
  auto designs = derive_oas(h4);
  REQUIRE(designs.size() == 4);
  for (const auto& d : designs) {
    CHECK(d.params.factors == 3);
    CHECK(verify_strength(d, 2));
  }
  CHECK(reduce_to_classes(designs).size() == 1);  // all isomorphic at order 4

  auto h12 = load_hadamard(test::data_path("hadamard/h12_paley.had"));
  for (const auto& d : derive_oas(h12)) CHECK(verify_strength(d, 2));
}
