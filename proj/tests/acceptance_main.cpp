// Acceptance suite: runs every gate at its stated tolerance and prints one
// pass/fail line per criterion. Exits nonzero on any failure.
#include <cstdio>
#include <string>
#include <vector>

#include "oatk/core.hpp"

namespace {
int failures = 0;
void report(int id, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}
}  // namespace

int main() {
  report(0, "placeholder", true);
  return failures == 0 ? 1 : 1;  // placeholder fails until the suite lands
}
