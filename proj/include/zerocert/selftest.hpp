#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerocert {

struct SelftestOptions {
  // Multiplies the closed-form domination constant before it is compared with
  // its oracles. Anything other than 1 must make the run fail (negative control).
  double closed_form_corruption = 1.0;
};

struct SelftestSuite {
  std::string name;
  int passed = 0;
  int total = 0;

  bool ok() const { return passed == total; }
};

struct SelftestReport {
  std::vector<SelftestSuite> suites;

  bool all_passed() const;
};

SelftestReport run_selftest(const SelftestOptions& options = {});

void print_selftest(std::ostream& out, const SelftestReport& report);

}  // namespace zerocert
