#include <cstdio>
#include <cstdlib>
#include <string>

#include "juliadim/verify.hpp"

using namespace juliadim;

// Runs every acceptance criterion at level full. Optional arguments pick
// single criteria by number.
int main(int argc, char** argv) {
  VerifyOptions opt;
  opt.level = VerifyLevel::full;
  bool ok = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (argc > 1) {
      bool wanted = false;
      for (int i = 1; i < argc; ++i) wanted |= std::atoi(argv[i]) == id;
      if (!wanted) continue;
    }
    CriterionResult r = run_criterion(id, opt);
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
    ok &= r.passed;
  }
  std::printf("%s\n", ok ? "all criteria passed" : "some criteria failed");
  return ok ? 0 : 1;
}
