// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance              required scope
//   acceptance --stretch    supersingular identity up to p = 47, PVI up to m = 5

#include "lattes/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>

using namespace lattes;

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  bool stretch = false;
  app.add_flag("--stretch", stretch, "extended ranges");
  CLI11_PARSE(app, argc, argv);

  VerifyOptions o;
  if (stretch) {
    o.pmax = 47;
    o.pvi_max_m = 5;
  }
  bool all = true;
  verify_all(o, [&](const CheckResult& r) {
    all = all && r.passed;
    std::printf("criterion %d: %s  %s | %s (%.1f s)\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}
