// Acceptance run: one line per criterion, non-zero exit if any fails.
// Pass --verbose for the per-check expected/observed values.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "assouad_kit/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double budget_seconds;
};

const std::vector<Criterion> kCriteria = {
    {1, "closed-form carpet 3x5 dimensions", "carpet-3x5", 1e-3},
    {2, "Hutchinson-Moran roots", "hutchinson-moran", 1e-3},
    {3, "counting bounds for {0} u {1/n}", "sequence-counting", 10.0},
    {4, "box estimators against closed forms", "estimator-sets", 60.0},
    {5, "spectrum estimators against closed forms", "estimator-spectra", 300.0},
    {6, "percolation box dimension and full subgrids", "percolation", 300.0},
    {7, "non-doubling carpet measure witness", "non-doubling", 1.0},
    {8, "property suites on 200 random specs each", "properties", 120.0},
    {9, "affinity dimension of similarity systems", "affinity", 5.0},
};

std::string seconds(double s) {
  char buf[32];
  if (s < 1.0) std::snprintf(buf, sizeof buf, "%.3f ms", s * 1e3);
  else std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "--verbose") == 0;
  int passed = 0;
  for (const auto& c : kCriteria) {
    akit::SuiteReport rep;
    std::string error;
    try {
      rep = akit::run_suite(c.suite);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool in_time = rep.seconds <= c.budget_seconds;
    const bool ok = error.empty() && rep.passed() && in_time;
    passed += ok;
    std::printf("[%s] criterion %d: %s (%s, budget %s)%s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                seconds(rep.seconds).c_str(), seconds(c.budget_seconds).c_str(),
                error.empty() ? (in_time ? "" : " over budget") : (" error: " + error).c_str());
    if (verbose || !ok) {
      for (const auto& k : rep.checks)
        std::printf("    %s %s: expected %s, observed %s, tolerance %s\n", k.pass ? "ok  " : "FAIL", k.name.c_str(),
                    k.expected.c_str(), k.observed.c_str(), k.tolerance.c_str());
      for (const auto& n : rep.notes) std::printf("    note: %s\n", n.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", passed, kCriteria.size());
  return passed == static_cast<int>(kCriteria.size()) ? 0 : 1;
}
