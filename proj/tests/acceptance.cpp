// One PASS/FAIL line per acceptance criterion, each under a fixed time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "relsheaf/suites.hpp"

using namespace relsheaf;

namespace {

InstanceSource from_fixtures(std::size_t count = 10, std::size_t max_carrier = 3) {
  InstanceSource s;
  s.fixtures = true;
  s.params.count = count;
  s.params.max_carrier = max_carrier;
  return s;
}

InstanceSource generated(std::size_t count, std::size_t max_h) {
  InstanceSource s;
  s.params = {1, count, max_h, 3};
  return s;
}

struct Criterion {
  int number;
  std::string title;
  double limit_ms;
  std::vector<std::pair<std::string, InstanceSource>> runs;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Heyting kernel", 1000, {{"heyting", from_fixtures()}, {"heyting", generated(20, 6)}}},
      {2, "comparison with sheaves on D(H)", 30000, {{"comparison", from_fixtures()}, {"comparison", generated(10, 4)}}},
      {3, "pre-transformation comparison", 30000, {{"pt-comparison", from_fixtures(20, 3)}}},
      {4, "composition oracles", 60000, {{"composition", from_fixtures(50)}}},
      {5, "adjunction laws", 60000, {{"adjunction", from_fixtures()}, {"adjunction", generated(10, 5)}}},
      {6, "singleton agreement", 30000, {{"singletons", from_fixtures()}}},
      {7, "sheaves and the equivalence", 60000,
       {{"sheaf-iff", from_fixtures()}, {"sheaf-iff", generated(10, 5)},
        {"equivalence", from_fixtures()}, {"equivalence", generated(10, 5)}}},
      {8, "two-point example", 10000, {{"example-2pt", from_fixtures()}}},
      {9, "negative demonstrations", 60000, {{"caveats", from_fixtures()}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t checks = 0;
    std::vector<std::string> failures;
    for (const auto& [suite, src] : c.runs) {
      try {
        const auto r = run_suite(suite, src);
        checks += r.checks.size();
        for (const auto& k : r.checks)
          if (!k.pass) failures.push_back(suite + ": " + k.instance + "/" + k.law + ": " + k.counterexample);
      } catch (const std::exception& e) {
        failures.push_back(suite + ": " + e.what());
      }
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.limit_ms;
    const bool pass = failures.empty() && in_time && checks > 0;
    if (!in_time) failures.push_back("took " + std::to_string(static_cast<long long>(ms)) + " ms");
    std::printf("criterion %d: %s  %s (%zu checks, %.0f ms, limit %.0f ms)\n", c.number, pass ? "PASS" : "FAIL",
                c.title.c_str(), checks, ms, c.limit_ms);
    for (const auto& f : failures) std::printf("  %s\n", f.c_str());
    failed += !pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
