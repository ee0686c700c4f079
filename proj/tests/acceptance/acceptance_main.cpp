// Runs every acceptance criterion at its fixed parameters and prints one
// PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>

#include "quantlab/cli.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  bool all = true;
  for (const auto& c : quantlab::cli::criteria()) {
    const auto t0 = clock::now();
    std::size_t passed = 0, total = 0;
    std::string first_failure;
    bool ok = true;
    try {
      const quantlab::cli::SuiteResult r = c.run(7);
      for (const auto& check : r.checks) {
        ++total;
        if (check.pass) {
          ++passed;
        } else if (first_failure.empty()) {
          first_failure = check.check + " " + check.inputs.dump() + " residual " +
                          quantlab::report::format_double(check.residual);
        }
      }
      ok = total > 0 && passed == total;
    } catch (const std::exception& e) {
      ok = false;
      first_failure = e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("%s criterion %2d  %-44s %zu/%zu checks  %.1f s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                passed, total, secs, first_failure.empty() ? "" : "  first failure: ", first_failure.c_str());
    std::fflush(stdout);
    all = all && ok;
  }
  const double total_secs = std::chrono::duration<double>(clock::now() - start).count();
  const bool time_ok = total_secs < 600.0;
  std::printf("%s total runtime %.1f s (limit 600 s)\n", time_ok ? "PASS" : "FAIL", total_secs);
  return all && time_ok ? 0 : 1;
}
