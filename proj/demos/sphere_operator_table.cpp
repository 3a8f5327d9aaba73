// Convergence table for interpolation, surface gradient, and
// Laplace-Beltrami of a test function sampled on Fibonacci spheres.

#include <cstdio>

#include "kgeom/kgeom.hpp"

int main() {
  using namespace kgeom;

  ExperimentOptions opt;
  opt.seed = 7;
  const ExperimentReport report = run_sphere_lb(opt);
  std::printf("%-44s %12s %12s\n", "quantity", "computed", "reference");
  for (const auto& row : report.rows) {
    std::printf("%-44s %12.4e %12.4e\n", row.quantity.c_str(), row.computed,
                row.reference);
  }
  return report.passed() ? 0 : 1;
}
