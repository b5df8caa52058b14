// Wave-speed categories of the analytic example flows.

#include <cstdio>
#include <string>

#include "qgwave/qgwave.hpp"

namespace {

void show(const char* name, const qgwave::WaveField& field) {
  const auto report = qgwave::classify(field);
  std::string cats;
  for (const auto& c : report.holding_categories()) cats += c + " ";
  std::printf("%-28s genuine=%d categories: %s consistent=%d\n", name, report.genuine, cats.c_str(),
              report.theorem_consistent);
}

}  // namespace

int main() {
  using namespace qgwave;
  const Grid2D grid = inflection_wave_grid(256, 129);
  show("inflection wave", make_inflection_wave({}, grid));
  show("min/critical wave, beta0", make_min_critical_wave(min_critical_beta0(), 0.0, grid));
  show("min/critical wave, 2 beta0", make_min_critical_wave(2.0 * min_critical_beta0(), 0.0, grid));
  show("perturbed Kolmogorov", make_kolmogorov_perturbed(0.1, kolmogorov_grid(256, 129)));
}
