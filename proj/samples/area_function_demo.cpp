// Evaluates the area g-function of a random Hermite expansion, from its coefficients
// and from samples on a grid, and compares ||g f||_2 with ||f||_2 / 2.

#include <cstdio>

#include "heatg/heatg.hpp"

int main() {
  using namespace heatg;
  const auto f = random_unit_family(BasisId::hermite(), 1, 6, 7).front();
  const auto sampled = f.sample();
  const ConeQuadratureSpec spec{};

  std::printf("%8s %16s %16s %12s\n", "x", "g (spectral)", "g (kernel)", "refine");
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    const auto a = area_g(f, x, spec);
    const auto b = area_g(sampled, x, spec, BasisId::hermite());
    std::printf("%8.2f %16.10f %16.10f %12.2e\n", x, a.value, b.value, a.refinement_delta);
  }

  const auto r = boundedness_sweep(AreaOperator::AreaHermite, 2.0, 2.0, std::span(&f, 1));
  std::printf("||g f||_2 / ||f||_2 = %.8f\n", r.ratios.front());
}
