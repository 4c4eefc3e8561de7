// Exact bands of the helical-field model next to a plane-wave Bloch diagonalization.
#include <cstdio>

#include "spinplane/periodic.hpp"

using namespace spinplane;

int main() {
  const double mu = 1, nu = 0.5;
  std::printf("%8s %8s %14s %14s %14s\n", "t", "q", "E- exact", "E+ exact", "Bloch min(q)");
  for (int i = -8; i <= 8; ++i) {
    const double t = 0.25 * i, q = quasimomentum(nu, t);
    const auto bs = bloch_spectrum(mu, nu, q, 32);
    std::printf("%8.3f %8.3f %14.9f %14.9f %14.9f\n", t, q, band_energy(mu, nu, t, -1), band_energy(mu, nu, t, +1),
                bs.values[0]);
  }
  std::printf("lowest band minimum %.12g\n", band_minimum(mu, nu, -1));
}
