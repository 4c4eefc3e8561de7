// Coulomb-like radial levels: tabulated formula, corrected formula and finite differences.
#include <cstdio>

#include "spinplane/radial.hpp"

using namespace spinplane;

int main() {
  const double alpha = 2;
  for (double k : {0.5, 1.5, 2.5}) {
    const auto fd = radial_fd_spectrum(alpha, k, 0, 1, 120, 12000, 3);
    const auto pr = coulomb_levels(alpha, k, 0, 1, 2);
    const auto co = coulomb_levels(alpha, k, 0, 1, 2, LevelConvention::corrected);
    std::printf("k = %.1f (nu = %g)%s\n", k, radial_nu(k, 1, 0), fd.converged ? "" : "  [not converged]");
    for (int n = 0; n < 3; ++n)
      std::printf("  n=%d  tabulated %12.8f  corrected %12.8f  FD %12.8f\n", n, pr[n].E, co[n].E, fd.values[n]);
  }
  const auto g = whittaker_eigenfunction(alpha, 0.5, 0, 1, 0, 1, 0);
  std::printf("ground state M_{%g,%g}(%g r), ODE residual %.2e\n", g.a, g.b, g.s, g.residual);
}
