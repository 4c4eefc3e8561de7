// Ladder states of the shape-invariant line problem and their planar lift.
#include <cstdio>

#include "spinplane/susy.hpp"

using namespace spinplane;

int main() {
  for (SusyParams s : {SusyParams{1, -1, 1}, SusyParams{-2, -1, 1}}) {
    std::printf("kappa = %g, p = %g, lambda = %g\n", s.kappa, s.p, s.lambda);
    const auto ys = y_grid(0, 12, 121);
    for (int n = 0; n <= 3; ++n) {
      if (s.kappa + n == 0) break;
      const auto st = susy_excited_state(s, n);
      const auto b = st.boundary_value();
      std::printf("  n=%d  eps %12.8f  E %12.8f  residual %.1e  Phi(0) = (%.4g, %.4g)\n", n, st.eps, st.E,
                  eigen_residual(st, ys).relative, b[0], b[1]);
    }
  }
  const auto fs = full_state_2d({1, -0.5, 1}, 1, 1, cplx(0, 1));
  const auto v = fs.psi(Point2{0.3, 1.0});
  std::printf("planar state n=1 at (0.3, 1): (%.6g%+.6gi, %.6g%+.6gi), E = %g, shift-invariant norm: %s\n",
              v[0].real(), v[0].imag(), v[1].real(), v[1].imag(), fs.E, fs.shift_invariant_norm ? "yes" : "no");
}
