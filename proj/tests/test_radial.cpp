#include <catch_amalgamated.hpp>

#include "spinplane/radial.hpp"

using namespace spinplane;

TEST_CASE("radial coefficients and admissibility") {
  CHECK(radial_equation_coeff(0.5, 1, 0, 2).centrifugal == -0.25);
  CHECK(radial_equation_coeff(1.5, 1, 0, 2).centrifugal == 0.75);
  CHECK(radial_equation_coeff(1.5, 1, 0, 2).coulomb == 2);
  CHECK_THROWS_AS(radial_equation_coeff(0.5, 1, 1, 2), AdmissibilityError);
  CHECK_THROWS_AS(radial_equation_coeff(1.0, 1, 0, 2), AdmissibilityError);
  CHECK_THROWS_AS(radial_equation_coeff(1.5, 0, 0, 2), AdmissibilityError);
  CHECK_NOTHROW(radial_equation_coeff(-1.5, -1, 3, 2));
  CHECK(radial_nu(0.5, 1, 0) == 0);
  CHECK(radial_nu(1.5, 1, 0) == 1);
  // c = nu^2 - 1/4
  for (double k : {0.5, 1.5, 2.5})
    for (double mu : {0.0, 0.3})
      for (int e : {1, -1}) {
        if (e == 1 && (k * k - 0.25) * (k * k - 0.25) < mu * mu) continue;
        const double nu = radial_nu(k, e, mu);
        CHECK(std::abs(radial_equation_coeff(k, e, mu, 1).centrifugal - (nu * nu - 0.25)) < 1e-13);
      }
}

TEST_CASE("Coulomb-like levels") {
  const auto p = coulomb_levels(2, 0.5, 0, 1, 5);
  CHECK(std::abs(p[0].E + 16.0 / 9) < 1e-15);
  CHECK(std::abs(coulomb_levels(2, 1.5, 0, 1, 0)[0].E + 16.0 / 49) < 1e-15);
  const auto c = coulomb_levels(2, 0.5, 0, 1, 5, LevelConvention::corrected);
  CHECK(c[0].E == -4.0);
  CHECK(std::abs(coulomb_levels(2, 1.5, 0, 1, 0, LevelConvention::corrected)[0].E + 4.0 / 9) < 1e-15);
  for (size_t i = 1; i < p.size(); ++i) CHECK(p[i].E > p[i - 1].E);
  CHECK(coulomb_levels(2, 0.5, 0, 1, 10000).back().E > -1e-7);
  CHECK_THROWS(coulomb_levels(0, 0.5, 0, 1, 3));
}

TEST_CASE("finite-difference levels match the corrected formula") {
  struct Case {
    double k, mu;
    int eps;
  };
  for (auto cs : {Case{0.5, 0, 1}, Case{1.5, 0, 1}, Case{2.5, 0, 1}, Case{1.5, 0.5, 1}, Case{0.5, 1, -1},
                  Case{2.5, 2, 1}}) {
    const auto fd = radial_fd_spectrum(2, cs.k, cs.mu, cs.eps, 120, 12000, 3);
    const auto ex = coulomb_levels(2, cs.k, cs.mu, cs.eps, 2, LevelConvention::corrected);
    for (int n = 0; n < 3; ++n) {
      INFO("k=" << cs.k << " mu=" << cs.mu << " eps=" << cs.eps << " n=" << n << " fd=" << fd.values[n]
                << " exact=" << ex[n].E);
      CHECK(std::abs(fd.values[n] / ex[n].E - 1) <= 1e-4);
    }
    CHECK(fd.converged);
  }
}

TEST_CASE("finite-difference convergence order") {
  for (double k : {0.5, 1.5}) {
    const double ex = coulomb_levels(2, k, 0, 1, 0, LevelConvention::corrected)[0].E;
    const double e1 = std::abs(radial_fd_spectrum(2, k, 0, 1, 40, 1500, 1).values[0] - ex);
    const double e2 = std::abs(radial_fd_spectrum(2, k, 0, 1, 40, 3000, 1).values[0] - ex);
    const double order = std::log2(e1 / e2);
    INFO("k=" << k << " order " << order);
    CHECK(std::abs(order - 2) < 0.3);
  }
}

TEST_CASE("free radial problem in a box") {
  const auto s = radial_fd_spectrum(0, 0.5, 0, 1, 60, 6000, 2);
  CHECK(s.values[0] > 0);
  const double j01 = 2.404825557695773, j02 = 5.520078110286311;
  CHECK(std::abs(s.values[0] / std::pow(j01 / 60, 2) - 1) < 1e-4);
  CHECK(std::abs(s.values[1] / std::pow(j02 / 60, 2) - 1) < 1e-4);
}

TEST_CASE("radial solver is deterministic") {
  const auto a = radial_fd_spectrum(2, 1.5, 0, 1, 60, 4000, 3), b = radial_fd_spectrum(2, 1.5, 0, 1, 60, 4000, 3);
  for (int i = 0; i < 3; ++i) CHECK(std::memcmp(&a.values[i], &b.values[i], sizeof(double)) == 0);
}

TEST_CASE("monitor flags a box that is too small") {
  const auto s = radial_fd_spectrum(2, 0.5, 0, 1, 3, 2000, 3);
  CHECK_FALSE(s.converged);
  CHECK_FALSE(s.note.empty());
}

TEST_CASE("Whittaker eigenfunctions") {
  const auto g = whittaker_eigenfunction(2, 0.5, 0, 1, 0, 1, 0);
  INFO(g.candidates[0] << " | " << g.candidates[1] << " | " << g.candidates[2] << " | " << g.candidates[3]);
  CHECK(g.accepted);
  CHECK(g.convention == LevelConvention::corrected);
  CHECK(g.residual < 1e-6);
  CHECK(g.a == 0.5);
  CHECK(g.b == 0.0);
  for (int i = 1; i < 200; ++i) CHECK(g(0.05 * i) > 0);
  CHECK(std::abs(g(1e-8)) < 1e-3);
  const double n1 = radial_norm2(g, 40, 8000), n2 = radial_norm2(g, 80, 16000);
  CHECK(std::isfinite(n1));
  CHECK(std::abs(n2 - n1) < 1e-10 * n1);
  // M and W coincide up to a constant at the bound-state parameters
  CHECK(g.solution_space_dim() == 1);

  for (double k : {0.5, 1.5, 2.5})
    for (int n = 0; n <= 3; ++n) {
      const auto p = whittaker_eigenfunction(2, k, 0.3, -1, n, 1, 0.4);
      INFO("k=" << k << " n=" << n << " residual " << p.residual);
      CHECK(p.accepted);
      CHECK(p.residual < 1e-6);
    }
}
