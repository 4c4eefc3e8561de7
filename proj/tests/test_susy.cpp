#include <catch_amalgamated.hpp>

#include "spinplane/susy.hpp"

using namespace spinplane;

namespace {

const SusyParams base{1, -1, 1};

}  // namespace

TEST_CASE("spectral parameter") {
  CHECK(susy_eps(1, -1, 0) == -1.25);
  CHECK(susy_eps(1, -1, 1) == -4.0625);
  CHECK(susy_energy(1, -1, 0) == 0.0);
  CHECK(susy_energy(1, -1, 2) == susy_energy(1, 1, 2));
  CHECK(c_kappa(1, -1) == 1.25);
  CHECK_THROWS(susy_ground_state({0, -1, 1}));
  CHECK_THROWS(susy_ground_state({1, -1, 0}));
}

TEST_CASE("ground state") {
  const auto g = susy_ground_state(base);
  CHECK(g.nu_s == -1.0);
  for (double y : {0.0, 0.7, 3.0}) {
    const double z = std::exp(-y);
    const auto v = g(y);
    CHECK(std::abs(v[0] / (std::pow(z, -0.5) * std::cyl_bessel_k(0.0, z)) - 1) < 1e-14);
    CHECK(std::abs(v[1] / (-std::pow(z, -0.5) * std::cyl_bessel_k(1.0, z)) - 1) < 1e-14);
  }
  const auto ys = y_grid(0, 12, 241);
  for (auto s : {base, SusyParams{2.5, -0.7, 0.6}, SusyParams{1, 0, 2}, SusyParams{-2, -1, 1}}) {
    const auto r = annihilation_residual(susy_ground_state(s), ys);
    INFO("kappa=" << s.kappa << " p=" << s.p << " abs=" << r.absolute << " rel=" << r.relative);
    CHECK(r.relative < 1e-9);
  }
}

TEST_CASE("shape invariance") {
  const auto ys = y_grid(0, 10, 201);
  CHECK(shape_invariance_residual(1, -1, 1, ys) < 1e-12);
  CHECK(shape_invariance_residual(2.5, -3, 0.4, ys) < 1e-12);
  CHECK(shape_invariance_residual(1, 0, 1, ys) < 1e-12);
  const double p = -1;
  const double mutated =
      shape_invariance_residual(1, p, 1, ys, [](double k, double) { return k * k; });
  CHECK(mutated > 0.1 * p * p);
}

TEST_CASE("ladder states are eigenstates") {
  const auto ys = y_grid(0, 12, 121);
  for (auto s : {base, SusyParams{1.5, -2, 0.8}})
    for (int n = 0; n <= 3; ++n) {
      const auto st = susy_excited_state(s, n);
      const auto r = eigen_residual(st, ys);
      INFO("kappa=" << s.kappa << " n=" << n << " rel " << r.relative);
      CHECK(r.relative < 1e-6);
    }
}

TEST_CASE("normalizable sector") {
  // kappa = -2, p = -1: eps = -4.0625 and -1.25, square integrable on the line
  const SusyParams s{-2, -1, 1};
  const auto g = susy_excited_state(s, 0), e = susy_excited_state(s, 1);
  CHECK(g.eps == -4.0625);
  CHECK(e.eps == -1.25);
  const auto ys = y_grid(-4, 20, 241);
  CHECK(eigen_residual(g, ys).relative < 1e-6);
  CHECK(eigen_residual(e, ys).relative < 1e-6);
  CHECK(susy_overlap(g, e, -6, 40, 20000) < 1e-6);
  CHECK_THROWS(susy_excited_state(s, 2));  // kappa + 2 = 0
}

TEST_CASE("kappa > 0 states grow on the half line") {
  const auto a = susy_excited_state(base, 0), b = susy_excited_state(base, 1);
  CHECK(std::abs(a(12)[1]) > 1e6 * std::abs(a(0)[1]));
  CHECK(susy_overlap(a, b, 0, 12) > 1e-3);
  const auto bv = a.boundary_value();
  CHECK(std::abs(bv[0]) > 0);  // Phi(0) != 0
}

TEST_CASE("planar states") {
  for (int n = 0; n <= 3; ++n)
    for (auto [c1, c2] : {std::pair{cplx(1), cplx(0)}, std::pair{cplx(0.6), cplx(0, 0.8)}}) {
      const SusyParams s{1.5, -0.5, 0.7};
      const auto fs = full_state_2d(s, n, c1, c2);
      double worst = 0, smax = 0;
      for (double x1 : {-1.0, 0.4, 2.0})
        for (double x2 : {0.0, 1.0, 3.0}) {
          const Spinor v = fs.psi(x1, x2), h = apply_h(fs.H, fs.psi, {x1, x2});
          worst = std::max(worst, norm(h - scale(cplx(fs.E), v)));
          smax = std::max(smax, norm(h) + std::abs(fs.E) * norm(v));
        }
      INFO("n=" << n << " residual " << worst / smax);
      CHECK(worst / smax < 1e-6);
      CHECK(fs.shift_invariant_norm);
    }
  // single Q2 eigenvector: (P1 - sigma3/2) Psi = p Psi
  const SusyParams s{1, -1, 1};
  const auto fs = full_state_2d(s, 1, 1, 0);
  const auto q2 = combine(1.0, ops::momentum(0), -0.5, ops::sigma(3));
  for (double x2 : {0.2, 2.0}) {
    const Point2 x{0.7, x2};
    const Spinor v = fs.psi(x);
    CHECK(norm(q2.apply(fs.psi, x) - scale(cplx(s.p), v)) < 1e-8 * (1 + norm(v)));
  }
  CHECK_FALSE(full_state_2d({1, -0.3, 1}, 0, 1, 1).shift_invariant_norm);
  CHECK(std::abs(fs.E - s.p * s.p - 0.25 - fs.line.eps) < 1e-15);
}
