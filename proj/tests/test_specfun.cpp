#include <catch_amalgamated.hpp>

#include <numbers>

#include "spinplane/specfun.hpp"
#include "support/specfun_oracle.hpp"

using namespace spinplane;

namespace {

double rel(double v, double o) { return std::abs(v - o) / std::abs(o); }

}  // namespace

TEST_CASE("oracle sanity against closed forms") {
  CHECK(rel(oracle::J(0.5, 1.0), std::sqrt(2 / std::numbers::pi) * std::sin(1.0)) < 1e-15);
  CHECK(rel(oracle::K(0.5, 1.0), std::sqrt(std::numbers::pi / 2) * std::exp(-1.0)) < 1e-15);
  CHECK(rel(oracle::K(1.0, 2.0), 0.13986588181652242728) < 1e-15);
  // W_{a,b} with b - a + 1/2 = 0 is e^{-z/2} z^{b+1/2}
  CHECK(rel(oracle::whittaker(false, 1.0, 0.5, 3.0), std::exp(-1.5) * 3.0) < 1e-15);
}

TEST_CASE("Bessel J on the grid") {
  for (double nu : oracle::j_orders())
    for (double x : oracle::j_args()) {
      const auto r = bessel_j(nu, x);
      const double o = oracle::J(nu, x);
      INFO("nu=" << nu << " x=" << x << " value=" << r.value << " oracle=" << o << " est=" << r.est_error);
      CHECK(rel(r.value, o) <= 1e-10);
      CHECK(std::abs(r.value - o) <= 10 * r.est_error);
    }
}

TEST_CASE("Bessel K on the grid") {
  for (double nu : oracle::k_orders())
    for (double z : oracle::k_args()) {
      const auto r = bessel_k(nu, z);
      const double o = oracle::K(nu, z);
      INFO("nu=" << nu << " z=" << z << " value=" << r.value << " oracle=" << o << " est=" << r.est_error);
      CHECK(rel(r.value, o) <= 1e-10);
      CHECK(std::abs(r.value - o) <= 10 * r.est_error);
    }
}

TEST_CASE("Whittaker M and W on the grid") {
  for (auto [a, b] : oracle::whittaker_params())
    for (double z : oracle::whittaker_args())
      for (bool m : {true, false}) {
        const auto r = whittaker(m ? WhittakerKind::M : WhittakerKind::W, a, b, z);
        const double o = oracle::whittaker(m, a, b, z);
        INFO((m ? "M" : "W") << " a=" << a << " b=" << b << " z=" << z << " value=" << r.value << " oracle=" << o
                             << " est=" << r.est_error);
        CHECK(rel(r.value, o) <= 1e-9);
        CHECK(std::abs(r.value - o) <= 10 * r.est_error);
      }
}

TEST_CASE("closed forms and recurrences") {
  CHECK(bessel_j(0, 0).value == 1.0);
  CHECK(std::abs(bessel_j(0.5, 1).value - 0.6713967071418031) < 1e-10);
  CHECK(rel(bessel_j(0.5, 3.7).value, std::sqrt(2 / (std::numbers::pi * 3.7)) * std::sin(3.7)) < 1e-10);
  CHECK(std::abs(bessel_j(0, 2).value + bessel_j(2, 2).value - bessel_j(1, 2).value) < 1e-10);
  CHECK(rel(bessel_k(0.5, 1).value, std::sqrt(std::numbers::pi / 2) * std::exp(-1.0)) < 1e-10);
  CHECK(bessel_k(0.3, 2).value == bessel_k(-0.3, 2).value);
  CHECK(std::abs(bessel_k(2, 2).value - bessel_k(0, 2).value - bessel_k(1, 2).value) < 1e-9);
  CHECK(rel(gamma_fn(5).value, 24) < 1e-14);
}

TEST_CASE("Whittaker equation and asymptotics") {
  for (auto [a, b] : oracle::whittaker_params())
    for (bool m : {true, false}) {
      auto f = [&](double z) { return whittaker(m ? WhittakerKind::M : WhittakerKind::W, a, b, z).value; };
      for (double z : {0.8, 3.0, 9.0}) {
        const double h = 1e-4 * z;
        const double d2 = (f(z + h) - 2 * f(z) + f(z - h)) / (h * h);
        const double res = d2 + (-0.25 + a / z + (0.25 - b * b) / (z * z)) * f(z);
        INFO((m ? "M" : "W") << " a=" << a << " b=" << b << " z=" << z);
        CHECK(std::abs(res) / (1 + std::abs(f(z))) < 1e-6);
      }
    }
  // leading-order regime: the slope correction is about -a z / (1 + 2b)
  double a = 0.25, b = 0.3;
  const double slope = std::log(whittaker_m(a, b, 1e-2).value / whittaker_m(a, b, 1e-3).value) / std::log(10.0);
  CHECK(std::abs(slope - (b + 0.5)) < 1e-3);
  a = 0.7;
  const auto w = [&](double z) { return whittaker_w(a, b, z).value / (std::exp(-z / 2) * std::pow(z, a)); };
  CHECK(std::abs(w(40) / w(30) - 1) < 1e-3);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(-1, 1), std::domain_error);
  CHECK_THROWS_AS(bessel_j(1, 51), std::domain_error);
  CHECK_THROWS_AS(bessel_k(1, 0), std::domain_error);
  CHECK_THROWS_AS(whittaker_m(0.5, -1.0, 1), std::domain_error);
  CHECK_THROWS_AS(whittaker_w(0.5, 0.5, -1), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-2), std::domain_error);
  CHECK_NOTHROW(whittaker_m(0.5, -0.25, 1));
}
