#pragma once
// Real-argument special functions: Bessel J and K, Kummer M and U, Whittaker M and W, Gamma.
//
// J and K come from the standard library (Temme series + Steed continued fractions in
// libstdc++); their error estimate is a posteriori, from the defect of the Wronskian with the
// companion solution.  Kummer M is the ascending series.  U is summed asymptotically where the
// series converges to machine precision (z >= ~40) and carried inward by Taylor-series
// continuation of Kummer's equation; the connection formula is avoided because of cancellation.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinplane {

struct SpecFunResult {
  double value = 0;
  double est_error = 0;
};

namespace specfun_detail {

constexpr double eps = std::numeric_limits<double>::epsilon();

inline bool nonpositive_integer(double x) { return x <= 0 && x == std::round(x); }

inline SpecFunResult checked(SpecFunResult r, const char* what) {
  if (!std::isfinite(r.value) || !std::isfinite(r.est_error))
    throw std::domain_error(std::string(what) + ": result not finite");
  return r;
}

struct Asymptotic {
  double sum = 0, tail = 0;  // sum of the series, relative size of the first omitted term
  bool converged = false;
};

// sum_n (a)_n (a-b+1)_n / n! (-1/z)^n, stopped at its smallest term
inline Asymptotic u_asymptotic(double a, double b, double z) {
  Asymptotic r;
  double t = 1, s = 1, last = 1;
  for (int n = 0; n < 2000; ++n) {
    const double next = t * (a + n) * (a - b + 1 + n) / ((n + 1) * -z);
    if (next == 0) {  // terminating polynomial: exact
      r.sum = s;
      r.tail = 0;
      r.converged = true;
      return r;
    }
    if (std::abs(next) > std::abs(last) && n > 0) break;  // divergence sets in
    t = next;
    s += t;
    last = std::abs(t);
    if (std::abs(t) <= 0.25 * eps * std::abs(s)) {
      r.sum = s;
      r.tail = std::abs(t / s);
      r.converged = true;
      return r;
    }
  }
  r.sum = s;
  r.tail = std::abs(last / s);
  r.converged = r.tail <= 1e-16;
  return r;
}

}  // namespace specfun_detail

inline SpecFunResult gamma_fn(double x) {
  if (specfun_detail::nonpositive_integer(x)) throw std::domain_error("gamma: pole at " + std::to_string(x));
  const double g = std::tgamma(x);
  return specfun_detail::checked({g, 8 * specfun_detail::eps * std::abs(g)}, "gamma");
}

inline SpecFunResult bessel_j(double nu, double x) {
  using specfun_detail::eps;
  if (!(nu >= 0) || !(x >= 0) || x > 50) throw std::domain_error("bessel_j: need nu >= 0, 0 <= x <= 50");
  if (x == 0) return {nu == 0 ? 1.0 : 0.0, 0.0};
  const double j = std::cyl_bessel_j(nu, x), j1 = std::cyl_bessel_j(nu + 1, x);
  const double y = std::cyl_neumann(nu, x), y1 = std::cyl_neumann(nu + 1, x);
  // J_nu Y_{nu+1} - J_{nu+1} Y_nu = -2/(pi x)
  const double w = j * y1 - j1 * y, w0 = -2 / (std::numbers::pi * x);
  const double defect = std::isfinite(w) ? std::abs(w / w0 - 1) : 0.0;
  const double env = x > nu ? std::hypot(j, y) : std::abs(j);  // error scale near zeros of J
  return specfun_detail::checked({j, (defect + 16 * eps) * env}, "bessel_j");
}

inline SpecFunResult bessel_k(double nu, double z) {
  using specfun_detail::eps;
  if (!(z > 0)) throw std::domain_error("bessel_k: need z > 0");
  nu = std::abs(nu);
  const double k = std::cyl_bessel_k(nu, z), k1 = std::cyl_bessel_k(nu + 1, z);
  const double i = std::cyl_bessel_i(nu, z), i1 = std::cyl_bessel_i(nu + 1, z);
  // I_nu K_{nu+1} + I_{nu+1} K_nu = 1/z
  const double w = i * k1 + i1 * k;
  const double defect = std::isfinite(w) ? std::abs(w * z - 1) : 0.0;
  return specfun_detail::checked({k, (defect + 16 * eps) * std::abs(k)}, "bessel_k");
}

// Kummer M(a, b, z) = 1F1(a; b; z)
inline SpecFunResult kummer_m(double a, double b, double z) {
  using specfun_detail::eps;
  if (specfun_detail::nonpositive_integer(b)) throw std::domain_error("kummer_m: b is a non-positive integer");
  double t = 1, s = 1, abs_sum = 1;
  int n = 0;
  for (; n < 100000; ++n) {
    t *= (a + n) * z / ((b + n) * (n + 1));
    s += t;
    abs_sum += std::abs(t);
    if (t == 0) break;
    // past the sign-changing region and the peak of the terms
    if (n > std::abs(a) && n > z - b && std::abs(t) <= 0.25 * eps * std::abs(s)) break;
  }
  return specfun_detail::checked({s, 4 * eps * abs_sum + (n + 2) * eps * std::abs(s)}, "kummer_m");
}

// Tricomi U(a, b, z), z > 0
inline SpecFunResult kummer_u(double a, double b, double z) {
  using specfun_detail::eps;
  using specfun_detail::u_asymptotic;
  if (!(z > 0)) throw std::domain_error("kummer_u: need z > 0");
  auto at = [&](double zz) {
    const auto s0 = u_asymptotic(a, b, zz);
    const auto s1 = u_asymptotic(a + 1, b + 1, zz);  // U' = -a U(a+1, b+1, z)
    return std::pair{s0, s1};
  };
  {
    const auto [s0, s1] = at(z);
    if (s0.converged) {
      const double u = std::pow(z, -a) * s0.sum;
      return specfun_detail::checked({u, (s0.tail + 8 * eps) * std::abs(u)}, "kummer_u");
    }
  }
  double z0 = std::max(40.0, z);
  auto start = at(z0);
  while (!(start.first.converged && start.second.converged)) {
    z0 *= 1.25;
    if (z0 > 1e5) throw std::domain_error("kummer_u: asymptotic start not reached");
    start = at(z0);
  }
  double u = std::pow(z0, -a) * start.first.sum;
  double du = -a * std::pow(z0, -a - 1) * start.second.sum;
  double rel = std::max(start.first.tail, start.second.tail) + 8 * eps;
  while (z0 > z) {
    const double z1 = std::max(z, z0 * (2.0 / 3.0));
    const double h = z1 - z0;
    // u = sum c_n t^n about z0; c_{n+2} = [(n+a) c_n - (n+1)(n+b-z0) c_{n+1}] / (z0 (n+2)(n+1))
    double cm = u, c = du, hp = h;  // c_n, c_{n+1}, h^{n+1}
    double su = u + c * h, sd = c;
    for (int n = 0; n < 400; ++n) {
      const double cn = ((n + a) * cm - (n + 1) * (n + b - z0) * c) / (z0 * (n + 2) * (n + 1));
      sd += (n + 2) * cn * hp;
      hp *= h;
      const double tu = cn * hp;
      su += tu;
      cm = c;
      c = cn;
      if (n > 4 && std::abs(tu) <= 0.25 * eps * std::abs(su) && std::abs((n + 2) * cn * hp / h) <= eps * std::abs(sd))
        break;
    }
    u = su;
    du = sd;
    rel += 16 * eps;
    z0 = z1;
  }
  return specfun_detail::checked({u, rel * std::abs(u)}, "kummer_u");
}

enum class WhittakerKind { M, W };

// Whittaker M_{a,b}(z) = e^{-z/2} z^{b+1/2} M(b-a+1/2, 1+2b, z); W likewise with U
inline SpecFunResult whittaker(WhittakerKind kind, double a, double b, double z) {
  if (!(z > 0)) throw std::domain_error("whittaker: need z > 0");
  const double ka = b - a + 0.5, kb = 1 + 2 * b;
  const double pre = std::exp(-z / 2) * std::pow(z, b + 0.5);
  SpecFunResult k;
  if (kind == WhittakerKind::M) {
    if (specfun_detail::nonpositive_integer(kb))
      throw std::domain_error("whittaker M: 2b is a negative integer (pole)");
    k = kummer_m(ka, kb, z);
  } else {
    k = kummer_u(ka, kb, z);
  }
  const double v = pre * k.value;
  return specfun_detail::checked({v, std::abs(pre) * k.est_error + 4 * specfun_detail::eps * std::abs(v)}, "whittaker");
}

inline SpecFunResult whittaker_m(double a, double b, double z) { return whittaker(WhittakerKind::M, a, b, z); }
inline SpecFunResult whittaker_w(double a, double b, double z) { return whittaker(WhittakerKind::W, a, b, z); }

}  // namespace spinplane
