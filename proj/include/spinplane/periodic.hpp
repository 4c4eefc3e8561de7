#pragma once
// Neutron in the periodic field B = (mu cos y, -mu sin y, nu) on the line y = x1:
//   H = -d^2/dy^2 + mu (sigma1 cos y - sigma2 sin y) + nu sigma3,
//   Q3 = sigma3 (P + nu) + mu (sigma1 cos y - sigma2 sin y),  Q2 = P - sigma3/2.
//
// Q3 psi = k psi is solved by psi1 = e^{i(1/2-nu)y} f, psi2 = mu e^{-i(1/2+nu)y} g with
// g = C1 cos(l y) + C2 sin(l y), f = k_- g - i g', k_- = k - 1/2, l = sqrt(k_-^2 - mu^2).
// The single-exponential branches g ~ e^{i t y} (t = +-l) are also H eigenstates, with
// E = (t - nu)^2 + 1/4 + (k - 1/2) = k^2 - mu^2 + nu^2 - 2 nu t; mixtures of the two branches
// are H eigenstates only for nu = 0.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "spinplane/admissibility.hpp"
#include "spinplane/spinor.hpp"

namespace spinplane {

struct PeriodicSolution {
  double k = 0, mu = 0, nu = 0;
  cplx C1 = 1, C2 = 0;
  double k_minus = 0, lambda = 0;

  // E = k^2, the value quoted alongside the printed solution
  double energy() const { return k * k; }

  // H eigenvalue when psi is an H eigenstate (one branch, or nu = 0), else nothing
  std::optional<double> exact_energy(double tol = 1e-14) const {
    const double s = std::abs(C1) + std::abs(C2);
    for (int sg : {1, -1})
      if (std::abs(C2 - cplx(0, sg) * C1) <= tol * s) return k * k - mu * mu + nu * nu - 2 * nu * sg * lambda;
    if (nu == 0) return k * k - mu * mu;
    return std::nullopt;
  }

  template <class S>
  SpinorT<complex_of_t<S>> eval(const S& y) const {
    using C = complex_of_t<S>;
    using std::cos;
    using std::sin;
    auto expi = [](const S& th) { return to_complex(cos(th)) + cplx(0, 1) * to_complex(sin(th)); };
    const C c = to_complex(cos(lambda * y)), s = to_complex(sin(lambda * y));
    const C f = c * (C1 * k_minus - cplx(0, 1) * C2 * lambda) + s * (C2 * k_minus + cplx(0, 1) * C1 * lambda);
    const C g = c * C1 + s * C2;
    return {{expi((0.5 - nu) * y) * f, expi(-(0.5 + nu) * y) * g * mu}};
  }

  Spinor operator()(double y) const {
    const auto v = eval(y);
    return {{v.c[0], v.c[1]}};
  }

  double density(double y) const {
    const Spinor v = (*this)(y);
    return std::norm(v[0]) + std::norm(v[1]);
  }

  // psi(x1), independent of x2
  ClosedFormSpinorFn as_spinor_fn() const {
    const PeriodicSolution self = *this;
    return ClosedFormSpinorFn::from_generic([self](const auto& x1, const auto&) { return self.eval(x1); });
  }
};

inline PeriodicSolution periodic_solution(double k, double mu, double nu, cplx C1, cplx C2) {
  const double km = k - 0.5;
  if (!(km * km > mu * mu))
    throw AdmissibilityError("periodic_solution: need (k - 1/2)^2 > mu^2, got k=" + std::to_string(k) +
                             " mu=" + std::to_string(mu));
  if (C1 == 0.0 && C2 == 0.0) throw std::invalid_argument("periodic_solution: C1 = C2 = 0");
  PeriodicSolution p;
  p.k = k;
  p.mu = mu;
  p.nu = nu;
  p.C1 = C1;
  p.C2 = C2;
  p.k_minus = km;
  p.lambda = std::sqrt(km * km - mu * mu);
  return p;
}

// Branch e^{+-i l y}: |C1| = 1/(2 sqrt(pi k_-(k_- +- l))) gives unit norm on any period 2 pi
// and a constant density.
inline PeriodicSolution normalized_periodic(double k, double mu, double nu, int sign) {
  const double km = k - 0.5;
  if (!(km * km > mu * mu)) throw AdmissibilityError("normalized_periodic: need (k - 1/2)^2 > mu^2");
  const double l = std::sqrt(km * km - mu * mu);
  const double d = km * (km + sign * l);
  if (!(d > 0)) throw std::domain_error("normalized_periodic: k_-(k_- +- lambda) <= 0");
  const double c1 = 1 / (2 * std::sqrt(std::numbers::pi * d));
  return periodic_solution(k, mu, nu, c1, cplx(0, sign) * c1);
}

// ---- spectra -----------------------------------------------------------------------

struct BandBranch {
  std::string condition;
  double lower_bound = 0;
  bool active = false;  // condition on mu satisfied
  int index = 0;

  bool applies(double k, double mu) const {
    switch (index) {
      case 0: return mu > 0.5 && k < 0.5 - mu;
      case 1: return mu > 0 && mu <= 0.5 && k <= 0.5 - mu;
      default: return k >= mu + 0.5;
    }
  }
};

// The three tabulated branches E >= (mu-1/2)^2, E >= 0, E >= (mu+1/2)^2 with their conditions.
inline std::vector<BandBranch> band_structure(double mu) {
  if (!(mu > 0)) throw std::domain_error("band_structure: need mu > 0");
  std::vector<BandBranch> b(3);
  b[0] = {"mu > 1/2, k < 1/2 - mu", (mu - 0.5) * (mu - 0.5), mu > 0.5, 0};
  b[1] = {"0 < mu <= 1/2, k <= 1/2 - mu", 0.0, mu <= 0.5, 1};
  b[2] = {"k >= mu + 1/2", (mu + 0.5) * (mu + 0.5), true, 2};
  return b;
}

// Tabulated lower bound for a state with Q3 eigenvalue k (nothing if k is inadmissible).
inline std::optional<double> printed_band_bound(double mu, double k) {
  for (const auto& b : band_structure(mu))
    if (b.active && b.applies(k, mu)) return b.lower_bound;
  return std::nullopt;
}

// Exact bands: branch t in R, sign +-: k = 1/2 +- sqrt(t^2 + mu^2)
inline double band_energy(double mu, double nu, double t, int sign) {
  return (t - nu) * (t - nu) + 0.25 + sign * std::sqrt(t * t + mu * mu);
}

inline double band_minimum(double mu, double nu, int sign) {
  // E(t) is convex for sign +; for sign - scan then refine (E'' = 2 - mu^2/(t^2+mu^2)^{3/2})
  double best = 1e300, tb = 0;
  const double span = std::abs(nu) + std::abs(mu) + 2;
  for (int i = 0; i <= 4000; ++i) {
    const double t = -span + 2 * span * i / 4000.0;
    const double e = band_energy(mu, nu, t, sign);
    if (e < best) best = e, tb = t;
  }
  double lo = tb - 2 * span / 4000, hi = tb + 2 * span / 4000;
  for (int it = 0; it < 200; ++it) {  // golden section
    const double a = hi - 0.618033988749895 * (hi - lo), b = lo + 0.618033988749895 * (hi - lo);
    if (band_energy(mu, nu, a, sign) < band_energy(mu, nu, b, sign)) hi = b;
    else lo = a;
  }
  return std::min(best, band_energy(mu, nu, 0.5 * (lo + hi), sign));
}

struct DiscreteLevel {
  int n = 0, eps = 1;
  double k = 0, E_plus = 0, E_minus = 0;
  double E() const { return eps > 0 ? E_plus : E_minus; }
};

// k = (eps sqrt(n^2 + 4 mu^2) + 1)/2, E_+- = (n^2 + 4 mu^2 +- 2 sqrt(n^2 + 4 mu^2) + 1)/4
inline std::vector<DiscreteLevel> discrete_levels(double mu, int n_max) {
  if (!(mu > 0)) throw std::domain_error("discrete_levels: need mu > 0");
  std::vector<DiscreteLevel> out;
  for (int n = 0; n <= n_max; ++n) {
    const double s2 = n * double(n) + 4 * mu * mu, s = std::sqrt(s2);
    for (int eps : {1, -1})
      out.push_back({n, eps, 0.5 * (eps * s + 1), 0.25 * (s2 + 2 * s + 1), 0.25 * (s2 - 2 * s + 1)});
  }
  return out;
}

// Levels of the 2 pi-periodic-density states: l = n/2, branch t = +-n/2, band sign eps.
inline double periodic_branch_level(double mu, double nu, int n, int branch, int eps) {
  return band_energy(mu, nu, branch * 0.5 * n, eps);
}

// Quasimomentum of the branch e^{i t y}: the upper component carries e^{i(1/2 - nu + t) y}.
inline double quasimomentum(double nu, double t) {
  double q = std::fmod(0.5 - nu + t, 1.0);
  if (q < 0) q += 1;
  if (q >= 1 - 1e-15 || q == 0) q = 0;  // also folds -0
  return q;
}

// ---- plane-wave Bloch diagonalization ------------------------------------------------
// Basis e^{i(m+q)y} (up, down) for |m| <= M, index 2(m+M) + s.  sigma.B couples up(m) with
// down(m-1) through mu; nu sigma3 is diagonal.

inline Eigen::MatrixXd bloch_matrix(double mu, double nu, double q, int M) {
  const int n = 2 * (2 * M + 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int m = -M; m <= M; ++m) {
    const int u = 2 * (m + M), d = u + 1;
    A(u, u) = (m + q) * (m + q) + nu;
    A(d, d) = (m + q) * (m + q) - nu;
    if (m > -M) {
      const int dm = 2 * (m - 1 + M) + 1;
      A(u, dm) = A(dm, u) = mu;
    }
  }
  return A;
}

inline Eigen::MatrixXd bloch_q3_matrix(double mu, double nu, double q, int M) {
  const int n = 2 * (2 * M + 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int m = -M; m <= M; ++m) {
    const int u = 2 * (m + M), d = u + 1;
    A(u, u) = m + q + nu;
    A(d, d) = -(m + q + nu);
    if (m > -M) {
      const int dm = 2 * (m - 1 + M) + 1;
      A(u, dm) = A(dm, u) = mu;
    }
  }
  return A;
}

struct BlochSpectrum {
  double q = 0;
  int M = 0;
  std::vector<double> values;    // ascending
  std::vector<double> k_values;  // <v, Q3 v> of each eigenvector
  std::vector<int> block;        // m of the (up(m), down(m-1)) pair carrying the eigenvector
  double max_shift = 0;          // lowest-6 change from M to M+8
  bool converged = true;
};

inline BlochSpectrum bloch_spectrum(double mu, double nu, double q, int M, double tol = 1e-8) {
  if (M < 16) throw std::invalid_argument("bloch_spectrum: cutoff M must be >= 16");
  if (!(q >= 0 && q < 1)) throw std::invalid_argument("bloch_spectrum: q must lie in [0, 1)");
  auto solve = [&](int m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bloch_matrix(mu, nu, q, m));
    return es;
  };
  const auto es = solve(M);
  const Eigen::MatrixXd Q3 = bloch_q3_matrix(mu, nu, q, M);
  BlochSpectrum r;
  r.q = q;
  r.M = M;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    r.values.push_back(es.eigenvalues()[i]);
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    r.k_values.push_back(v.dot(Q3 * v));
    int bm = -M;
    double bw = -1;
    for (int m = -M; m <= M + 1; ++m) {
      double w = 0;
      if (m <= M) w += v[2 * (m + M)] * v[2 * (m + M)];
      if (m > -M) w += v[2 * (m - 1 + M) + 1] * v[2 * (m - 1 + M) + 1];
      if (w > bw) bw = w, bm = m;
    }
    r.block.push_back(bm);
  }
  const auto big = solve(M + 8).eigenvalues();
  for (int i = 0; i < 6; ++i) r.max_shift = std::max(r.max_shift, std::abs(big[i] - r.values[i]));
  r.converged = r.max_shift <= tol;
  return r;
}

}  // namespace spinplane
