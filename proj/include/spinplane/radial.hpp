#pragma once
// Rotationally invariant model H = -lap + mu/r^3 (sigma1 x2 - sigma2 x1) - alpha/r, reduced on the
// joint eigenspaces of L + sigma3/2 (eigenvalue k) and the second integral (branch eps) to
//   -phi'' + [c/r^2 - alpha/r] phi = E phi,   c = k^2 - eps sqrt(k^2 + mu^2) = nu^2 - 1/4.
//
// Bound states: E_n = -alpha^2 / (4 (n + nu + 1/2)^2), phi = M_{a,nu}(alpha r / a), a = n + nu + 1/2.
// The tabulated form uses n + nu + 3/4 and (a, b) = (n + nu + 3/4, nu + 1/4); both are exposed.

#include <cmath>
#include <string>
#include <vector>

#include "spinplane/admissibility.hpp"
#include "spinplane/specfun.hpp"

namespace spinplane {

enum class LevelConvention { printed, corrected };

inline const char* to_string(LevelConvention c) { return c == LevelConvention::printed ? "printed" : "corrected"; }

inline void check_radial_admissible(double k, int eps, double mu) {
  const double twice = 2 * k;
  if (std::abs(twice - std::round(twice)) > 1e-12 || std::lround(twice) % 2 == 0)
    throw AdmissibilityError("radial: k must be a half-odd integer, got " + std::to_string(k));
  if (eps != 1 && eps != -1) throw AdmissibilityError("radial: eps must be +1 or -1");
  if (eps == 1 && (k * k - 0.25) * (k * k - 0.25) < mu * mu)
    throw AdmissibilityError("radial: eps = +1 needs (k^2 - 1/4)^2 >= mu^2");
}

struct RadialCoefficients {
  double centrifugal = 0;  // c in c/r^2
  double coulomb = 0;      // alpha in -alpha/r
};

inline RadialCoefficients radial_equation_coeff(double k, int eps, double mu, double alpha) {
  check_radial_admissible(k, eps, mu);
  return {k * k - eps * std::sqrt(k * k + mu * mu), alpha};
}

// nu = sqrt(1 + 4k^2 - 4 eps sqrt(k^2 + mu^2)) / 2
inline double radial_nu(double k, int eps, double mu) {
  check_radial_admissible(k, eps, mu);
  return 0.5 * std::sqrt(std::max(0.0, 1 + 4 * k * k - 4 * eps * std::sqrt(k * k + mu * mu)));
}

struct CoulombLevel {
  int n = 0;
  double E = 0;
};

inline std::vector<CoulombLevel> coulomb_levels(double alpha, double k, double mu, int eps, int n_max,
                                                LevelConvention conv = LevelConvention::printed) {
  if (!(alpha > 0)) throw std::domain_error("coulomb_levels: need alpha > 0");
  const double nu = radial_nu(k, eps, mu);
  const double shift = conv == LevelConvention::printed ? 0.75 : 0.5;
  std::vector<CoulombLevel> out;
  for (int n = 0; n <= n_max; ++n) {
    const double d = n + shift + nu;
    out.push_back({n, -alpha * alpha / (4 * d * d)});
  }
  return out;
}

// ---- finite differences ----------------------------------------------------------------
// u = phi / sqrt(r) solves -(r u')' + (nu^2/r) u - alpha u = E r u.  Cell-centred nodes
// r_i = (i - 1/2) h with face fluxes r_{i+-1/2}: the face at r = 0 carries no flux, and
// u = 0 at r_max by reflection.  Symmetrized with r^{1/2}, the pencil becomes a symmetric
// tridiagonal matrix whose lowest eigenvalues come from Sturm-sequence bisection.

struct Tridiagonal {
  std::vector<double> d, e;  // diagonal, off-diagonal (e[i] couples i and i+1)

  // number of eigenvalues < x
  int count_below(double x) const {
    int c = 0;
    double q = d[0] - x;
    if (q < 0) ++c;
    for (size_t i = 1; i < d.size(); ++i) {
      const double den = q != 0 ? q : 1e-300;
      q = d[i] - x - e[i - 1] * e[i - 1] / den;
      if (q < 0) ++c;
    }
    return c;
  }

  std::vector<double> lowest(int count, double rel_tol = 1e-14) const {
    double lo = 1e300, hi = -1e300;
    for (size_t i = 0; i < d.size(); ++i) {
      const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0);
      lo = std::min(lo, d[i] - r);
      hi = std::max(hi, d[i] + r);
    }
    std::vector<double> out;
    for (int j = 0; j < count && j < int(d.size()); ++j) {
      double a = lo, b = hi;
      while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        (count_below(m) > j ? b : a) = m;
      }
      out.push_back(0.5 * (a + b));
    }
    return out;
  }
};

inline Tridiagonal radial_matrix(double alpha, double nu, double r_max, int N) {
  const double h = r_max / N;
  Tridiagonal t;
  t.d.resize(N);
  t.e.resize(N - 1);
  for (int i = 0; i < N; ++i) {
    const double r = (i + 0.5) * h, rl = i * h, rr = (i + 1) * h;
    double a = (rl + (i + 1 < N ? rr : 2 * rr)) / (h * h) + nu * nu / r - alpha;
    t.d[i] = a / r;
    if (i + 1 < N) t.e[i] = -rr / (h * h) / std::sqrt(r * (r + h));
  }
  return t;
}

struct RadialSpectrum {
  std::vector<double> values;
  std::vector<double> coarse;       // same levels at N/2
  std::vector<double> short_box;    // same levels on [0, 0.8 r_max] at the same spacing
  double est_rel_error = 0;         // Richardson estimate |E_N - E_{N/2}| / 3, relative
  double box_rel_error = 0;         // |E(r_max) - E(0.8 r_max)|, relative
  double decay = 0;                 // sqrt(-E_0) r_max (bound states) or 0
  bool converged = true;
  std::string note;
};

inline RadialSpectrum radial_fd_spectrum(double alpha, double k, double mu, int eps, double r_max, int N,
                                         int n_levels, double tol = 1e-4) {
  if (N < 1000) throw std::invalid_argument("radial_fd_spectrum: N must be >= 1000");
  if (!(r_max > 0)) throw std::invalid_argument("radial_fd_spectrum: r_max must be positive");
  const double nu = radial_nu(k, eps, mu);
  RadialSpectrum s;
  s.values = radial_matrix(alpha, nu, r_max, N).lowest(n_levels);
  s.coarse = radial_matrix(alpha, nu, r_max, N / 2).lowest(n_levels);
  for (int i = 0; i < n_levels; ++i)
    s.est_rel_error = std::max(s.est_rel_error, std::abs(s.values[i] - s.coarse[i]) / 3 / std::abs(s.values[i]));
  if (!s.values.empty() && s.values[0] < 0) s.decay = std::sqrt(-s.values[0]) * r_max;
  if (s.est_rel_error > tol) {
    s.converged = false;
    s.note = "grid too coarse (estimated relative error " + std::to_string(s.est_rel_error) + ")";
  }
  const int N_short = int(std::lround(0.8 * N));
  s.short_box = radial_matrix(alpha, nu, r_max * N_short / N, N_short).lowest(n_levels);
  for (int i = 0; i < n_levels; ++i)
    s.box_rel_error = std::max(s.box_rel_error, std::abs(s.values[i] - s.short_box[i]) / std::abs(s.values[i]));
  if (s.box_rel_error > tol) {
    s.converged = false;
    s.note += (s.note.empty() ? "" : "; ") + std::string("r_max too small (levels move by ") +
              std::to_string(s.box_rel_error) + " when the box shrinks by 20%)";
  }
  return s;
}

// ---- Whittaker eigenfunctions -----------------------------------------------------------

struct RadialProfile {
  double alpha = 0, nu = 0, c = 0;  // equation data
  double a = 0, b = 0, E = 0, s = 0;  // phi(r) = C1 M_{a,b}(s r) + C2 W_{a,b}(s r)
  double C1 = 1, C2 = 0;
  LevelConvention convention = LevelConvention::corrected;
  std::string scaling;               // "alpha r / a" or "2 sqrt(-E) r"
  double residual = 0;               // scaled ODE residual of the accepted candidate
  bool accepted = false;
  double wronskian = 0;              // W{M, W} in z at z = 1, scaled
  std::vector<std::string> candidates;  // "convention scaling residual" for each candidate

  double operator()(double r) const {
    if (r <= 0) return 0;
    double v = 0;
    if (C1 != 0) v += C1 * whittaker_m(a, b, s * r).value;
    if (C2 != 0) v += C2 * whittaker_w(a, b, s * r).value;
    return v;
  }
  int solution_space_dim() const { return std::abs(wronskian) > 1e-8 ? 2 : 1; }
};

namespace radial_detail {

// max |-phi'' + (c/r^2 - alpha/r - E) phi| / max (|phi''| + |c/r^2 phi| + |alpha/r phi| + |E phi|)
// on a log-spaced grid, phi'' by 4th-order differences
inline double ode_residual(const RadialProfile& p, double r_lo, double r_hi, int n = 120) {
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, double(i) / (n - 1));
    const double h = 1e-3 * r;
    const double f0 = p(r), f1 = p(r + h), fm1 = p(r - h), f2 = p(r + 2 * h), fm2 = p(r - 2 * h);
    const double d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    const double pot = p.c / (r * r) - p.alpha / r;
    num = std::max(num, std::abs(-d2 + (pot - p.E) * f0));
    den = std::max(den, std::abs(d2) + std::abs(p.c / (r * r) * f0) + std::abs(p.alpha / r * f0) + std::abs(p.E * f0));
  }
  return den > 0 ? num / den : 0.0;
}

}  // namespace radial_detail

// Tries (a, b, E) from both conventions and the arguments alpha r / a and 2 sqrt(-E) r, keeping
// the candidate with the smallest ODE residual.
inline RadialProfile whittaker_eigenfunction(double alpha, double k, double mu, int eps, int n, double C1, double C2,
                                             double tol = 1e-6) {
  if (!(alpha > 0)) throw std::domain_error("whittaker_eigenfunction: need alpha > 0");
  if (n < 0) throw std::domain_error("whittaker_eigenfunction: n must be >= 0");
  const double nu = radial_nu(k, eps, mu);
  const auto rc = radial_equation_coeff(k, eps, mu, alpha);
  RadialProfile best;
  best.residual = 1e300;
  for (auto conv : {LevelConvention::corrected, LevelConvention::printed})
    for (int sc = 0; sc < 2; ++sc) {
      RadialProfile p;
      p.alpha = alpha;
      p.nu = nu;
      p.c = rc.centrifugal;
      p.C1 = C1;
      p.C2 = C2;
      p.convention = conv;
      p.a = n + nu + (conv == LevelConvention::printed ? 0.75 : 0.5);
      p.b = nu + (conv == LevelConvention::printed ? 0.25 : 0.0);
      p.E = coulomb_levels(alpha, k, mu, eps, n, conv).back().E;
      p.s = sc == 0 ? alpha / p.a : 2 * std::sqrt(-p.E);
      p.scaling = sc == 0 ? "alpha r / a" : "2 sqrt(-E) r";
      const double len = 1 / p.s;
      p.residual = radial_detail::ode_residual(p, 1e-2 * len, 30 * len);
      best.candidates.push_back(std::string(to_string(conv)) + " " + p.scaling + " " + std::to_string(p.residual));
      if (p.residual < best.residual) {
        auto cands = best.candidates;
        best = p;
        best.candidates = cands;
      }
    }
  best.accepted = best.residual <= tol;
  // Wronskian M W' - M' W at z = 1, relative to |M W'| + |M' W|
  const double h = 1e-4;
  auto M = [&](double z) { return whittaker_m(best.a, best.b, z).value; };
  auto W = [&](double z) { return whittaker_w(best.a, best.b, z).value; };
  const double dM = (M(1 + h) - M(1 - h)) / (2 * h), dW = (W(1 + h) - W(1 - h)) / (2 * h);
  best.wronskian = (M(1) * dW - dM * W(1)) / (std::abs(M(1) * dW) + std::abs(dM * W(1)));
  return best;
}

// Composite Simpson on [0, r_max]
inline double radial_norm2(const RadialProfile& p, double r_max, int n = 4000) {
  const double h = r_max / n;
  double s = 0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h, f = p(r);
    s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * f * f;
  }
  return s * h / 3;
}

}  // namespace spinplane
