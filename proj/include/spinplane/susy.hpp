#pragma once
// Shape-invariant matrix model on y = x2:
//   (-d^2/dy^2 + V_kappa) Phi = eps Phi,
//   V_kappa = lambda^2 e^{-2y} - lambda (2 kappa - 1) e^{-y} sigma1 + p sigma3 = W^2 - W' - c_kappa,
//   W_kappa = -kappa + lambda e^{-y} sigma1 - (p / 2 kappa) sigma3,  c_kappa = kappa^2 + p^2/(4 kappa^2).
// a-_kappa = d_y + W_kappa annihilates Phi_0 = z^{1/2-kappa} (K_{nu+1}(z), -K_nu(z)), z = lambda e^{-y},
// nu = p/(2 kappa) - 1/2; Phi_n(kappa) = a+_kappa ... a+_{kappa+n-1} Phi_0(kappa+n) with
// eps_n = -c_{kappa+n}.  States are evaluated on one-variable jets, so every derivative is exact.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "spinplane/hamiltonian.hpp"
#include "spinplane/jet.hpp"
#include "spinplane/specfun.hpp"

namespace spinplane {

struct SusyParams {
  double kappa = 1, p = -1, lambda = 1;
};

inline void validate(const SusyParams& s) {
  if (!(s.kappa != 0) || !std::isfinite(s.kappa)) throw std::domain_error("susy: kappa must be nonzero");
  if (!(s.lambda > 0)) throw std::domain_error("susy: lambda must be positive");
}

inline double c_kappa(double kappa, double p) { return kappa * kappa + p * p / (4 * kappa * kappa); }

// eps_n = -N^2 - p^2/(4N^2), N = kappa + n
inline double susy_eps(double kappa, double p, int n) {
  const double N = kappa + n;
  if (N == 0) throw std::domain_error("susy: kappa + n = 0");
  return -N * N - p * p / (4 * N * N);
}
inline double susy_energy(double kappa, double p, int n) { return susy_eps(kappa, p, n) + p * p + 0.25; }

using LinePair = std::array<Jet1, 2>;

namespace susy_detail {

// K_nu(z(y)) as a jet: K^{(j)} = (-1/2)^j sum_i C(j,i) K_{nu-j+2i}
inline Jet1 bessel_k_jet(double nu, const Jet1& z) {
  const double z0 = z.value();
  std::array<double, kLineOrder + 1> a{};
  for (int j = 0; j <= kLineOrder; ++j) {
    double s = 0, binom = 1;
    for (int i = 0; i <= j; ++i) {
      s += binom * bessel_k(nu - j + 2 * i, z0).value;
      binom = binom * (j - i) / (i + 1);
    }
    a[j] = std::pow(-0.5, j) * s / detail::factorial(j);
  }
  return compose(z, a);
}

// (w0, w1, w3) of W_kappa = w0 + w1 sigma1 + w3 sigma3
inline std::array<Jet1, 3> W(const SusyParams& s, double kappa, const Jet1& y) {
  return {Jet1(-kappa), exp(-y) * s.lambda, Jet1(-s.p / (2 * kappa))};
}

inline LinePair times_W(const std::array<Jet1, 3>& w, const LinePair& f) {
  return {w[0] * f[0] + w[1] * f[1] + w[2] * f[0], w[0] * f[1] + w[1] * f[0] - w[2] * f[1]};
}

}  // namespace susy_detail

inline LinePair susy_ground_jet(const SusyParams& s, double kappa, const Jet1& y) {
  const double nu = s.p / (2 * kappa) - 0.5;
  const Jet1 z = exp(-y) * s.lambda;
  const Jet1 pre = pow(z, 0.5 - kappa);
  return {pre * susy_detail::bessel_k_jet(nu + 1, z), -(pre * susy_detail::bessel_k_jet(nu, z))};
}

// a+_kappa Phi = -Phi' + W_kappa Phi
inline LinePair a_plus(const SusyParams& s, double kappa, const LinePair& f, const Jet1& y) {
  const auto wf = susy_detail::times_W(susy_detail::W(s, kappa, y), f);
  return {wf[0] - diff(f[0], 0), wf[1] - diff(f[1], 0)};
}
inline LinePair a_minus(const SusyParams& s, double kappa, const LinePair& f, const Jet1& y) {
  const auto wf = susy_detail::times_W(susy_detail::W(s, kappa, y), f);
  return {wf[0] + diff(f[0], 0), wf[1] + diff(f[1], 0)};
}

struct SusyState {
  SusyParams params;
  int n = 0;
  double nu_s = 0;  // Bessel order of the ground state at kappa + n
  double eps = 0, E = 0;

  // jet in y; derivatives of order <= valid() are exact
  LinePair jet(double y) const {
    const Jet1 Y = Jet1::variable(y);
    LinePair f = susy_ground_jet(params, params.kappa + n, Y);
    for (int j = n - 1; j >= 0; --j) f = a_plus(params, params.kappa + j, f, Y);
    return f;
  }
  int valid() const { return kLineOrder - n; }
  std::array<double, 2> operator()(double y) const {
    const auto f = jet(y);
    return {f[0].value(), f[1].value()};
  }
  std::array<double, 2> boundary_value() const { return (*this)(0.0); }
};

inline SusyState susy_excited_state(const SusyParams& s, int n) {
  validate(s);
  if (n < 0) throw std::domain_error("susy: n must be >= 0");
  if (n > kLineOrder - 2) throw std::domain_error("susy: n too large for the available derivative order");
  for (int j = 0; j <= n; ++j)
    if (s.kappa + j == 0) throw std::domain_error("susy: kappa + j = 0 along the ladder");
  SusyState st;
  st.params = s;
  st.n = n;
  st.nu_s = s.p / (2 * (s.kappa + n)) - 0.5;
  st.eps = susy_eps(s.kappa, s.p, n);
  st.E = susy_energy(s.kappa, s.p, n);
  return st;
}

inline SusyState susy_ground_state(const SusyParams& s) { return susy_excited_state(s, 0); }

// V_kappa Phi
inline LinePair apply_V(const SusyParams& s, const LinePair& f, const Jet1& y) {
  const Jet1 e1 = exp(-y) * s.lambda;
  const Jet1 v0 = e1 * e1, v1 = e1 * (1 - 2 * s.kappa);
  return {v0 * f[0] + v1 * f[1] + s.p * f[0], v0 * f[1] + v1 * f[0] - s.p * f[1]};
}

struct LineResidual {
  double absolute = 0;  // max |.| over the grid
  double relative = 0;  // absolute / max |Phi|
};

inline std::vector<double> y_grid(double y0, double y1, int n) {
  std::vector<double> ys;
  for (int i = 0; i < n; ++i) ys.push_back(y0 + (y1 - y0) * i / (n - 1));
  return ys;
}

inline LineResidual annihilation_residual(const SusyState& st, const std::vector<double>& ys) {
  if (st.n != 0) throw std::invalid_argument("annihilation_residual: ground states only");
  LineResidual r;
  double scale = 0;
  for (double y : ys) {
    const Jet1 Y = Jet1::variable(y);
    const auto f = susy_ground_jet(st.params, st.params.kappa, Y);
    const auto a = a_minus(st.params, st.params.kappa, f, Y);
    r.absolute = std::max({r.absolute, std::abs(a[0].value()), std::abs(a[1].value())});
    scale = std::max({scale, std::abs(f[0].value()), std::abs(f[1].value())});
  }
  r.relative = r.absolute / scale;
  return r;
}

// (-Phi'' + V Phi - eps Phi), scaled by max over the grid of |Phi''| + |V Phi| + |eps Phi|
inline LineResidual eigen_residual(const SusyState& st, const std::vector<double>& ys) {
  LineResidual r;
  double scale = 0;
  for (double y : ys) {
    const Jet1 Y = Jet1::variable(y);
    const auto f = st.jet(y);
    const auto vf = apply_V(st.params, f, Y);
    for (int c = 0; c < 2; ++c) {
      const double d2 = f[c].derivative(2), v = vf[c].value(), e = st.eps * f[c].value();
      r.absolute = std::max(r.absolute, std::abs(-d2 + v - e));
      scale = std::max(scale, std::abs(d2) + std::abs(v) + std::abs(e));
    }
  }
  r.relative = r.absolute / scale;
  return r;
}

// Composite Simpson for <Phi_a, Phi_b> on [y0, y1]; each state is sampled once.
namespace susy_detail {

inline std::vector<std::array<double, 2>> sample(const SusyState& st, double y0, double y1, int n) {
  std::vector<std::array<double, 2>> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = st(y0 + (y1 - y0) * i / n);
  return v;
}

inline double simpson_dot(const std::vector<std::array<double, 2>>& a, const std::vector<std::array<double, 2>>& b,
                          double h) {
  const size_t n = a.size() - 1;
  double s = 0;
  for (size_t i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * (a[i][0] * b[i][0] + a[i][1] * b[i][1]);
  return s * h / 3;
}

}  // namespace susy_detail

inline double susy_inner(const SusyState& a, const SusyState& b, double y0, double y1, int n = 6000) {
  if (n % 2) ++n;
  return susy_detail::simpson_dot(susy_detail::sample(a, y0, y1, n), susy_detail::sample(b, y0, y1, n), (y1 - y0) / n);
}

// |<a, b>| / (|a| |b|) for every pair of `states`
inline std::vector<std::vector<double>> susy_overlap_matrix(const std::vector<SusyState>& states, double y0, double y1,
                                                            int n = 6000) {
  if (n % 2) ++n;
  const double h = (y1 - y0) / n;
  std::vector<std::vector<std::array<double, 2>>> v;
  std::vector<double> nn;
  for (auto& st : states) {
    v.push_back(susy_detail::sample(st, y0, y1, n));
    nn.push_back(std::sqrt(susy_detail::simpson_dot(v.back(), v.back(), h)));
  }
  std::vector<std::vector<double>> m(states.size(), std::vector<double>(states.size(), 1.0));
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      m[i][j] = m[j][i] = std::abs(susy_detail::simpson_dot(v[i], v[j], h)) / (nn[i] * nn[j]);
  return m;
}

inline double susy_overlap(const SusyState& a, const SusyState& b, double y0, double y1, int n = 6000) {
  return susy_overlap_matrix({a, b}, y0, y1, n)[0][1];
}

// W_kappa^2 + W_kappa' - (W_{kappa+1}^2 - W_{kappa+1}' + c_kappa - c_{kappa+1}), max coefficient
// over the 1, sigma1, sigma3 components; W' = -lambda e^{-y} sigma1.
inline double shape_invariance_residual(double kappa, double p, double lambda, const std::vector<double>& ys,
                                        std::function<double(double, double)> c = c_kappa) {
  if (!(kappa > 0)) throw std::domain_error("shape_invariance_residual: need kappa > 0");
  auto sq = [&](double k, double y) {
    const double w0 = -k, w1 = lambda * std::exp(-y), w3 = -p / (2 * k);
    return std::array<double, 3>{w0 * w0 + w1 * w1 + w3 * w3, 2 * w0 * w1, 2 * w0 * w3};
  };
  double worst = 0;
  for (double y : ys) {
    const double dw1 = -lambda * std::exp(-y);
    auto l = sq(kappa, y), r = sq(kappa + 1, y);
    l[1] += dw1;
    r[1] -= dw1;
    r[0] += c(kappa, p) - c(kappa + 1, p);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(l[i] - r[i]));
  }
  return worst;
}

// ---- the planar state -------------------------------------------------------------------

// H = -lap + lambda (1 - 2 kappa) e^{-x2} (sigma1 cos x1 - sigma2 sin x1) + lambda^2 e^{-2 x2}
inline HamiltonianSpec susy_hamiltonian(const SusyParams& s) {
  HamiltonianSpec h;
  h.name = "H[shape-invariant]";
  const double mu = s.lambda * (1 - 2 * s.kappa), lam = s.lambda;
  h.B = VectorField::from_generic([mu](const auto& x1, const auto& x2) {
    using S = std::remove_cvref_t<decltype(x1)>;
    using std::cos;
    using std::exp;
    using std::sin;
    const S e = exp(-x2) * mu;
    return std::array<S, 3>{e * cos(x1), -(e * sin(x1)), S(0.0)};
  });
  h.V = ScalarField::from_generic([lam](const auto&, const auto& x2) {
    using S = std::remove_cvref_t<decltype(x2)>;
    using std::exp;
    return std::array<S, 1>{exp(x2 * -2.0) * (lam * lam)};
  });
  return h;
}

struct FullState {
  SusyState line;
  double E = 0;
  cplx C1 = 1, C2 = 0;
  ClosedFormSpinorFn psi;
  HamiltonianSpec H;
  bool shift_invariant_norm = true;  // C1 C2 != 0 needs p half-odd
};

// Psi = C1 (e^{i(p+1/2)x1} phi, e^{i(p-1/2)x1} xi) + C2 (e^{i(-p+1/2)x1} xi, e^{i(-p-1/2)x1} phi)
inline FullState full_state_2d(const SusyParams& s, int n, cplx C1, cplx C2) {
  if (n > kLineOrder - kPlaneOrder) throw std::domain_error("full_state_2d: n <= 3 (plane jets need 5 derivatives)");
  FullState fs;
  fs.line = susy_excited_state(s, n);
  fs.E = fs.line.E;
  fs.C1 = C1;
  fs.C2 = C2;
  fs.H = susy_hamiltonian(s);
  const double p = s.p;
  fs.shift_invariant_norm = C1 == 0.0 || C2 == 0.0 || std::abs(std::fmod(std::abs(p), 1.0) - 0.5) < 1e-12;
  const SusyState line = fs.line;
  fs.psi = ClosedFormSpinorFn::from_generic([line, p, C1, C2](const auto& x1, const auto& x2) {
    using S = std::remove_cvref_t<decltype(x1)>;
    using C = complex_of_t<S>;
    using std::cos;
    using std::sin;
    std::array<S, 2> f;
    if constexpr (std::is_same_v<S, double>) {
      const auto v = line(x2);
      f = {v[0], v[1]};
    } else {
      const auto j = line.jet(x2.value());
      for (int c = 0; c < 2; ++c) {
        std::array<double, kPlaneOrder + 1> a;
        for (int i = 0; i <= kPlaneOrder; ++i) a[i] = j[c].c[i];
        f[c] = compose(x2, a);
      }
    }
    auto expi = [&](double m) { return to_complex(cos(x1 * m)) + cplx(0, 1) * to_complex(sin(x1 * m)); };
    const C phi = to_complex(f[0]), xi = to_complex(f[1]);
    return SpinorT<C>{{expi(p + 0.5) * phi * C1 + expi(-p + 0.5) * xi * C2,
                       expi(p - 0.5) * xi * C1 + expi(-p - 0.5) * phi * C2}};
  });
  return fs;
}

}  // namespace spinplane
