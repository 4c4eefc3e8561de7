#pragma once
// Determining equations of [H, Q] = 0 for H = -lap + sigma.B and
// Q = sigma^mu (Lambda^{mu a} P_a + Omega^mu).
//
// Expanding the commutator and collecting powers of P gives, in this normalization
// (spin indices d, b, c = 1..3, planar a, e = 1..2, subscripts are derivatives):
//   de1:  Lambda^{mu a}_e + Lambda^{mu e}_a = 0
//   de2:  Omega^0_a = 0
//   de3a: Lambda^{ba} B^b_a = 0
//   de3b: Lambda^{0a} B^d_a = 2 eps^{dbc} Omega^b B^c
//   de4:  Omega^d_a = eps^{dcb} B^c Lambda^{ba}
// The reduced planar system in terms of the constants (a, b, c1..c4, d1, d2) is e1.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinplane/catalog.hpp"
#include "spinplane/equivalence.hpp"
#include "spinplane/fields.hpp"
#include "spinplane/operator.hpp"

namespace spinplane {

struct DeResidual {
  std::array<double, 16> de1{};            // [mu][a][e]
  std::array<double, 2> de2{};
  double de3a = 0;
  std::array<double, 3> de3b{};
  std::array<std::array<double, 2>, 3> de4{};

  double max_abs() const {
    double m = std::abs(de3a);
    for (double v : de1) m = std::max(m, std::abs(v));
    for (double v : de2) m = std::max(m, std::abs(v));
    for (double v : de3b) m = std::max(m, std::abs(v));
    for (auto& r : de4)
      for (double v : r) m = std::max(m, std::abs(v));
    return m;
  }
};

namespace detail {

struct LocalData {
  std::array<double, 3> B;
  std::array<std::array<double, 2>, 3> dB;  // dB[c][a]
  std::array<double, 4> Om;
  std::array<std::array<double, 2>, 4> dOm;
};

inline LocalData local_data(const VectorField& B, const OmegaField& Om, Point2 x) {
  LocalData d;
  d.B = B(x);
  d.dB = B.jacobian(x);
  d.Om = Om(x);
  d.dOm = Om.jacobian(x);
  return d;
}

}  // namespace detail

inline DeResidual residual_de(const VectorField& B, const FirstOrderOperator& Q, Point2 x) {
  if (!in_domain(B.domain(), x) || !in_domain(Q.omega.domain(), x))
    throw std::domain_error("determining residual requested at a non-differentiable point");
  const auto d = detail::local_data(B, Q.omega, x);
  DeResidual r;
  const Jet2 X1 = Jet2::variable(x.x1, 0), X2 = Jet2::variable(x.x2, 1);
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < 2; ++e) {
        const Jet2 la = Q.lambda(mu, a, X1, X2), le = Q.lambda(mu, e, X1, X2);
        const double dla_e = e == 0 ? la.coeff(1, 0) : la.coeff(0, 1);
        const double dle_a = a == 0 ? le.coeff(1, 0) : le.coeff(0, 1);
        r.de1[(mu * 2 + a) * 2 + e] = dla_e + dle_a;
      }
  r.de2 = {d.dOm[0][0], d.dOm[0][1]};
  const auto L = Q.lambda_at(x);
  for (int b = 1; b <= 3; ++b)
    for (int a = 0; a < 2; ++a) r.de3a += L[b][a] * d.dB[b - 1][a];
  for (int dd = 0; dd < 3; ++dd) {
    double lhs = 0, rhs = 0;
    for (int a = 0; a < 2; ++a) lhs += L[0][a] * d.dB[dd][a];
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) rhs += 2.0 * levi_civita(dd, b, c) * d.Om[b + 1] * d.B[c];
    r.de3b[dd] = lhs - rhs;
    for (int a = 0; a < 2; ++a) {
      double s = 0;
      for (int c = 0; c < 3; ++c)
        for (int b = 0; b < 3; ++b) s += levi_civita(dd, c, b) * d.B[c] * L[b + 1][a];
      r.de4[dd][a] = d.dOm[dd + 1][a] - s;
    }
  }
  return r;
}

// ---- reduced planar system ----------------------------------------------------

enum class Regime { co1, co2, co3, co4, lie_translation };

inline std::string to_string(Regime r) {
  static const char* n[] = {"co1", "co2", "co3", "co4", "lie_translation"};
  return n[static_cast<int>(r)];
}

// Lambda^{01} = -a x2 + c3, Lambda^{02} = a x1 + c4, Lambda^{31} = -b x2 - d1,
// Lambda^{32} = b x1 - d2, Lambda^{11} = c1, Lambda^{22} = c2.
struct E1Constants {
  double a = 0, b = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0, d1 = 0, d2 = 0;
};

struct InvalidRegime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Regime classify(const E1Constants& k, double tol = 0.0) {
  auto nz = [tol](double v) { return std::abs(v) > tol; };
  const bool a = nz(k.a), b = nz(k.b), c3 = nz(k.c3) || nz(k.c4), d = nz(k.d1) || nz(k.d2),
             c12 = nz(k.c1) || nz(k.c2);
  if (a && b && !c3) return Regime::co1;
  if (!a && b && !d) return Regime::co2;
  if (a && !b && !c3 && !d) return Regime::co3;
  if (!a && !b && !d) return c12 ? Regime::co4 : Regime::lie_translation;
  throw InvalidRegime("constants violate every condition set co1..co4 (need a c3 = a c4 = 0, and d1 = d2 = 0 if ab = 0)");
}

// Constants of an operator already in reduced form; throws if other Lambda components are set.
inline E1Constants e1_constants(const FirstOrderOperator& Q) {
  if (Q.C[1] != 0 || Q.C[2] != 0 || Q.Ca[1][1] != 0 || Q.Ca[2][0] != 0)
    throw std::invalid_argument("operator '" + Q.name +
                                "' is not in reduced form (C^1 = C^2 = C^{12} = C^{21} = 0 required); apply an "
                                "equivalence transformation first");
  E1Constants k;
  k.a = Q.C[0];
  k.b = Q.C[3];
  k.c3 = Q.Ca[0][0];
  k.c4 = Q.Ca[0][1];
  k.c1 = Q.Ca[1][0];
  k.c2 = Q.Ca[2][1];
  k.d1 = -Q.Ca[3][0];
  k.d2 = -Q.Ca[3][1];
  return k;
}

inline bool reducible(const FirstOrderOperator& Q) {
  try {
    classify(e1_constants(Q));
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

// The ten equations of the reduced system at x:
//   0..5  Omega-gradient equations (O3_1, O3_2, O1_1, O1_2, O2_1, O2_2)
//   6     c1 B1_1 + c2 B2_2 + Lambda^{31} B3_1 + Lambda^{32} B3_2 = 0
//   7..9  Lambda^{0a} B^d_a = 2 (Omega x B)^d
inline std::array<double, 10> residual_e1(const VectorField& B, const OmegaField& Om, const E1Constants& k, Point2 x) {
  classify(k);
  if (!in_domain(B.domain(), x) || !in_domain(Om.domain(), x))
    throw std::domain_error("reduced residual requested at a non-differentiable point");
  const auto d = detail::local_data(B, Om, x);
  const double x1 = x.x1, x2 = x.x2;
  const double L01 = -k.a * x2 + k.c3, L02 = k.a * x1 + k.c4;
  const double L31 = -k.b * x2 - k.d1, L32 = k.b * x1 - k.d2;
  const auto& b = d.B;
  const auto& db = d.dB;
  const auto& o = d.Om;
  const auto& dO = d.dOm;
  std::array<double, 10> r{};
  r[0] = dO[3][0] + k.c1 * b[1];
  r[1] = dO[3][1] - k.c2 * b[0];
  r[2] = dO[1][0] - L31 * b[1];
  r[3] = dO[1][1] - (L32 * b[1] - k.c2 * b[2]);
  r[4] = dO[2][0] - (k.c1 * b[2] - L31 * b[0]);
  r[5] = dO[2][1] + L32 * b[0];
  r[6] = k.c1 * db[0][0] + k.c2 * db[1][1] + L31 * db[2][0] + L32 * db[2][1];
  const std::array<double, 3> cross{o[2] * b[2] - o[3] * b[1], o[3] * b[0] - o[1] * b[2], o[1] * b[1] - o[2] * b[0]};
  for (int dd = 0; dd < 3; ++dd) r[7 + dd] = L01 * db[dd][0] + L02 * db[dd][1] - 2.0 * cross[dd];
  return r;
}

inline double max_abs(const std::array<double, 10>& r) {
  double m = 0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

// ---- Lie generators -------------------------------------------------------------

enum class SymmetryKind { lie_generator, higher_symmetry };

inline std::string to_string(SymmetryKind k) {
  return k == SymmetryKind::lie_generator ? "Lie generator" : "higher symmetry";
}

// Lie form: Lambda^{mu a} = 0 for mu != 0 and constant Omega^a (diagonalizable by a spin rotation).
inline SymmetryKind lie_reduction_check(const FirstOrderOperator& Q) {
  for (int mu = 1; mu < 4; ++mu)
    if (Q.C[mu] != 0 || Q.Ca[mu][0] != 0 || Q.Ca[mu][1] != 0) return SymmetryKind::higher_symmetry;
  const std::array<Point2, 4> probe{{{0.31, 0.52}, {-0.73, 0.44}, {1.3, -0.9}, {-0.2, -1.7}}};
  const auto ref = Q.omega(probe[0]);
  for (auto& p : probe) {
    if (!in_domain(Q.omega.domain(), p)) continue;
    const auto v = Q.omega(p);
    for (int i = 1; i < 4; ++i)
      if (std::abs(v[i] - ref[i]) > 1e-12) return SymmetryKind::higher_symmetry;
  }
  return SymmetryKind::lie_generator;
}

// ---- sampling and sweeps --------------------------------------------------------

// Deterministic uniform doubles in [0,1) from a 64-bit Mersenne twister (platform independent).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return double(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

// Points of the annulus 0.2 <= r <= 3 accepted by `inside`.
template <class Pred>
std::vector<Point2> sample_annulus(std::uint64_t seed, int n, Pred inside, double rmin = 0.2, double rmax = 3.0) {
  SeededUniform u(seed);
  std::vector<Point2> pts;
  pts.reserve(n);
  int tries = 0;
  while (int(pts.size()) < n) {
    if (++tries > 1000 * n) throw std::runtime_error("sampling annulus: domain too small for the requested points");
    const double r = std::sqrt(u(rmin * rmin, rmax * rmax)), th = u(-M_PI, M_PI);
    const Point2 p{r * std::cos(th), r * std::sin(th)};
    if (inside(p)) pts.push_back(p);
  }
  return pts;
}

struct ResidualReport {
  std::string family, op, check;  // check: "de" or "e1"
  std::uint64_t seed = 0;
  int n_points = 0;
  double max_residual = 0, mean_residual = 0, tol = 1e-8;
  bool pass = false;
  std::string note;
};

// Residual sweep of (family, operator) over seeded points.  The reduced system is used when
// the operator is in reduced form, or after a quarter spin turn sigma3 -> sigma1 for operators
// of sigma3 P type (which no condition set covers in the sigma3 frame).
inline std::vector<ResidualReport> certify(const FieldFamily& fam, const SymmetryDescriptor& d, int n_points,
                                           std::uint64_t seed, double tol = 1e-8) {
  const VectorField B = fam.field();
  const auto pts = sample_annulus(seed, n_points, [&](Point2 p) { return fam.in_domain(p); });
  ResidualReport de{to_string(fam.id()), to_string(d.id), "de", seed, n_points, 0, 0, tol, false, {}};
  for (auto& p : pts) {
    const double m = residual_de(B, d.op, p).max_abs();
    de.max_residual = std::max(de.max_residual, m);
    de.mean_residual += m / n_points;
  }
  de.pass = de.max_residual <= tol;
  std::vector<ResidualReport> out{de};

  ResidualReport e1 = de;
  e1.check = "e1";
  e1.max_residual = e1.mean_residual = 0;
  VectorField Bq = B;
  FirstOrderOperator Q = d.op;
  if (!reducible(Q)) {
    const EquivalenceTransform t = quarter_turn(3, 1);
    Bq = apply_equivalence(t, B);
    Q = apply_equivalence(t, Q);
    e1.note = "checked after spin rotation sigma3 -> sigma1";
  }
  if (reducible(Q)) {
    const auto k = e1_constants(Q);
    if (e1.note.empty()) e1.note = "regime " + to_string(classify(k));
    else e1.note += ", regime " + to_string(classify(k));
    for (auto& p : pts) {
      const double m = max_abs(residual_e1(Bq, Q.omega, k, p));
      e1.max_residual = std::max(e1.max_residual, m);
      e1.mean_residual += m / n_points;
    }
    e1.pass = e1.max_residual <= tol;
    out.push_back(e1);
  }
  return out;
}

}  // namespace spinplane
