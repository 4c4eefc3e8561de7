#pragma once
// Hamiltonians H = -lap + sigma.B + omega B^2 + V, their pointwise action on spinor jets,
// and finite-difference discretizations on 1D/2D grids.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinplane/catalog.hpp"
#include "spinplane/determining.hpp"
#include "spinplane/fields.hpp"
#include "spinplane/operator.hpp"

namespace spinplane {

struct HamiltonianSpec {
  std::string name = "H";
  VectorField B = VectorField::zero();
  double omega = 0;  // coefficient of B^2
  ScalarField V;     // optional scalar potential

  // (omega B^2 + V, B1, B2, B3): H = -lap + sum_mu M^mu sigma^mu
  std::array<Jet2, 4> coefficients(const Jet2& x1, const Jet2& x2) const {
    const auto b = B(x1, x2);
    Jet2 m0 = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]) * omega;
    if (V) m0 = m0 + V(x1, x2)[0];
    return {m0, b[0], b[1], b[2]};
  }
  std::array<double, 4> coefficients(Point2 x) const {
    const auto b = B(x);
    double m0 = omega * (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if (V) m0 += V(x)[0];
    return {m0, b[0], b[1], b[2]};
  }
};

// Variable of a scalar potential compatible with the Lie symmetries of a T1 entry:
// r for the rotational entries, x2 for the x1-translational ones, x1 for T1.7.
enum class PotentialVariable { radius, x1, x2 };

inline std::optional<PotentialVariable> symmetric_potential_variable(FamilyId id) {
  switch (id) {
    case FamilyId::T1_1: case FamilyId::T1_2: case FamilyId::T1_3: case FamilyId::T1_8:
      return PotentialVariable::radius;
    case FamilyId::T1_4: case FamilyId::T1_5:
      return PotentialVariable::x2;
    case FamilyId::T1_7:
      return PotentialVariable::x1;
    default:
      return std::nullopt;
  }
}

inline ScalarField potential(const Profile& V, PotentialVariable v) {
  return ScalarField::from_generic(
      [V, v](const auto& x1, const auto& x2) {
        using S = std::remove_cvref_t<decltype(x1)>;
        using std::sqrt;
        const S t = v == PotentialVariable::radius ? S(sqrt(x1 * x1 + x2 * x2)) : (v == PotentialVariable::x1 ? x1 : x2);
        return std::array<S, 1>{eval_profile(V, t)};
      },
      v == PotentialVariable::radius ? Domain::punctured_plane : Domain::plane);
}

// H for a catalog entry; with a profile V the potential depends on the symmetric variable.
inline HamiltonianSpec hamiltonian(const FieldFamily& fam, double omega = 0.0, const Profile& V = {}) {
  HamiltonianSpec h;
  h.name = "H[" + to_string(fam.id()) + "]";
  h.B = fam.field();
  h.omega = omega;
  if (V) {
    const auto var = symmetric_potential_variable(fam.id());
    if (!var) throw std::invalid_argument(to_string(fam.id()) + ": no symmetric scalar potential for this entry");
    h.V = potential(V, *var);
  }
  return h;
}

inline SpinorJet apply_h(const HamiltonianSpec& H, const SpinorJet& psi, Point2 x) {
  const Jet2 X1 = Jet2::variable(x.x1, 0), X2 = Jet2::variable(x.x2, 1);
  return jet_add(neg_laplacian(psi), multiply_sigma(H.coefficients(X1, X2), psi));
}

// Pointwise (H psi)(x); analytic when psi carries jets, else 4th-order differences (h = 1e-3).
inline Spinor apply_h(const HamiltonianSpec& H, const ClosedFormSpinorFn& psi, Point2 x, double h = 1e-3) {
  if (psi.has_jet()) return value_of(apply_h(H, psi.jet(x), x).v);
  const auto m = H.coefficients(x);
  const Spinor v = psi(x);
  Spinor lap{};
  for (int a = 0; a < 2; ++a) {
    auto at = [&](double t) { return a == 0 ? psi(x.x1 + t, x.x2) : psi(x.x1, x.x2 + t); };
    const Spinor p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
    for (int s = 0; s < 2; ++s) lap[s] += (-p2[s] + 16.0 * p1[s] - 30.0 * v[s] + 16.0 * m1[s] - m2[s]) / (12 * h * h);
  }
  Spinor out = sigma_dot({m[1], m[2], m[3]}) * v;
  for (int s = 0; s < 2; ++s) out[s] += m[0] * v[s] - lap[s];
  return out;
}

inline JetOperator as_jet_operator(const HamiltonianSpec& H) {
  return [H](const SpinorJet& p, Point2 x) { return apply_h(H, p, x); };
}

// ---- grids ---------------------------------------------------------------------

enum class Boundary { periodic, dirichlet };

inline const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "dirichlet"; }

struct Axis {
  double lo = 0, hi = 1;
  int n = 8;
  Boundary bc = Boundary::periodic;

  double h() const { return bc == Boundary::periodic ? (hi - lo) / n : (hi - lo) / (n + 1); }
  double node(int i) const { return bc == Boundary::periodic ? lo + i * h() : lo + (i + 1) * h(); }
};

// 1D grids live on the line x2 = x2_line (x1 = node coordinate); the transverse dependence is a
// plane wave e^{i p_perp x2}, so P2 acts as p_perp.
struct Grid {
  std::vector<Axis> axes;
  double x2_line = 0;
  double p_perp = 0;

  static Grid line(Axis a, double p_perp = 0, double x2_line = 0) {
    Grid g;
    g.axes = {a};
    g.p_perp = p_perp;
    g.x2_line = x2_line;
    g.validate();
    return g;
  }
  static Grid plane(Axis a, Axis b) {
    Grid g;
    g.axes = {a, b};
    g.validate();
    return g;
  }

  void validate() const {
    if (axes.empty() || axes.size() > 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    for (auto& a : axes) {
      if (a.n < 8) throw std::invalid_argument("grid needs at least 8 points per axis");
      if (!(a.hi > a.lo)) throw std::invalid_argument("grid axis needs hi > lo");
    }
  }
  int dim() const { return int(axes.size()); }
  int nodes() const { return dim() == 1 ? axes[0].n : axes[0].n * axes[1].n; }
  int size() const { return 2 * nodes(); }
  Point2 point(int node) const {
    if (dim() == 1) return {axes[0].node(node), x2_line};
    return {axes[0].node(node % axes[0].n), axes[1].node(node / axes[0].n)};
  }
  double cell() const { return dim() == 1 ? axes[0].h() : axes[0].h() * axes[1].h(); }
  bool same_as(const Grid& o) const {
    if (o.dim() != dim() || o.p_perp != p_perp || o.x2_line != x2_line) return false;
    for (int a = 0; a < dim(); ++a)
      if (o.axes[a].lo != axes[a].lo || o.axes[a].hi != axes[a].hi || o.axes[a].n != axes[a].n ||
          o.axes[a].bc != axes[a].bc)
        return false;
    return true;
  }
};

// Samples (psi_1, psi_2) at every node, interleaved: data[2*node + s].
struct SpinorGridFn {
  Grid grid;
  Eigen::VectorXcd data;

  SpinorGridFn() = default;
  explicit SpinorGridFn(Grid g) : grid(std::move(g)), data(Eigen::VectorXcd::Zero(grid.size())) {}
  SpinorGridFn(Grid g, Eigen::VectorXcd d) : grid(std::move(g)), data(std::move(d)) {
    if (data.size() != grid.size()) throw std::invalid_argument("sample vector does not match the grid");
  }

  static SpinorGridFn sample(const ClosedFormSpinorFn& f, const Grid& g) {
    SpinorGridFn r(g);
    for (int i = 0; i < g.nodes(); ++i) {
      const Spinor v = f(g.point(i));
      r.data[2 * i] = v[0];
      r.data[2 * i + 1] = v[1];
    }
    return r;
  }
  Spinor at(int node) const { return {{data[2 * node], data[2 * node + 1]}}; }
};

// <f, g> = cell * sum f^dagger g
inline cplx inner(const SpinorGridFn& f, const SpinorGridFn& g) {
  if (!f.grid.same_as(g.grid)) throw std::invalid_argument("inner product of functions on different grids");
  return f.grid.cell() * f.data.dot(g.data);
}
inline double norm(const SpinorGridFn& f) { return std::sqrt(std::real(inner(f, f))); }

// ---- discretization --------------------------------------------------------------

using SparseC = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct DiscreteOperator {
  std::string name;
  Grid grid;
  SparseC A;
  int order = 4;

  int margin() const { return order / 2; }  // stencil half-width
  SpinorGridFn apply(const SpinorGridFn& f) const {
    if (!f.grid.same_as(grid)) throw std::invalid_argument(name + ": operand lives on a different grid");
    return SpinorGridFn(grid, A * f.data);
  }
  double hermiticity_defect() const {
    SparseC d = A - SparseC(A.adjoint());
    double m = 0;
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseC::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }
  // max row sum of |entries| (bounds the spectral norm)
  double norm_inf() const {
    double m = 0;
    for (int k = 0; k < A.outerSize(); ++k) {
      double s = 0;
      for (SparseC::InnerIterator it(A, k); it; ++it) s += std::abs(it.value());
      m = std::max(m, s);
    }
    return m;
  }
};

namespace detail {

struct Stencil {
  std::vector<int> off;
  std::vector<double> w;
};

inline Stencil first_derivative(int order) {
  if (order == 2) return {{-1, 1}, {-0.5, 0.5}};
  if (order == 4) return {{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}};
  throw std::invalid_argument("stencil order must be 2 or 4");
}
inline Stencil second_derivative(int order) {
  if (order == 2) return {{-1, 0, 1}, {1, -2, 1}};
  if (order == 4) return {{-2, -1, 0, 1, 2}, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}};
  throw std::invalid_argument("stencil order must be 2 or 4");
}

// Neighbour of `node` at offset `o` along `axis`, or -1 outside a Dirichlet box.
inline int neighbour(const Grid& g, int node, int axis, int o) {
  const int n0 = g.axes[0].n;
  int i = g.dim() == 1 ? node : node % n0, j = g.dim() == 1 ? 0 : node / n0;
  int& c = axis == 0 ? i : j;
  const Axis& ax = g.axes[axis];
  c += o;
  if (c < 0 || c >= ax.n) {
    if (ax.bc == Boundary::dirichlet) return -1;
    c = ((c % ax.n) + ax.n) % ax.n;
  }
  return g.dim() == 1 ? i : i + n0 * j;
}

inline void add_block(std::vector<Eigen::Triplet<cplx>>& t, int r, int c, const Mat2& m) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (m(a, b) != cplx(0)) t.emplace_back(2 * r + a, 2 * c + b, m(a, b));
}

inline void check_finite(const std::array<double, 4>& v, int node, const std::string& what) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::domain_error(what + ": singular coefficient at grid node " + std::to_string(node));
}

}  // namespace detail

inline DiscreteOperator discretize(const HamiltonianSpec& H, const Grid& g, int order = 4) {
  g.validate();
  std::vector<Eigen::Triplet<cplx>> t;
  const auto d2 = detail::second_derivative(order);
  for (int node = 0; node < g.nodes(); ++node) {
    const Point2 x = g.point(node);
    if (!in_domain(H.B.domain(), x)) throw std::domain_error(H.name + ": field singular at grid node " + std::to_string(node));
    std::array<double, 4> m;
    try {
      m = H.coefficients(x);
    } catch (const std::domain_error&) {
      throw std::domain_error(H.name + ": field singular at grid node " + std::to_string(node));
    }
    detail::check_finite(m, node, H.name);
    Mat2 diag = sigma_dot({m[1], m[2], m[3]}) + cplx(m[0] + g.p_perp * g.p_perp) * Mat2::identity();
    detail::add_block(t, node, node, diag);
    for (int a = 0; a < g.dim(); ++a) {
      const double h2 = std::pow(g.axes[a].h(), 2);
      for (size_t k = 0; k < d2.off.size(); ++k) {
        const int nb = detail::neighbour(g, node, a, d2.off[k]);
        if (nb < 0) continue;
        detail::add_block(t, node, nb, cplx(-d2.w[k] / h2) * Mat2::identity());
      }
    }
  }
  DiscreteOperator op{H.name, g, SparseC(g.size(), g.size()), order};
  op.A.setFromTriplets(t.begin(), t.end());
  op.A.makeCompressed();
  return op;
}

inline DiscreteOperator discretize(const FirstOrderOperator& Q, const Grid& g, int order = 4) {
  g.validate();
  std::vector<Eigen::Triplet<cplx>> t;
  const auto d1 = detail::first_derivative(order);
  const cplx mi(0, -1);
  for (int node = 0; node < g.nodes(); ++node) {
    const Point2 x = g.point(node);
    if (!in_domain(Q.omega.domain(), x))
      throw std::domain_error(Q.name + ": coefficient singular at grid node " + std::to_string(node));
    const auto om = Q.omega(x);
    detail::check_finite(om, node, Q.name);
    const auto L = Q.lambda_at(x);
    Mat2 diag;
    for (int mu = 0; mu < 4; ++mu) {
      double c = om[mu];
      if (g.dim() == 1) c += L[mu][1] * g.p_perp;
      diag = diag + cplx(c) * pauli(mu);
    }
    detail::add_block(t, node, node, diag);
    for (int a = 0; a < g.dim(); ++a) {
      Mat2 lam;
      for (int mu = 0; mu < 4; ++mu) lam = lam + cplx(L[mu][a]) * pauli(mu);
      const double h = g.axes[a].h();
      for (size_t k = 0; k < d1.off.size(); ++k) {
        const int nb = detail::neighbour(g, node, a, d1.off[k]);
        if (nb < 0) continue;
        detail::add_block(t, node, nb, (mi * d1.w[k] / h) * lam);
      }
    }
  }
  DiscreteOperator op{Q.name, g, SparseC(g.size(), g.size()), order};
  op.A.setFromTriplets(t.begin(), t.end());
  op.A.makeCompressed();
  return op;
}

// Multiplication by sigma^mu on every node.
inline DiscreteOperator discretize_sigma(int mu, const Grid& g) {
  FirstOrderOperator s = ops::sigma(mu);
  return discretize(s, g, 2);
}

// -d^2/dx^2 (1D) or -lap (2D) with zero field.
inline DiscreteOperator discretize_neg_laplacian(const Grid& g, int order = 4) {
  Grid g0 = g;
  g0.p_perp = 0;
  HamiltonianSpec h;
  h.name = "-lap";
  return discretize(h, g0, order);
}

// ---- commutator residual ---------------------------------------------------------

struct CommutatorResidual {
  double absolute = 0;  // max_probe |[H,Q] psi| / |psi| on the core
  double relative = 0;  // absolute / |H|_inf
  int margin = 0;       // nodes excluded next to Dirichlet walls
};

inline CommutatorResidual commutator_residual(const DiscreteOperator& Hd, const DiscreteOperator& Qd,
                                              const std::vector<SpinorGridFn>& probes) {
  if (!Hd.grid.same_as(Qd.grid)) throw std::invalid_argument("commutator of operators on different grids");
  const Grid& g = Hd.grid;
  // a double stencil application reaches 2*margin nodes from a wall
  int margin = 0;
  for (auto& a : g.axes)
    if (a.bc == Boundary::dirichlet) margin = 2 * std::max(Hd.margin(), Qd.margin());
  auto in_core = [&](int node) {
    if (margin == 0) return true;
    const int n0 = g.axes[0].n;
    const int idx[2] = {g.dim() == 1 ? node : node % n0, g.dim() == 1 ? 0 : node / n0};
    for (int a = 0; a < g.dim(); ++a)
      if (g.axes[a].bc == Boundary::dirichlet && (idx[a] < margin || idx[a] >= g.axes[a].n - margin)) return false;
    return true;
  };
  CommutatorResidual r;
  r.margin = margin;
  for (const auto& p : probes) {
    const Eigen::VectorXcd c = Hd.A * (Qd.A * p.data) - Qd.A * (Hd.A * p.data);
    double num = 0;
    for (int node = 0; node < g.nodes(); ++node)
      if (in_core(node)) num += std::norm(c[2 * node]) + std::norm(c[2 * node + 1]);
    r.absolute = std::max(r.absolute, std::sqrt(g.cell() * num) / norm(p));
  }
  r.relative = r.absolute / Hd.norm_inf();
  return r;
}

// Smooth seeded probes: a few low Fourier modes (periodic axes) or sine modes (Dirichlet axes)
// with random complex amplitudes in both spin components.
inline std::vector<SpinorGridFn> grid_probes(const Grid& g, int count, std::uint64_t seed, int max_mode = 3) {
  SeededUniform u(seed);
  std::vector<SpinorGridFn> out;
  for (int c = 0; c < count; ++c) {
    SpinorGridFn f(g);
    for (int term = 0; term < 3; ++term) {
      std::array<int, 2> m{};
      for (int a = 0; a < g.dim(); ++a) m[a] = int(u() * (2 * max_mode + 1)) - max_mode;
      const cplx amp[2] = {cplx(u(-1, 1), u(-1, 1)), cplx(u(-1, 1), u(-1, 1))};
      for (int node = 0; node < g.nodes(); ++node) {
        const Point2 x = g.point(node);
        cplx v = 1.0;
        for (int a = 0; a < g.dim(); ++a) {
          const Axis& ax = g.axes[a];
          const double s = ((a == 0 ? x.x1 : x.x2) - ax.lo) / (ax.hi - ax.lo);
          if (ax.bc == Boundary::periodic) v *= std::exp(cplx(0, 2 * M_PI * m[a] * s));
          else v *= std::pow(std::sin(M_PI * s), 3) * std::sin(M_PI * (std::abs(m[a]) + 1) * s);
        }
        f.data[2 * node] += amp[0] * v;
        f.data[2 * node + 1] += amp[1] * v;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ---- eigen-solvers ---------------------------------------------------------------

struct EigenPairs {
  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
  std::vector<double> residuals;  // |A v - lambda v| for unit v
  std::string method;
};

inline constexpr int kDenseLimit = 4096;

inline EigenPairs dense_lowest(const SparseC& A, int k) {
  const Eigen::MatrixXcd M = Eigen::MatrixXcd(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense Hermitian eigensolver failed");
  EigenPairs r;
  r.method = "dense";
  k = std::min<int>(k, int(M.rows()));
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    r.values.push_back(es.eigenvalues()[i]);
    r.residuals.push_back((A * v - es.eigenvalues()[i] * v).norm());
    r.vectors.push_back(v);
  }
  return r;
}

struct LanczosOptions {
  std::uint64_t seed = 1;
  int max_basis = 400;
  double tol = 1e-10;
  std::optional<double> shift;  // shift-invert about this value; default: below the Gershgorin bound
};

// Lowest k eigenpairs by shift-invert Lanczos with full (twice-applied) reorthogonalization.
// Deterministic: fixed start vector from the seed and fixed iteration order.
inline EigenPairs lanczos_lowest(const SparseC& A, int k, LanczosOptions opt = {}) {
  const int n = int(A.rows());
  if (k < 1 || k > n) throw std::invalid_argument("lanczos: requested eigenpair count out of range");
  double sigma;
  if (opt.shift) {
    sigma = *opt.shift;
  } else {
    double lo = 1e300, hi = -1e300;
    for (int r = 0; r < A.outerSize(); ++r) {
      double d = 0, off = 0;
      for (SparseC::InnerIterator it(A, r); it; ++it) {
        if (it.col() == r) d = std::real(it.value());
        else off += std::abs(it.value());
      }
      lo = std::min(lo, d - off);
      hi = std::max(hi, d + off);
    }
    sigma = lo - 1e-3 * (hi - lo) - 1e-12;
  }
  Eigen::SparseMatrix<cplx> S = Eigen::SparseMatrix<cplx>(A);
  for (int i = 0; i < n; ++i) S.coeffRef(i, i) -= sigma;
  S.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(S);
  if (lu.info() != Eigen::Success) throw std::runtime_error("lanczos: shifted matrix is singular; choose another shift");

  SeededUniform u(opt.seed);
  Eigen::VectorXcd q(n);
  for (int i = 0; i < n; ++i) q[i] = cplx(u(-1, 1), u(-1, 1));
  q.normalize();
  const int m_max = std::min(n, opt.max_basis);
  Eigen::MatrixXcd Qb(n, m_max);
  std::vector<double> alpha, beta;
  EigenPairs best;
  for (int j = 0; j < m_max; ++j) {
    Qb.col(j) = q;
    Eigen::VectorXcd w = lu.solve(q);
    const double a = std::real(q.dot(w));
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) w -= Qb.leftCols(j + 1) * (Qb.leftCols(j + 1).adjoint() * w);
    const double b = w.norm();
    const int m = j + 1;
    if (m >= k && (m % 10 == 0 || b < 1e-14 || m == m_max)) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      // largest theta of (A - sigma)^{-1} <-> lowest lambda of A
      EigenPairs r;
      r.method = "lanczos";
      bool converged = true;
      for (int i = 0; i < k; ++i) {
        const int c = m - 1 - i;
        Eigen::VectorXcd v = Qb.leftCols(m) * es.eigenvectors().col(c).cast<cplx>();
        v.normalize();
        const Eigen::VectorXcd Av = A * v;
        const double lam = std::real(v.dot(Av));
        const double res = (Av - lam * v).norm();
        r.values.push_back(lam);
        r.vectors.push_back(v);
        r.residuals.push_back(res);
        if (res > opt.tol * std::max(1.0, std::abs(lam))) converged = false;
      }
      best = std::move(r);
      if (converged || b < 1e-14) break;
    }
    beta.push_back(b);
    if (b < 1e-14) break;
    q = w / b;
  }
  // sort ascending (Ritz values come out ordered, but keep the contract explicit)
  std::vector<int> idx(best.values.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return best.values[a] < best.values[b]; });
  EigenPairs sorted;
  sorted.method = best.method;
  for (int i : idx) {
    sorted.values.push_back(best.values[i]);
    sorted.vectors.push_back(best.vectors[i]);
    sorted.residuals.push_back(best.residuals[i]);
  }
  return sorted;
}

inline EigenPairs lowest_eigenpairs(const DiscreteOperator& op, int k, std::uint64_t seed = 1) {
  if (op.grid.size() <= kDenseLimit) return dense_lowest(op.A, k);
  LanczosOptions o;
  o.seed = seed;
  return lanczos_lowest(op.A, k, o);
}

}  // namespace spinplane
