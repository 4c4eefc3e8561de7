#pragma once
// Pauli algebra, spinors and closed-form spinor functions.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "spinplane/jet.hpp"

namespace spinplane {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

struct Point2 {
  double x1 = 0, x2 = 0;
};

// Levi-Civita symbol on {0,1,2} (i.e. indices 1..3 shifted), eps_{012} = +1.
inline int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

class Mat2 {
 public:
  std::array<cplx, 4> m{};  // row-major

  Mat2() = default;
  Mat2(cplx a, cplx b, cplx c, cplx d) : m{a, b, c, d} {}

  cplx operator()(int r, int c) const { return m[2 * r + c]; }
  cplx& operator()(int r, int c) { return m[2 * r + c]; }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }

  Mat2 adjoint() const { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }
  cplx trace() const { return m[0] + m[3]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
  double max_abs() const {
    double r = 0;
    for (auto& x : m) r = std::max(r, std::abs(x));
    return r;
  }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]};
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
            a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]};
  }
  friend Mat2 operator*(cplx s, const Mat2& a) { return {s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}; }
  friend Mat2 operator*(const Mat2& a, cplx s) { return s * a; }
};

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }
inline Mat2 anticommutator(const Mat2& a, const Mat2& b) { return a * b + b * a; }

inline Mat2 pauli(int mu) {
  const cplx I(0, 1);
  switch (mu) {
    case 0: return {1.0, 0.0, 0.0, 1.0};
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -I, I, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw std::domain_error("pauli: index must be 0..3, got " + std::to_string(mu));
  }
}

inline Mat2 sigma_dot(const Vec3& v) {
  const cplx I(0, 1);
  return {v.z, v.x - I * v.y, v.x + I * v.y, -v.z};
}

// Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& a) {
  const double t = 0.5 * std::real(a.trace());
  const double d = 0.5 * std::real(a.m[0] - a.m[3]);
  const double r = std::sqrt(d * d + std::norm(a.m[1]));
  return {t - r, t + r};
}

// ---- spinors ----------------------------------------------------------------

template <class T>
struct SpinorT {
  std::array<T, 2> c{};
  T& operator[](int i) { return c[i]; }
  const T& operator[](int i) const { return c[i]; }

  friend SpinorT operator+(const SpinorT& a, const SpinorT& b) { return {{a.c[0] + b.c[0], a.c[1] + b.c[1]}}; }
  friend SpinorT operator-(const SpinorT& a, const SpinorT& b) { return {{a.c[0] - b.c[0], a.c[1] - b.c[1]}}; }
  SpinorT& operator+=(const SpinorT& b) {
    c[0] += b.c[0];
    c[1] += b.c[1];
    return *this;
  }
  SpinorT& operator-=(const SpinorT& b) {
    c[0] -= b.c[0];
    c[1] -= b.c[1];
    return *this;
  }
};

template <class T, class S>
SpinorT<T> scale(const S& s, const SpinorT<T>& v) {
  return {{T(s * v.c[0]), T(s * v.c[1])}};
}

template <class T>
SpinorT<T> operator*(const Mat2& a, const SpinorT<T>& v) {
  return {{a.m[0] * v.c[0] + a.m[1] * v.c[1], a.m[2] * v.c[0] + a.m[3] * v.c[1]}};
}

using Spinor = SpinorT<cplx>;

inline double norm2(const Spinor& s) { return std::norm(s.c[0]) + std::norm(s.c[1]); }
inline double norm(const Spinor& s) { return std::sqrt(norm2(s)); }

template <class T>
Spinor value_of(const SpinorT<T>& s) {
  return {{cplx(value_of(s.c[0])), cplx(value_of(s.c[1]))}};
}

// A spinor field in the plane with derivative information: components are complex
// jets about the evaluation point; `valid` counts how many derivative orders are exact.
struct SpinorJet {
  SpinorT<CJet2> v;
  int valid = kPlaneOrder;
};

enum class Domain { plane, upper_half_plane, punctured_plane };

inline const char* to_string(Domain d) {
  switch (d) {
    case Domain::plane: return "plane";
    case Domain::upper_half_plane: return "half-plane y>=0";
    case Domain::punctured_plane: return "punctured plane r>0";
  }
  return "?";
}

inline bool in_domain(Domain d, Point2 x) {
  switch (d) {
    case Domain::plane: return true;
    case Domain::upper_half_plane: return x.x2 >= 0;
    case Domain::punctured_plane: return x.x1 * x.x1 + x.x2 * x.x2 > 0;
  }
  return false;
}

// Closed-form spinor function.  `value` is always present; `jet`, when present, returns
// exact Taylor data at a point and supplies every analytic derivative.
class ClosedFormSpinorFn {
 public:
  using ValueFn = std::function<Spinor(double, double)>;
  using JetFn = std::function<SpinorT<CJet2>(const Jet2&, const Jet2&)>;
  using GradFn = std::function<std::array<Spinor, 2>(double, double)>;

  ClosedFormSpinorFn() = default;
  ClosedFormSpinorFn(ValueFn v, JetFn j, Domain d = Domain::plane)
      : value_(std::move(v)), jet_(std::move(j)), domain_(d) {}

  // Build both evaluators from one generic callable f(x1, x2) -> SpinorT<complex scalar>.
  template <class F>
  static ClosedFormSpinorFn from_generic(F f, Domain d = Domain::plane) {
    ValueFn v = [f](double a, double b) { return to_spinor(f(a, b)); };
    JetFn j = [f](const Jet2& a, const Jet2& b) { return to_cjet(f(a, b)); };
    return ClosedFormSpinorFn(std::move(v), std::move(j), d);
  }

  static ClosedFormSpinorFn from_value(ValueFn v, Domain d = Domain::plane, GradFn g = {}) {
    ClosedFormSpinorFn r(std::move(v), {}, d);
    r.grad_ = std::move(g);
    return r;
  }

  Spinor operator()(double x1, double x2) const {
    if (!in_domain(domain_, {x1, x2})) throw std::domain_error("spinor function evaluated outside its domain");
    return value_(x1, x2);
  }
  Spinor operator()(Point2 x) const { return (*this)(x.x1, x.x2); }

  bool has_jet() const { return bool(jet_); }
  bool has_gradient() const { return bool(jet_) || bool(grad_); }
  Domain domain() const { return domain_; }

  SpinorJet jet(Point2 x) const {
    if (!jet_) throw std::invalid_argument("spinor function has no analytic derivatives");
    if (!in_domain(domain_, x)) throw std::domain_error("spinor function evaluated outside its domain");
    return {jet_(Jet2::variable(x.x1, 0), Jet2::variable(x.x2, 1)), kPlaneOrder};
  }

  // (d1 psi, d2 psi): analytic when available, else 4th-order central differences.
  std::array<Spinor, 2> gradient(Point2 x, double h = 1e-4) const {
    if (jet_) {
      auto j = jet(x);
      std::array<Spinor, 2> g;
      for (int a = 0; a < 2; ++a)
        for (int s = 0; s < 2; ++s) g[a][s] = a == 0 ? j.v[s].coeff(1, 0) : j.v[s].coeff(0, 1);
      return g;
    }
    if (grad_) return grad_(x.x1, x.x2);
    return fd_gradient(x, h);
  }

  std::array<Spinor, 2> fd_gradient(Point2 x, double h = 1e-4) const {
    std::array<Spinor, 2> g;
    for (int a = 0; a < 2; ++a) {
      auto at = [&](double t) {
        return a == 0 ? (*this)(x.x1 + t, x.x2) : (*this)(x.x1, x.x2 + t);
      };
      const Spinor p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
      for (int s = 0; s < 2; ++s) g[a][s] = (8.0 * (p1[s] - m1[s]) - (p2[s] - m2[s])) / (12.0 * h);
    }
    return g;
  }

 private:
  template <class T>
  static Spinor to_spinor(const SpinorT<T>& s) {
    return {{cplx(s.c[0]), cplx(s.c[1])}};
  }
  template <class T>
  static SpinorT<CJet2> to_cjet(const SpinorT<T>& s) {
    return {{to_complex(s.c[0]), to_complex(s.c[1])}};
  }

  ValueFn value_;
  JetFn jet_;
  GradFn grad_;
  Domain domain_ = Domain::plane;
};

}  // namespace spinplane
