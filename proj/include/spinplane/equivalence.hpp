#pragma once
// Equivalence transformations preserving the form of H = -lap + sigma.B:
// shifts and rotations of the plane, simultaneous rotations of spin and field, and scalings.
// Each acts on fields (B) and on first-order operators (Lambda, Omega) consistently, so a
// symmetric pair stays symmetric.

#include <array>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "spinplane/fields.hpp"
#include "spinplane/operator.hpp"

namespace spinplane {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct Shift {
  double c1 = 0, c2 = 0;
};
struct PlaneRotation {
  double angle = 0;
};
struct SpinRotation {
  Mat3 R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
};
struct Scaling {
  double lambda = 1;
};

using EquivalenceTransform = std::variant<Shift, PlaneRotation, SpinRotation, Scaling>;

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline void validate(const EquivalenceTransform& t) {
  if (auto s = std::get_if<Scaling>(&t)) {
    if (s->lambda == 0 || !std::isfinite(s->lambda)) throw std::domain_error("scaling requires lambda != 0");
  }
  if (auto s = std::get_if<SpinRotation>(&t)) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double d = 0;
        for (int k = 0; k < 3; ++k) d += s->R[i][k] * s->R[j][k];
        if (std::abs(d - (i == j ? 1.0 : 0.0)) > 1e-12) throw std::domain_error("spin rotation matrix is not orthogonal");
      }
    // sigma^k -> R^{kn} sigma^n is a unitary conjugation only for proper rotations
    if (det3(s->R) < 0) throw std::domain_error("spin rotation matrix must have determinant +1");
  }
}

// Rotation taking the spin axis `from` onto `to` by a quarter turn (both in 1..3, distinct).
inline SpinRotation quarter_turn(int from, int to) {
  SpinRotation s;
  const int f = from - 1, t = to - 1, o = 3 - f - t;
  Mat3 R{};
  R[o][o] = 1;
  R[t][f] = 1;
  R[f][t] = -1;
  if (det3(R) < 0) {
    R[t][f] = -1;
    R[f][t] = 1;
  }
  s.R = R;
  return s;
}

namespace detail {

// x_old as a function of x_new for the coordinate part of a transform.
template <class S>
std::array<S, 2> pullback(const EquivalenceTransform& t, const S& x1, const S& x2) {
  if (auto s = std::get_if<Shift>(&t)) return {x1 - s->c1, x2 - s->c2};
  if (auto r = std::get_if<PlaneRotation>(&t)) {
    const double c = std::cos(r->angle), s = std::sin(r->angle);
    return {c * x1 + s * x2, -s * x1 + c * x2};
  }
  if (auto l = std::get_if<Scaling>(&t)) return {x1 / l->lambda, x2 / l->lambda};
  return {x1, x2};
}

template <int N, class S>
std::array<S, N> transform_values(const EquivalenceTransform& t, std::array<S, N> v, int spin_offset) {
  if (auto s = std::get_if<SpinRotation>(&t)) {
    std::array<S, N> w = v;
    for (int k = 0; k < 3; ++k) {
      w[spin_offset + k] = S(0.0);
      for (int n = 0; n < 3; ++n) w[spin_offset + k] = w[spin_offset + k] + s->R[k][n] * v[spin_offset + n];
    }
    return w;
  }
  return v;
}

}  // namespace detail

// B'(x) with the transformed Hamiltonian H' = -lap + sigma.B' (up to an overall 1/lambda^2).
inline VectorField apply_equivalence(const EquivalenceTransform& t, const VectorField& B) {
  validate(t);
  const double amp = std::holds_alternative<Scaling>(t) ? 1.0 / std::pow(std::get<Scaling>(t).lambda, 2) : 1.0;
  auto value = [t, B, amp](double x1, double x2) {
    auto p = detail::pullback(t, x1, x2);
    auto v = detail::transform_values<3>(t, B(p[0], p[1]), 0);
    for (auto& c : v) c *= amp;
    return v;
  };
  VectorField::JetFn jet;
  if (B.has_jet())
    jet = [t, B, amp](const Jet2& x1, const Jet2& x2) {
      auto p = detail::pullback(t, x1, x2);
      auto v = detail::transform_values<3>(t, B(p[0], p[1]), 0);
      for (auto& c : v) c = c * amp;
      return v;
    };
  // domains other than the full plane are not invariant under shifts; keep the tag
  return VectorField(value, jet, B.domain());
}

inline FirstOrderOperator apply_equivalence(const EquivalenceTransform& t, const FirstOrderOperator& Q) {
  validate(t);
  FirstOrderOperator r = Q;
  if (auto s = std::get_if<Shift>(&t)) {
    // Lambda'(x) = Lambda(x - c):  C'^{mu a} = C^{mu a} - C^mu eps^{ba} c_b
    for (int mu = 0; mu < 4; ++mu) {
      r.Ca[mu][0] += Q.C[mu] * s->c2;
      r.Ca[mu][1] -= Q.C[mu] * s->c1;
    }
  } else if (auto p = std::get_if<PlaneRotation>(&t)) {
    const double c = std::cos(p->angle), sn = std::sin(p->angle);
    for (int mu = 0; mu < 4; ++mu) {
      r.Ca[mu][0] = c * Q.Ca[mu][0] - sn * Q.Ca[mu][1];
      r.Ca[mu][1] = sn * Q.Ca[mu][0] + c * Q.Ca[mu][1];
    }
  } else if (auto sr = std::get_if<SpinRotation>(&t)) {
    for (int k = 0; k < 3; ++k) {
      r.C[k + 1] = 0;
      r.Ca[k + 1] = {0, 0};
      for (int n = 0; n < 3; ++n) {
        r.C[k + 1] += sr->R[k][n] * Q.C[n + 1];
        for (int a = 0; a < 2; ++a) r.Ca[k + 1][a] += sr->R[k][n] * Q.Ca[n + 1][a];
      }
    }
  } else if (auto l = std::get_if<Scaling>(&t)) {
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 2; ++a) r.Ca[mu][a] *= l->lambda;
  }
  const OmegaField om = Q.omega;
  OmegaField::JetFn jet;
  if (om.has_jet())
    jet = [t, om](const Jet2& x1, const Jet2& x2) {
      auto p = detail::pullback(t, x1, x2);
      return detail::transform_values<4>(t, om(p[0], p[1]), 1);
    };
  r.omega = OmegaField(
      [t, om](double x1, double x2) {
        auto p = detail::pullback(t, x1, x2);
        return detail::transform_values<4>(t, om(p[0], p[1]), 1);
      },
      jet, om.domain());
  return r;
}

// Image of a point under the coordinate part of the transform.
inline Point2 push_point(const EquivalenceTransform& t, Point2 x) {
  if (auto s = std::get_if<Shift>(&t)) return {x.x1 + s->c1, x.x2 + s->c2};
  if (auto r = std::get_if<PlaneRotation>(&t)) {
    const double c = std::cos(r->angle), s = std::sin(r->angle);
    return {c * x.x1 - s * x.x2, s * x.x1 + c * x.x2};
  }
  if (auto l = std::get_if<Scaling>(&t)) return {x.x1 * l->lambda, x.x2 * l->lambda};
  return x;
}

}  // namespace spinplane
