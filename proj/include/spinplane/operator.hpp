#pragma once
// First-order matrix differential operators
//     Q = sigma^mu ( Lambda^{mu a}(x) P_a + Omega^mu(x) ),   P_a = -i d_a,
// with Lambda^{mu a}(x) = C^mu eps^{ba} x_b + C^{mu a}.  With this normalization
// C^0 = 1 is the angular momentum L = x1 P2 - x2 P1 and C^{0a} = delta_{ab} is P_b.

#include <array>
#include <functional>
#include <string>

#include "spinplane/fields.hpp"
#include "spinplane/spinor.hpp"

namespace spinplane {

// A linear operator acting on spinor jets at a point (used for compositions).
using JetOperator = std::function<SpinorJet(const SpinorJet&, Point2)>;

inline SpinorJet jet_add(const SpinorJet& a, const SpinorJet& b) {
  return {a.v + b.v, std::min(a.valid, b.valid)};
}
inline SpinorJet jet_sub(const SpinorJet& a, const SpinorJet& b) {
  return {a.v - b.v, std::min(a.valid, b.valid)};
}
inline SpinorJet jet_scale(cplx s, const SpinorJet& a) { return {scale(s, a.v), a.valid}; }

// (d_a psi) for a = 0, 1; one derivative order is consumed.
inline SpinorJet jet_diff(const SpinorJet& psi, int a) {
  if (psi.valid < 1) throw std::invalid_argument("probe lacks the derivatives required by this operator");
  return {{{diff(psi.v[0], a), diff(psi.v[1], a)}}, psi.valid - 1};
}

inline Point2 jet_point_check(Point2 x) { return x; }

class FirstOrderOperator {
 public:
  std::string name;
  std::array<double, 4> C{};                 // C^mu
  std::array<std::array<double, 2>, 4> Ca{};  // C^{mu a}
  OmegaField omega = OmegaField::zero();

  FirstOrderOperator() = default;
  explicit FirstOrderOperator(std::string n) : name(std::move(n)) {}

  template <class S>
  S lambda(int mu, int a, const S& x1, const S& x2) const {
    return C[mu] * (a == 0 ? S(-x2) : S(x1)) + S(Ca[mu][a]);
  }

  // Lambda gradient d_b Lambda^{mu a}: constant, antisymmetric in (a, b).
  double lambda_grad(int mu, int a, int b) const {
    if (a == b) return 0.0;
    return a == 0 ? -C[mu] : C[mu];  // d_2 Lambda^{mu 1} = -C^mu, d_1 Lambda^{mu 2} = C^mu
  }

  SpinorJet apply(const SpinorJet& psi, Point2 x) const {
    const Jet2 X1 = Jet2::variable(x.x1, 0), X2 = Jet2::variable(x.x2, 1);
    const SpinorJet d0 = jet_diff(psi, 0), d1 = jet_diff(psi, 1);
    const auto Om = omega(X1, X2);
    const cplx mi(0, -1);
    SpinorJet out{{}, psi.valid - 1};
    for (int mu = 0; mu < 4; ++mu) {
      SpinorT<CJet2> t;
      const CJet2 l0 = to_complex(lambda(mu, 0, X1, X2)) * mi;
      const CJet2 l1 = to_complex(lambda(mu, 1, X1, X2)) * mi;
      const CJet2 om = to_complex(Om[mu]);
      for (int s = 0; s < 2; ++s) t[s] = l0 * d0.v[s] + l1 * d1.v[s] + om * psi.v[s];
      out.v += pauli(mu) * t;
    }
    return out;
  }

  // Pointwise action on a closed-form spinor (gradient analytic or FD).
  Spinor apply(const ClosedFormSpinorFn& psi, Point2 x) const {
    const Spinor v = psi(x);
    const auto g = psi.gradient(x);
    const auto Om = omega(x);
    const cplx mi(0, -1);
    Spinor out{};
    for (int mu = 0; mu < 4; ++mu) {
      Spinor t;
      for (int s = 0; s < 2; ++s)
        t[s] = mi * (lambda(mu, 0, x.x1, x.x2) * g[0][s] + lambda(mu, 1, x.x1, x.x2) * g[1][s]) + Om[mu] * v[s];
      out += pauli(mu) * t;
    }
    return out;
  }

  JetOperator as_jet_operator() const {
    auto self = *this;
    return [self](const SpinorJet& p, Point2 x) { return self.apply(p, x); };
  }

  // Value-level matrix coefficients at x: (Lambda^{mu a}), (Omega^mu).
  std::array<std::array<double, 2>, 4> lambda_at(Point2 x) const {
    std::array<std::array<double, 2>, 4> L{};
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 2; ++a) L[mu][a] = lambda(mu, a, x.x1, x.x2);
    return L;
  }
};

// alpha*A + beta*B + gamma (gamma added to Omega^0).
inline FirstOrderOperator combine(double alpha, const FirstOrderOperator& A, double beta,
                                  const FirstOrderOperator& B, double gamma = 0.0, std::string name = {}) {
  FirstOrderOperator r(name.empty() ? A.name + "+" + B.name : std::move(name));
  for (int mu = 0; mu < 4; ++mu) {
    r.C[mu] = alpha * A.C[mu] + beta * B.C[mu];
    for (int a = 0; a < 2; ++a) r.Ca[mu][a] = alpha * A.Ca[mu][a] + beta * B.Ca[mu][a];
  }
  const OmegaField oa = A.omega, ob = B.omega;
  r.omega = OmegaField(
      [=](double x1, double x2) {
        auto u = oa(x1, x2), v = ob(x1, x2);
        std::array<double, 4> w;
        for (int i = 0; i < 4; ++i) w[i] = alpha * u[i] + beta * v[i];
        w[0] += gamma;
        return w;
      },
      (oa.has_jet() && ob.has_jet())
          ? OmegaField::JetFn([=](const Jet2& x1, const Jet2& x2) {
              auto u = oa(x1, x2), v = ob(x1, x2);
              std::array<Jet2, 4> w;
              for (int i = 0; i < 4; ++i) w[i] = u[i] * alpha + v[i] * beta;
              w[0] = w[0] + gamma;
              return w;
            })
          : OmegaField::JetFn{});
  return r;
}

inline FirstOrderOperator scaled(double alpha, const FirstOrderOperator& A, double gamma = 0.0) {
  return combine(alpha, A, 0.0, FirstOrderOperator("0"), gamma, A.name);
}

namespace ops {

inline FirstOrderOperator momentum(int a) {
  FirstOrderOperator q(a == 0 ? "P1" : "P2");
  q.Ca[0][a] = 1.0;
  return q;
}
inline FirstOrderOperator angular() {
  FirstOrderOperator q("L");
  q.C[0] = 1.0;
  return q;
}
inline FirstOrderOperator constant_spin(int mu, double value, std::string name) {
  FirstOrderOperator q(std::move(name));
  q.omega = OmegaField::from_generic([mu, value](const auto& a, const auto&) {
    using S = std::remove_cvref_t<decltype(a)>;
    std::array<S, 4> r{};
    r[mu] = S(value);
    return r;
  });
  return q;
}
inline FirstOrderOperator sigma(int mu) { return constant_spin(mu, 1.0, "sigma" + std::to_string(mu)); }
inline FirstOrderOperator identity() { return constant_spin(0, 1.0, "1"); }

}  // namespace ops

// ---- second-order pieces used in compositions -----------------------------------

// -Laplacian on spinor jets.
inline SpinorJet neg_laplacian(const SpinorJet& psi) {
  const SpinorJet a = jet_diff(jet_diff(psi, 0), 0);
  const SpinorJet b = jet_diff(jet_diff(psi, 1), 1);
  return jet_scale(-1.0, jet_add(a, b));
}

// Multiplication by a matrix-valued function sum_mu M^mu(x) sigma^mu.
inline SpinorJet multiply_sigma(const std::array<Jet2, 4>& M, const SpinorJet& psi) {
  SpinorJet out{{}, psi.valid};
  for (int mu = 0; mu < 4; ++mu) {
    const CJet2 m = to_complex(M[mu]);
    SpinorT<CJet2> t{{m * psi.v[0], m * psi.v[1]}};
    out.v += pauli(mu) * t;
  }
  return out;
}

inline JetOperator compose(JetOperator A, JetOperator B) {
  return [A, B](const SpinorJet& p, Point2 x) { return A(B(p, x), x); };
}
inline JetOperator sum(JetOperator A, JetOperator B) {
  return [A, B](const SpinorJet& p, Point2 x) { return jet_add(A(p, x), B(p, x)); };
}
inline JetOperator difference(JetOperator A, JetOperator B) {
  return [A, B](const SpinorJet& p, Point2 x) { return jet_sub(A(p, x), B(p, x)); };
}
inline JetOperator times(cplx s, JetOperator A) {
  return [s, A](const SpinorJet& p, Point2 x) { return jet_scale(s, A(p, x)); };
}
inline JetOperator constant(cplx s) {
  return [s](const SpinorJet& p, Point2) { return jet_scale(s, p); };
}
inline JetOperator commutator(JetOperator A, JetOperator B) { return difference(compose(A, B), compose(B, A)); }

}  // namespace spinplane
