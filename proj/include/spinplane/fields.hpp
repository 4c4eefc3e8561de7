#pragma once
// Maps R^2 -> R^N that can be evaluated on doubles and on Taylor jets.

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include "spinplane/jet.hpp"
#include "spinplane/spinor.hpp"

namespace spinplane {

template <int N>
class PlaneMap {
 public:
  using Value = std::array<double, N>;
  using JetValue = std::array<Jet2, N>;
  using ValueFn = std::function<Value(double, double)>;
  using JetFn = std::function<JetValue(const Jet2&, const Jet2&)>;

  PlaneMap() = default;
  PlaneMap(ValueFn v, JetFn j, Domain d = Domain::plane) : value_(std::move(v)), jet_(std::move(j)), domain_(d) {}

  // f is a generic callable (auto x1, auto x2) -> std::array<S, N>.
  template <class F>
  static PlaneMap from_generic(F f, Domain d = Domain::plane) {
    return PlaneMap([f](double a, double b) { return f(a, b); },
                    [f](const Jet2& a, const Jet2& b) { return f(a, b); }, d);
  }

  static PlaneMap zero() {
    return from_generic([](const auto& a, const auto&) {
      std::array<std::remove_cvref_t<decltype(a)>, N> r{};
      return r;
    });
  }

  bool has_jet() const { return bool(jet_); }
  explicit operator bool() const { return bool(value_); }
  Domain domain() const { return domain_; }

  Value operator()(double x1, double x2) const { return value_(x1, x2); }
  Value operator()(Point2 x) const { return value_(x.x1, x.x2); }
  JetValue operator()(const Jet2& x1, const Jet2& x2) const {
    if (!jet_) throw std::invalid_argument("field has no analytic derivatives");
    return jet_(x1, x2);
  }
  JetValue jet_at(Point2 x) const { return (*this)(Jet2::variable(x.x1, 0), Jet2::variable(x.x2, 1)); }

  // d_b F^n as jac[n][b]: analytic when available, else 4th-order central differences.
  std::array<std::array<double, 2>, N> jacobian(Point2 x, double h = 1e-4) const {
    std::array<std::array<double, 2>, N> J{};
    if (jet_) {
      const auto j = jet_at(x);
      for (int n = 0; n < N; ++n) {
        J[n][0] = j[n].coeff(1, 0);
        J[n][1] = j[n].coeff(0, 1);
      }
      return J;
    }
    for (int b = 0; b < 2; ++b) {
      auto at = [&](double t) { return b == 0 ? value_(x.x1 + t, x.x2) : value_(x.x1, x.x2 + t); };
      const Value p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
      for (int n = 0; n < N; ++n) J[n][b] = (8.0 * (p1[n] - m1[n]) - (p2[n] - m2[n])) / (12.0 * h);
    }
    return J;
  }

 private:
  ValueFn value_;
  JetFn jet_;
  Domain domain_ = Domain::plane;
};

using VectorField = PlaneMap<3>;  // (B1, B2, B3)
using OmegaField = PlaneMap<4>;   // (Omega0, Omega1, Omega2, Omega3)
using ScalarField = PlaneMap<1>;

inline Vec3 to_vec3(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

}  // namespace spinplane
