#pragma once
// Seeded analytic probe spinors: polynomial (degree <= 3) x Gaussian x plane wave in each
// component, with a random spin mixing.  Every probe carries exact jets.

#include <array>
#include <cstdint>
#include <vector>

#include "spinplane/determining.hpp"
#include "spinplane/spinor.hpp"

namespace spinplane {

struct ProbeSpec {
  std::array<double, 10> poly{};  // coefficients of 1, x1, x2, x1^2, x1x2, x2^2, x1^3, x1^2x2, x1x2^2, x2^3
  double width = 1.0;             // Gaussian exp(-|x - c|^2 / (2 width^2))
  Point2 center{};
  std::array<double, 2> k{};      // plane wave e^{i k.x}
  std::array<cplx, 2> spin{};     // spin mixing
};

inline ClosedFormSpinorFn make_probe(const ProbeSpec& p, Domain d = Domain::plane) {
  return ClosedFormSpinorFn::from_generic(
      [p](const auto& x1, const auto& x2) {
        using S = std::remove_cvref_t<decltype(x1)>;
        using C = complex_of_t<S>;
        using std::cos;
        using std::exp;
        using std::sin;
        const auto& a = p.poly;
        const S poly = a[0] + a[1] * x1 + a[2] * x2 + a[3] * x1 * x1 + a[4] * x1 * x2 + a[5] * x2 * x2 +
                       a[6] * x1 * x1 * x1 + a[7] * x1 * x1 * x2 + a[8] * x1 * x2 * x2 + a[9] * x2 * x2 * x2;
        const S dx = x1 - p.center.x1, dy = x2 - p.center.x2;
        const S env = poly * exp(-(dx * dx + dy * dy) / (2 * p.width * p.width));
        const S ph = p.k[0] * x1 + p.k[1] * x2;
        const C wave = to_complex(env * cos(ph)) + cplx(0, 1) * to_complex(env * sin(ph));
        return SpinorT<C>{{wave * p.spin[0], wave * p.spin[1]}};
      },
      d);
}

inline std::vector<ClosedFormSpinorFn> seeded_probes(int count, std::uint64_t seed, Domain d = Domain::plane) {
  SeededUniform u(seed);
  std::vector<ClosedFormSpinorFn> out;
  for (int i = 0; i < count; ++i) {
    ProbeSpec p;
    for (auto& c : p.poly) c = u(-1, 1);
    p.width = u(0.8, 1.6);
    p.center = {u(-0.5, 0.5), u(-0.5, 0.5)};
    p.k = {u(-1.5, 1.5), u(-1.5, 1.5)};
    p.spin = {cplx(u(-1, 1), u(-1, 1)), cplx(u(-1, 1), u(-1, 1))};
    out.push_back(make_probe(p, d));
  }
  return out;
}

inline double norm(const SpinorJet& j) { return norm(value_of(j.v)); }

}  // namespace spinplane
