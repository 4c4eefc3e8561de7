#pragma once
// External fields admitting first-order integrals of motion, and their symmetry operators.
//
// Entries T1.1..T1.8 carry Lie symmetries, T2.1..T2.4 higher (matrix) symmetries.
// Each entry is available in two variants:
//   adopted  - sign conventions under which every listed operator commutes with H,
//   printed  - the formulas exactly as tabulated, kept for discrepancy reports.
// The two differ only for T1.1 (field), T2.1 (field and Q3) and T2.2 (Q4).

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinplane/equivalence.hpp"
#include "spinplane/fields.hpp"
#include "spinplane/jet.hpp"
#include "spinplane/operator.hpp"

namespace spinplane {

enum class FamilyId { T1_1, T1_2, T1_3, T1_4, T1_5, T1_6, T1_7, T1_8, T2_1, T2_2, T2_3, T2_4 };
enum class Variant { adopted, printed };

inline const std::array<FamilyId, 12>& all_families() {
  static const std::array<FamilyId, 12> ids{FamilyId::T1_1, FamilyId::T1_2, FamilyId::T1_3, FamilyId::T1_4,
                                            FamilyId::T1_5, FamilyId::T1_6, FamilyId::T1_7, FamilyId::T1_8,
                                            FamilyId::T2_1, FamilyId::T2_2, FamilyId::T2_3, FamilyId::T2_4};
  return ids;
}

inline std::string to_string(FamilyId id) {
  static const char* names[] = {"T1.1", "T1.2", "T1.3", "T1.4", "T1.5", "T1.6",
                                "T1.7", "T1.8", "T2.1", "T2.2", "T2.3", "T2.4"};
  return names[static_cast<int>(id)];
}

inline FamilyId family_from_string(const std::string& s) {
  for (auto id : all_families())
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown family id '" + s + "' (expected T1.1..T1.8 or T2.1..T2.4)");
}

// Smooth scalar function of the plane, used for the fully arbitrary B3 = f(x) of T1.6.
using PlaneProfile = std::function<Jet2(const Jet2&, const Jet2&)>;

namespace profiles {

// Gaussian-damped polynomials: generic, nonsymmetric, bounded on the sampling annulus.
inline Profile f1() {
  return [](const Jet1& t) { return (1.0 + 0.5 * t - 0.3 * t * t) * exp(-0.25 * t * t); };
}
inline Profile f2() {
  return [](const Jet1& t) { return (0.7 - 0.4 * t + 0.2 * t * t * t) * exp(-0.2 * t * t); };
}
inline Profile f3() {
  return [](const Jet1& t) { return 0.8 + 0.3 * sin(1.3 * t) * exp(-t * t / 6.0); };
}
inline Profile f() {
  return [](const Jet1& t) { return 1.0 / (1.0 + t * t) + 0.2 * t; };
}
inline Profile V() {
  return [](const Jet1& t) { return 0.5 * t * t * exp(-t / 3.0); };
}
inline PlaneProfile f_plane() {
  return [](const Jet2& x1, const Jet2& x2) {
    return (1.0 + x1 * x2 - 0.3 * x1 * x1) * exp(-(x1 * x1 + 0.5 * x2 * x2) / 4.0);
  };
}

}  // namespace profiles

struct FieldParams {
  double mu = 1.0, nu = 0.5, omega = 0.0, alpha = 0.0, lambda = 1.0, kappa = 1.0;
  double k = 1.0;    // angular winding (must be an integer where the entry is angular)
  int delta = 1;     // 0 or 1
  double c = 1.0;    // constant of the algebraic profile equation
  int branch = +1;   // root of the profile equation
  Profile f1 = profiles::f1(), f2 = profiles::f2(), f3 = profiles::f3(), f = profiles::f();
  Profile V = profiles::V();
  PlaneProfile f_plane = profiles::f_plane();
};

// Parameter sets used by the certification suites (every sampled point interior to the domain).
inline FieldParams default_params(FamilyId id) {
  FieldParams p;
  switch (id) {
    case FamilyId::T1_1: p.k = 2; break;
    case FamilyId::T1_2: p.k = 2; p.mu = 1.3; break;
    case FamilyId::T1_3: p.mu = 0.9; break;
    case FamilyId::T1_4: p.delta = 1; break;
    case FamilyId::T1_5: p.mu = 1.2; break;
    case FamilyId::T2_1: p.mu = 1.0; p.nu = 0.5; break;
    case FamilyId::T2_2: p.k = 1; p.mu = 1.0; p.nu = 0.7; break;
    case FamilyId::T2_3: p.mu = 0.5; p.nu = 2.0; break;
    case FamilyId::T2_4: p.mu = 0.8; p.nu = 0.6; p.c = 1.5; p.branch = +1; break;
    default: break;
  }
  return p;
}

inline bool is_integer(double v) { return std::isfinite(v) && std::abs(v - std::round(v)) < 1e-12; }

// Root of (mu^2 r^2 + 1) phi^2 + 2 nu phi = c.  branch=+1 selects (-nu + sqrt(D))/A.
template <class S>
S solve_phi(const S& r, double mu, double nu, double c, int branch) {
  using std::sqrt;
  const S A = mu * mu * r * r + 1.0;
  const S D = nu * nu + c * A;
  if (value_of(D) < 0)
    throw std::domain_error("profile equation has no real root: discriminant nu^2 + c(mu^2 r^2 + 1) < 0");
  const S sq = sqrt(D);
  // cancellation-free forms of (-nu +- sqrt(D))/A
  if (branch >= 0) return nu > 0 ? S(c / (nu + sq)) : S((sq - nu) / A);
  return nu < 0 ? S(c / (nu - sq)) : S((-nu - sq) / A);
}

inline double profile_equation_residual(double r, double mu, double nu, double c, double phi) {
  return (mu * mu * r * r + 1.0) * phi * phi + 2.0 * nu * phi - c;
}

enum class OperatorId { Q1, Q2, Q3, Q4, Q5, Q6, Q1t, Q2t, P1, P2, L, sigma3 };

inline std::string to_string(OperatorId id) {
  static const char* n[] = {"Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q1~", "Q2~", "P1", "P2", "L", "sigma3"};
  return n[static_cast<int>(id)];
}

struct SymmetryDescriptor {
  OperatorId id;
  FirstOrderOperator op;
  std::string formula;
};

class FieldFamily {
 public:
  FieldFamily(FamilyId id, FieldParams p = {}, Variant v = Variant::adopted) : id_(id), p_(std::move(p)), variant_(v) {
    validate();
  }

  FamilyId id() const { return id_; }
  const FieldParams& params() const { return p_; }
  Variant variant() const { return variant_; }
  std::string name() const { return to_string(id_) + (variant_ == Variant::printed ? " (printed)" : ""); }

  bool decoupled() const { return id_ == FamilyId::T1_6 || id_ == FamilyId::T1_7 || id_ == FamilyId::T1_8; }

  Domain domain() const {
    switch (id_) {
      case FamilyId::T1_1: case FamilyId::T1_2: case FamilyId::T1_3: case FamilyId::T1_8:
      case FamilyId::T2_2: case FamilyId::T2_4:
        return Domain::punctured_plane;
      default:
        return Domain::plane;
    }
  }

  // Interior check: excludes the origin for radial entries and |mu| r >= |nu| for T2.3.
  bool in_domain(Point2 x) const {
    const double r = std::hypot(x.x1, x.x2);
    switch (id_) {
      case FamilyId::T2_2: return r >= 1e-6;
      case FamilyId::T2_3: return p_.mu * p_.mu * r * r < p_.nu * p_.nu;
      case FamilyId::T2_4: return r > 0 && p_.nu * p_.nu + p_.c * (p_.mu * p_.mu * r * r + 1) > 0;
      default: return domain() == Domain::plane || r > 0;
    }
  }

  template <class S>
  std::array<S, 3> eval(const S& x1, const S& x2) const {
    using std::atan2;
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    using std::sqrt;
    const FieldParams& p = p_;
    auto r_of = [&] { return S(sqrt(x1 * x1 + x2 * x2)); };
    auto th_of = [&] { return S(atan2(x2, x1)); };
    switch (id_) {
      case FamilyId::T1_1: {
        const S r = r_of(), th = th_of(), ck = cos(p.k * th), sk = sin(p.k * th);
        const S F1 = eval_profile(p.f1, r), F2 = eval_profile(p.f2, r);
        if (variant_ == Variant::printed) return {ck * F1 + sk * F2, ck * F2 - sk * F1, eval_profile(p.f3, r)};
        return {ck * F1 - sk * F2, ck * F2 + sk * F1, eval_profile(p.f3, r)};
      }
      case FamilyId::T1_2: {
        const S r = r_of(), th = th_of(), rk = pow(r, -p.k);
        return {p.mu * cos(p.k * th) * rk, p.mu * sin(p.k * th) * rk, eval_profile(p.f3, r)};
      }
      case FamilyId::T1_3: {
        const S r = r_of(), F1 = eval_profile(p.f1, r);
        // cos(theta) = x1/r, sin(theta) = x2/r
        return {p.mu * (x1 / r) * F1, p.mu * (x2 / r) * F1, eval_profile(p.f2, r)};
      }
      case FamilyId::T1_4: {
        const S cd = cos(double(p.delta) * x1), sd = sin(double(p.delta) * x1);
        const S F1 = eval_profile(p.f1, x2), F2 = eval_profile(p.f2, x2);
        return {cd * F1 + sd * F2, cd * F2 - sd * F1, eval_profile(p.f3, x2)};
      }
      case FamilyId::T1_5: {
        const S e = exp(-x2);
        return {p.mu * e * cos(x1), -p.mu * e * sin(x1), eval_profile(p.f3, x2)};
      }
      case FamilyId::T1_6: {
        if constexpr (std::is_same_v<S, double>) {
          return {0.0, 0.0, p.f_plane(Jet2(x1), Jet2(x2)).value()};
        } else {
          return {S(0.0), S(0.0), S(p.f_plane(x1, x2))};
        }
      }
      case FamilyId::T1_7:
        return {S(0.0), S(0.0), eval_profile(p.f, x1)};
      case FamilyId::T1_8:
        return {S(0.0), S(0.0), eval_profile(p.f, r_of())};
      case FamilyId::T2_1: {
        const double s2 = variant_ == Variant::printed ? 1.0 : -1.0;
        return {p.mu * cos(x1), s2 * p.mu * sin(x1), S(p.nu)};
      }
      case FamilyId::T2_2: {
        const S r2 = x1 * x1 + x2 * x2, th = th_of();
        return {p.mu * p.k * sin(p.k * th) / r2, -p.mu * p.k * cos(p.k * th) / r2, p.k * p.nu / r2};
      }
      case FamilyId::T2_3: {
        const S w = sqrt(p.nu * p.nu - p.mu * p.mu * (x1 * x1 + x2 * x2));
        return {p.mu * p.mu * x2 / (2.0 * w), -p.mu * p.mu * x1 / (2.0 * w), S(p.mu / 2.0)};
      }
      case FamilyId::T2_4: {
        const S r = r_of();
        const S phi = solve_phi(r, p.mu, p.nu, p.c, p.branch);
        const S A = p.mu * p.mu * r * r + 1.0;
        // phi'(r)/r from implicit differentiation of the profile equation (regular at r=0)
        const S dphi_over_r = -(p.mu * p.mu) * phi * phi / (A * phi + p.nu);
        const S d_rphi = phi + r * r * dphi_over_r;
        return {x2 * dphi_over_r, -x1 * dphi_over_r, -p.mu * d_rphi};
      }
    }
    throw std::logic_error("unreachable");
  }

  Vec3 operator()(Point2 x) const {
    if (!in_domain(x)) throw std::domain_error(to_string(id_) + ": point outside the field domain");
    auto v = eval(x.x1, x.x2);
    return {v[0], v[1], v[2]};
  }

  VectorField field() const {
    const FieldFamily self = *this;
    return VectorField::from_generic([self](const auto& a, const auto& b) { return self.eval(a, b); }, domain());
  }

  std::vector<SymmetryDescriptor> symmetry_operators() const;

 private:
  void validate() const {
    switch (id_) {
      case FamilyId::T1_1: case FamilyId::T1_2: case FamilyId::T2_2:
        if (!is_integer(p_.k))
          throw std::invalid_argument(to_string(id_) + ": parameter k must be an integer (single-valued field), got " +
                                      std::to_string(p_.k));
        break;
      case FamilyId::T1_4:
        if (p_.delta != 0 && p_.delta != 1) throw std::invalid_argument("T1.4: delta must be 0 or 1");
        break;
      case FamilyId::T2_3:
        if (p_.nu == 0) throw std::invalid_argument("T2.3: nu must be nonzero (domain |mu| r < |nu|)");
        break;
      default:
        break;
    }
  }

  FamilyId id_;
  FieldParams p_;
  Variant variant_;
};

namespace detail {

inline FirstOrderOperator angular_spin(double half_k, const std::string& name) {
  FirstOrderOperator q = ops::angular();
  q.name = name;
  q.omega = ops::constant_spin(3, half_k, name).omega;
  return q;
}
inline FirstOrderOperator translation_spin(double half, const std::string& name) {
  FirstOrderOperator q = ops::momentum(0);
  q.name = name;
  q.omega = ops::constant_spin(3, -half, name).omega;
  return q;
}

}  // namespace detail

inline std::vector<SymmetryDescriptor> FieldFamily::symmetry_operators() const {
  const FieldParams p = p_;
  std::vector<SymmetryDescriptor> out;
  auto add = [&](OperatorId id, FirstOrderOperator q, std::string formula) {
    q.name = to_string(id);
    out.push_back({id, std::move(q), std::move(formula)});
  };
  switch (id_) {
    case FamilyId::T1_1:
    case FamilyId::T1_2:
      add(OperatorId::Q1t, detail::angular_spin(p.k / 2, "Q1~"), "L + (k/2) sigma3");
      break;
    case FamilyId::T1_3:
      add(OperatorId::Q1, detail::angular_spin(0.5, "Q1"), "L + sigma3/2");
      break;
    case FamilyId::T1_4:
      add(OperatorId::Q2t, detail::translation_spin(p.delta / 2.0, "Q2~"), "P1 - (delta/2) sigma3");
      break;
    case FamilyId::T1_5:
      add(OperatorId::Q2, detail::translation_spin(0.5, "Q2"), "P1 - sigma3/2");
      break;
    case FamilyId::T1_6:
      add(OperatorId::sigma3, ops::sigma(3), "sigma3");
      break;
    case FamilyId::T1_7:
      add(OperatorId::P2, ops::momentum(1), "P2");
      add(OperatorId::sigma3, ops::sigma(3), "sigma3");
      break;
    case FamilyId::T1_8:
      add(OperatorId::L, ops::angular(), "L");
      add(OperatorId::sigma3, ops::sigma(3), "sigma3");
      break;
    case FamilyId::T2_1: {
      add(OperatorId::Q2, detail::translation_spin(0.5, "Q2"), "P1 - sigma3/2");
      add(OperatorId::P2, ops::momentum(1), "P2");
      FirstOrderOperator q3;
      q3.Ca[3][0] = 1.0;  // sigma3 P1
      if (variant_ == Variant::printed) {
        q3.omega = OmegaField::from_generic([p](const auto& x1, const auto&) {
          using S = std::remove_cvref_t<decltype(x1)>;
          using std::cos;
          using std::sin;
          return std::array<S, 4>{S(0.0), -p.mu * cos(x1), -p.mu * sin(x1), S(-p.nu)};
        });
        add(OperatorId::Q3, q3, "sigma3 (P1 - nu) - mu (sigma1 cos x1 + sigma2 sin x1)");
      } else {
        q3.omega = OmegaField::from_generic([p](const auto& x1, const auto&) {
          using S = std::remove_cvref_t<decltype(x1)>;
          using std::cos;
          using std::sin;
          return std::array<S, 4>{S(0.0), p.mu * cos(x1), -p.mu * sin(x1), S(p.nu)};
        });
        add(OperatorId::Q3, q3, "sigma3 (P1 + nu) + mu (sigma1 cos x1 - sigma2 sin x1)");
      }
      break;
    }
    case FamilyId::T2_2: {
      add(OperatorId::Q1t, detail::angular_spin(p.k / 2, "Q1~"), "L + (k/2) sigma3");
      // sigma3 (Q1~ -+ nu) - mu (sigma1 sin k theta - sigma2 cos k theta)
      FirstOrderOperator q4;
      q4.C[3] = 1.0;  // sigma3 L
      const double s = variant_ == Variant::printed ? 1.0 : -1.0;
      q4.omega = OmegaField::from_generic(
          [p, s](const auto& x1, const auto& x2) {
            using S = std::remove_cvref_t<decltype(x1)>;
            using std::atan2;
            using std::cos;
            using std::sin;
            const S th = atan2(x2, x1);
            return std::array<S, 4>{S(p.k / 2), -p.mu * sin(p.k * th), p.mu * cos(p.k * th), S(s * p.nu)};
          },
          Domain::punctured_plane);
      add(OperatorId::Q4, q4,
          variant_ == Variant::printed ? "sigma3 (Q1~ + nu) - mu (sigma1 sin k theta - sigma2 cos k theta)"
                                       : "sigma3 (Q1~ - nu) - mu (sigma1 sin k theta - sigma2 cos k theta)");
      break;
    }
    case FamilyId::T2_3: {
      add(OperatorId::Q1, detail::angular_spin(0.5, "Q1"), "L + sigma3/2");
      FirstOrderOperator q5;
      q5.Ca[1][0] = 1.0;  // sigma1 P1
      q5.Ca[2][1] = 1.0;  // sigma2 P2
      q5.omega = OmegaField::from_generic([p](const auto& x1, const auto& x2) {
        using S = std::remove_cvref_t<decltype(x1)>;
        using std::sqrt;
        const S w = sqrt(p.nu * p.nu - p.mu * p.mu * (x1 * x1 + x2 * x2));
        return std::array<S, 4>{S(0.0), -0.5 * p.mu * x2, 0.5 * p.mu * x1, -0.5 * w};
      });
      add(OperatorId::Q5, q5, "sigma1 P1 + sigma2 P2 - (mu/2)(sigma1 x2 - sigma2 x1) - (1/2) sigma3 sqrt(nu^2 - mu^2 r^2)");
      break;
    }
    case FamilyId::T2_4: {
      add(OperatorId::Q1, detail::angular_spin(0.5, "Q1"), "L + sigma3/2");
      FirstOrderOperator q6;
      q6.Ca[1][0] = 1.0;
      q6.Ca[2][1] = 1.0;
      q6.C[3] = p.mu;  // mu sigma3 L
      q6.omega = OmegaField::from_generic(
          [p](const auto& x1, const auto& x2) {
            using S = std::remove_cvref_t<decltype(x1)>;
            using std::sqrt;
            const S phi = solve_phi(S(sqrt(x1 * x1 + x2 * x2)), p.mu, p.nu, p.c, p.branch);
            return std::array<S, 4>{S(p.mu / 2), p.mu * x2 * phi, -p.mu * x1 * phi, phi + p.nu};
          },
          Domain::punctured_plane);
      add(OperatorId::Q6, q6, "sigma1 P1 + sigma2 P2 + mu (sigma3 Q1 + sigma1 x2 phi - sigma2 x1 phi) + sigma3 (phi + nu)");
      break;
    }
  }
  return out;
}

inline std::optional<SymmetryDescriptor> find_operator(const FieldFamily& fam, OperatorId id) {
  for (auto& d : fam.symmetry_operators())
    if (d.id == id) return d;
  return std::nullopt;
}

// d1 B1 + d2 B2 (analytic through jets).
inline double divergence(const FieldFamily& fam, Point2 x) {
  if (!fam.in_domain(x)) throw std::domain_error(fam.name() + ": divergence requested at a singular point");
  const auto J = fam.field().jacobian(x);
  return J[0][0] + J[1][1];
}

inline VectorField apply_equivalence(const EquivalenceTransform& t, const FieldFamily& fam) {
  return apply_equivalence(t, fam.field());
}

// ---- special closed forms of the T2.4 field --------------------------------------

// The two cosh-profile specializations (nu=0, c=omega^2 and c=0, nu=-4 omega), with
// r = sinh(rho)/mu.  `printed` reproduces the tabulated display; otherwise the forms
// follow from the generic entry.
enum class CoshCase { c_omega2, c_zero };

inline Vec3 t24_cosh_form(CoshCase cs, double mu, double omega, Point2 x, bool printed) {
  const double r = std::hypot(x.x1, x.x2), th = std::atan2(x.x2, x.x1);
  const double rho = std::asinh(mu * r), ch = std::cosh(rho), sh = std::sinh(rho);
  const double n = cs == CoshCase::c_omega2 ? 3.0 : 4.0;
  if (printed) {
    const double d = std::pow(ch, n);
    return {-omega * std::sin(th) * sh / d, omega * std::cos(th) * sh / d, omega / d};
  }
  if (cs == CoshCase::c_omega2) {
    const double d = ch * ch * ch;
    return {-omega * mu * std::sin(th) * sh / d, omega * mu * std::cos(th) * sh / d, -mu * omega / d};
  }
  // phi = 8 omega / cosh^2 rho: phi'/r = -16 omega mu^2 / cosh^4, (r phi)' = 8 omega (2 - cosh^2)/cosh^4
  const double c4 = ch * ch * ch * ch;
  return {-16.0 * omega * mu * std::sin(th) * sh / c4, 16.0 * omega * mu * std::cos(th) * sh / c4,
          -8.0 * mu * omega * (2.0 - ch * ch) / c4};
}

}  // namespace spinplane
