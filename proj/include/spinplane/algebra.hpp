#pragma once
// (Super)algebra relations among the integrals of the T2 entries, checked by composing the
// operators on analytic probe jets.  Each relation is a list of identities LHS = RHS; the
// residual at a point is |LHS psi - RHS psi| / (1 + max(|LHS psi|, |RHS psi|)).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spinplane/catalog.hpp"
#include "spinplane/determining.hpp"
#include "spinplane/hamiltonian.hpp"
#include "spinplane/operator.hpp"
#include "spinplane/probes.hpp"

namespace spinplane {

enum class RelationId { SA1, SA2, SA11, SA3, SA31, QR, QR2, AL, CA };

inline const std::vector<RelationId>& all_relations() {
  static const std::vector<RelationId> r{RelationId::SA1, RelationId::SA2, RelationId::SA11,
                                         RelationId::SA3, RelationId::SA31, RelationId::QR,
                                         RelationId::QR2, RelationId::AL,  RelationId::CA};
  return r;
}

inline std::string to_string(RelationId id) {
  static const char* n[] = {"SA1", "SA2", "SA11", "SA3", "SA31", "QR", "QR2", "AL", "CA"};
  return n[static_cast<int>(id)];
}

inline RelationId relation_from_string(const std::string& s) {
  for (auto r : all_relations())
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown relation '" + s + "'");
}

inline FamilyId bound_family(RelationId id) {
  switch (id) {
    case RelationId::SA1: case RelationId::SA2: case RelationId::SA11: return FamilyId::T2_4;
    case RelationId::SA3: case RelationId::SA31: return FamilyId::T2_3;
    case RelationId::QR: case RelationId::QR2: return FamilyId::T2_1;
    case RelationId::AL: case RelationId::CA: return FamilyId::T2_2;
  }
  return FamilyId::T2_1;
}

// ---- jet-operator building blocks -------------------------------------------------

namespace jetops {

inline JetOperator of(const FirstOrderOperator& q) { return q.as_jet_operator(); }
inline JetOperator of(const HamiltonianSpec& h) { return as_jet_operator(h); }
inline JetOperator zero() {
  return [](const SpinorJet& p, Point2) { return jet_scale(0.0, p); };
}
inline JetOperator plus(JetOperator A, cplx c) { return sum(std::move(A), constant(c)); }
inline JetOperator sq(JetOperator A) { return compose(A, A); }

// D = x1 P1 + x2 P2
inline JetOperator dilation() {
  return [](const SpinorJet& p, Point2 x) {
    const SpinorJet d1 = jet_diff(p, 0), d2 = jet_diff(p, 1);
    const CJet2 X1 = to_complex(Jet2::variable(x.x1, 0)), X2 = to_complex(Jet2::variable(x.x2, 1));
    SpinorJet r{{}, d1.valid};
    for (int s = 0; s < 2; ++s) r.v[s] = (X1 * d1.v[s] + X2 * d2.v[s]) * cplx(0, -1);
    return r;
  };
}
// K = r^2 / 2
inline JetOperator half_r2() {
  return [](const SpinorJet& p, Point2 x) {
    const Jet2 X1 = Jet2::variable(x.x1, 0), X2 = Jet2::variable(x.x2, 1);
    return multiply_sigma({(X1 * X1 + X2 * X2) * 0.5, Jet2(0.0), Jet2(0.0), Jet2(0.0)}, p);
  };
}

}  // namespace jetops

struct Identity {
  std::string text;
  JetOperator lhs, rhs;
  bool printed = true;  // false: informational exact form
};

struct IdentityResult {
  std::string text;
  double max_residual = 0;
  bool pass = false;
  bool printed = true;
};

struct RelationReport {
  RelationId id{};
  std::string family;
  std::uint64_t seed = 0;
  int n_probes = 0, n_points = 0;
  double tol = 1e-8;
  double mu_scale_lhs = 1.0;
  std::vector<IdentityResult> parts;  // printed identities (decide pass/fail)
  std::vector<IdentityResult> info;   // exact forms, reported only
  double max_residual = 0;
  bool pass = false;
  std::string note;
};

struct RelationContext {
  FieldParams params;
  double mu_scale_lhs = 1.0;  // mutation: mu -> mu * scale in LHS operators only
};

namespace detail {

struct Integrals {
  FieldFamily fam;
  HamiltonianSpec H;
  std::vector<SymmetryDescriptor> ops;
  JetOperator op(OperatorId id) const {
    for (auto& d : ops)
      if (d.id == id) return d.op.as_jet_operator();
    throw std::logic_error("missing operator " + to_string(id));
  }
};

inline Integrals integrals(FamilyId id, FieldParams p, Variant v = Variant::adopted) {
  FieldFamily fam(id, p, v);
  return {fam, hamiltonian(fam), fam.symmetry_operators()};
}

inline std::vector<Identity> identities(RelationId id, const RelationContext& ctx) {
  const FieldParams p = ctx.params;
  FieldParams pl = p;
  pl.mu *= ctx.mu_scale_lhs;
  const FamilyId fid = bound_family(id);
  const double mu = p.mu, nu = p.nu, mul = pl.mu;
  using namespace jetops;
  std::vector<Identity> out;
  switch (id) {
    case RelationId::SA1:
    case RelationId::SA2:
    case RelationId::SA11: {
      const auto R = integrals(fid, p), L = integrals(fid, pl);
      // calH = H + (mu Q1 + nu)^2 + c
      auto calH = [](const Integrals& I, double m, double n, double c) {
        return plus(sum(of(I.H), sq(plus(times(m, I.op(OperatorId::Q1)), n))), c);
      };
      const JetOperator hR = calH(R, mu, nu, p.c), hL = calH(L, mul, pl.nu, pl.c);
      const JetOperator q6L = L.op(OperatorId::Q6), q6R = R.op(OperatorId::Q6), q1 = L.op(OperatorId::Q1);
      if (id == RelationId::SA1) {
        out.push_back({"Q6^2 = calH", sq(q6L), hR});
        out.push_back({"[Q6, calH] = 0", commutator(q6L, hR), zero()});
      } else if (id == RelationId::SA2) {
        out.push_back({"[Q1, calH] = 0", commutator(q1, hL), zero()});
        out.push_back({"[Q1, Q6] = 0", commutator(q1, q6L), zero()});
      } else {
        out.push_back({"[H, calH] = 0 with calH = H + (mu Q1 + nu)^2 + c", commutator(of(L.H), hR), zero()});
        out.push_back({"calH = Q6^2", hL, sq(q6R)});
      }
      break;
    }
    case RelationId::SA3:
    case RelationId::SA31: {
      const auto R = integrals(fid, p), L = integrals(fid, pl);
      auto hatH = [](const Integrals& I, double m) { return sum(of(I.H), times(m, I.op(OperatorId::Q1))); };
      const JetOperator hR = hatH(R, mu), hL = hatH(L, mul);
      const JetOperator q5L = L.op(OperatorId::Q5), q1 = L.op(OperatorId::Q1);
      if (id == RelationId::SA3) {
        out.push_back({"Q5^2 = hatH", sq(q5L), hR});
        out.push_back({"[Q5, hatH] = 0", commutator(q5L, hR), zero()});
        out.push_back({"[Q1, hatH] = 0", commutator(q1, hL), zero()});
        out.push_back({"[Q1, Q5] = 0", commutator(q1, q5L), zero()});
        out.push_back({"Q5^2 = H + mu Q1 + nu^2/4", sq(q5L), plus(hR, nu * nu / 4), false});
      } else {
        out.push_back({"[H, hatH] = 0 with hatH = H + mu Q1", commutator(of(L.H), hR), zero()});
        out.push_back({"[Q5, hatH] = 0", commutator(q5L, hR), zero()});
      }
      break;
    }
    case RelationId::QR:
    case RelationId::QR2: {
      const auto R = integrals(fid, p), L = integrals(fid, pl);
      // the relations concern the line model: H restricted to P2 = 0, i.e. H - P2^2
      const JetOperator p2 = of(ops::momentum(1));
      const JetOperator h1 = difference(of(R.H), sq(p2));
      const JetOperator q3L = L.op(OperatorId::Q3), q2 = R.op(OperatorId::Q2);
      if (id == RelationId::QR) {
        out.push_back({"Q3^2 = H + 2 nu Q2 + nu^2", sq(q3L), plus(sum(h1, times(2 * nu, q2)), nu * nu)});
        out.push_back({"Q3^2 = H + 2 nu Q2 + nu^2 + mu^2", sq(q3L), plus(sum(h1, times(2 * nu, q2)), nu * nu + mu * mu),
                       false});
      } else {
        const JetOperator lhs = sq(plus(q3L, -0.5)), rhs = sq(plus(q2, nu));
        out.push_back({"(Q3 - 1/2)^2 = (Q2 + nu)^2", lhs, rhs});
        out.push_back({"(Q3 - 1/2)^2 = (Q2 + nu)^2 + mu^2", lhs, plus(rhs, mu * mu), false});
      }
      break;
    }
    case RelationId::AL: {
      // a purely operator identity; checked with the tabulated Q4 = sigma3 (Q1~ + nu) - ...
      const auto R = integrals(fid, p, Variant::printed), L = integrals(fid, pl, Variant::printed);
      const JetOperator q1t = R.op(OperatorId::Q1t);
      out.push_back({"Q4^2 = Q1~^2 + 2 nu Q1~ + mu^2 + nu^2", sq(L.op(OperatorId::Q4)),
                     plus(sum(sq(q1t), times(2 * nu, q1t)), mu * mu + nu * nu)});
      const auto Ra = integrals(fid, p), La = integrals(fid, pl);
      const JetOperator q1a = Ra.op(OperatorId::Q1t);
      out.push_back({"integral Q4 = sigma3 (Q1~ - nu) - ...: Q4^2 = Q1~^2 - 2 nu Q1~ + mu^2 + nu^2",
                     sq(La.op(OperatorId::Q4)), plus(sum(sq(q1a), times(-2 * nu, q1a)), mu * mu + nu * nu), false});
      break;
    }
    case RelationId::CA: {
      const auto R = integrals(fid, p), L = integrals(fid, pl);
      const JetOperator D = dilation(), K = half_r2(), hR = of(R.H), hL = of(L.H);
      const cplx I(0, 1);
      out.push_back({"[H, D] = -2i H", commutator(hL, D), times(-2.0 * I, hR)});
      out.push_back({"[K, D] = 2i K", commutator(K, D), times(2.0 * I, K)});
      out.push_back({"[K, H] = i D", commutator(K, hL), times(I, D)});
      out.push_back({"[K, H] = 2i D + 2", commutator(K, hL), plus(times(2.0 * I, D), 2.0), false});
      break;
    }
  }
  return out;
}

inline IdentityResult evaluate(const Identity& idn, const std::vector<ClosedFormSpinorFn>& probes,
                               const std::vector<Point2>& pts, double tol) {
  IdentityResult r{idn.text, 0, false, idn.printed};
  for (const auto& pr : probes)
    for (const auto& x : pts) {
      const SpinorJet j = pr.jet(x);
      const Spinor a = value_of(idn.lhs(j, x).v), b = value_of(idn.rhs(j, x).v);
      const Spinor d{{a[0] - b[0], a[1] - b[1]}};
      r.max_residual = std::max(r.max_residual, norm(d) / (1.0 + std::max(norm(a), norm(b))));
    }
  r.pass = r.max_residual <= tol;
  return r;
}

}  // namespace detail

inline std::vector<Point2> relation_points(const FieldFamily& fam, int n, std::uint64_t seed) {
  return sample_annulus(seed, n, [&](Point2 p) { return fam.in_domain(p); });
}

inline RelationReport check_relation(RelationId id, const RelationContext& ctx,
                                     const std::vector<ClosedFormSpinorFn>& probes, int n_points,
                                     std::uint64_t seed, double tol = 1e-8) {
  if (probes.empty()) throw std::invalid_argument("check_relation: no probes");
  for (auto& p : probes)
    if (!p.has_jet()) throw std::invalid_argument("probe lacks the derivatives required by this relation");
  const FieldFamily fam(bound_family(id), ctx.params);
  const auto pts = relation_points(fam, n_points, seed);
  RelationReport rep;
  rep.id = id;
  rep.family = to_string(fam.id());
  rep.seed = seed;
  rep.n_probes = int(probes.size());
  rep.n_points = n_points;
  rep.tol = tol;
  rep.mu_scale_lhs = ctx.mu_scale_lhs;
  for (const auto& idn : detail::identities(id, ctx)) {
    auto r = detail::evaluate(idn, probes, pts, tol);
    if (idn.printed) {
      rep.max_residual = std::max(rep.max_residual, r.max_residual);
      rep.parts.push_back(std::move(r));
    } else {
      rep.info.push_back(std::move(r));
    }
  }
  rep.pass = rep.max_residual <= tol;
  if (id == RelationId::QR || id == RelationId::QR2) rep.note = "H taken on the line P2 = 0";
  if (id == RelationId::AL) rep.note = "tabulated Q4; the integral of motion uses sigma3 (Q1~ - nu)";
  return rep;
}

inline RelationReport check_relation(RelationId id, const FieldParams& params, const std::vector<ClosedFormSpinorFn>& probes,
                                     int n_points = 50, std::uint64_t seed = 42, double tol = 1e-8) {
  return check_relation(id, RelationContext{params, 1.0}, probes, n_points, seed, tol);
}

// Parameters used by the relation suites (T2.2 with k = 1, mu = nu = 1 as in the AL example).
inline FieldParams relation_params(RelationId id) {
  FieldParams p = default_params(bound_family(id));
  if (bound_family(id) == FamilyId::T2_2) {
    p.k = 1;
    p.mu = 1;
    p.nu = 1;
  }
  return p;
}

// ---- mutual commutativity ------------------------------------------------------------

struct CommutatorCheck {
  std::string a, b;
  double max_residual = 0;
  bool pass = false;
};

inline std::vector<CommutatorCheck> mutual_commutativity(const FieldFamily& fam, const std::vector<ClosedFormSpinorFn>& probes,
                                                         int n_points, std::uint64_t seed, double tol = 1e-8) {
  std::vector<std::pair<std::string, JetOperator>> ops{{"H", as_jet_operator(hamiltonian(fam))}};
  for (auto& d : fam.symmetry_operators()) ops.emplace_back(to_string(d.id), d.op.as_jet_operator());
  const auto pts = relation_points(fam, n_points, seed);
  std::vector<CommutatorCheck> out;
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j) {
      const Identity idn{"[" + ops[i].first + ", " + ops[j].first + "] = 0", commutator(ops[i].second, ops[j].second),
                         jetops::zero()};
      const auto r = detail::evaluate(idn, probes, pts, tol);
      out.push_back({ops[i].first, ops[j].first, r.max_residual, r.pass});
    }
  return out;
}

}  // namespace spinplane
