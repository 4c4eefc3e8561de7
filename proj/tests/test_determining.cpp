#include <catch_amalgamated.hpp>

#include "spinplane/determining.hpp"

using namespace spinplane;

namespace {

FieldFamily family(FamilyId id) { return FieldFamily(id, default_params(id)); }

}  // namespace

TEST_CASE("every catalog pair satisfies the determining equations") {
  for (auto id : all_families()) {
    const auto fam = family(id);
    for (const auto& d : fam.symmetry_operators()) {
      for (const auto& rep : certify(fam, d, 200, 42)) {
        INFO(rep.family << " " << rep.op << " " << rep.check << " " << rep.note << " max=" << rep.max_residual);
        CHECK(rep.pass);
      }
    }
  }
}

TEST_CASE("zero field and momentum give exactly zero residual") {
  const VectorField zero = VectorField::zero();
  const auto r = residual_de(zero, ops::momentum(0), {0.4, -1.2});
  CHECK(r.max_abs() == 0.0);
  const auto e = residual_e1(zero, OmegaField::zero(), E1Constants{}, {0.4, -1.2});
  CHECK(max_abs(e) == 0.0);
}

TEST_CASE("wrong sign in Omega of Q3 is detected") {
  const auto fam = family(FamilyId::T2_1);
  auto q3 = find_operator(fam, OperatorId::Q3)->op;
  const OmegaField good = q3.omega;
  q3.omega = OmegaField::from_generic([good](const auto& x1, const auto& x2) {
    auto v = good(x1, x2);
    v[1] = -1.0 * v[1];
    return v;
  });
  double worst = 0;
  for (auto& p : sample_annulus(1, 50, [](Point2) { return true; }))
    worst = std::max(worst, residual_de(fam.field(), q3, p).max_abs());
  CHECK(worst > 0.1 * fam.params().mu);
}

TEST_CASE("reduced and unreduced residuals agree component by component") {
  // generic (non-symmetric) data: T1.1 field with arbitrary constants and a nonconstant Omega
  const auto fam = family(FamilyId::T1_1);
  const VectorField B = fam.field();
  SeededUniform u(99);
  for (int trial = 0; trial < 20; ++trial) {
    E1Constants k{u(-1, 1), u(-1, 1), u(-1, 1), u(-1, 1), 0, 0, u(-1, 1), u(-1, 1)};
    if (trial % 2) k = E1Constants{0, 0, u(-1, 1), u(-1, 1), u(-1, 1), u(-1, 1), 0, 0};
    FirstOrderOperator Q;
    Q.C[0] = k.a;
    Q.C[3] = k.b;
    Q.Ca[0] = {k.c3, k.c4};
    Q.Ca[1][0] = k.c1;
    Q.Ca[2][1] = k.c2;
    Q.Ca[3] = {-k.d1, -k.d2};
    const double s = u(-1, 1);
    Q.omega = OmegaField::from_generic([s](const auto& x1, const auto& x2) {
      using S = std::remove_cvref_t<decltype(x1)>;
      return std::array<S, 4>{S(0.3), s * x1 * x2, sin(x1) + S(s), x2 * x2 - x1};
    });
    for (auto& p : sample_annulus(trial, 20, [](Point2) { return true; })) {
      const auto de = residual_de(B, Q, p);
      const auto e1 = residual_e1(B, Q.omega, k, p);
      const std::array<double, 10> mapped{de.de4[2][0], de.de4[2][1], de.de4[0][0], de.de4[0][1], de.de4[1][0],
                                          de.de4[1][1], de.de3a,      de.de3b[0],   de.de3b[1],   de.de3b[2]};
      for (int i = 0; i < 10; ++i) CHECK(std::abs(mapped[i] - e1[i]) <= 1e-9);
      for (double v : de.de1) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("regime classification") {
  CHECK(classify({1, 1, 0.3, 0, 0, 0, 0.2, 0}) == Regime::co1);
  CHECK(classify({0, 1, 1, 1, 0.5, 0, 0, 0}) == Regime::co2);
  CHECK(classify({1, 0, 1, 0, 0, 0, 0, 0}) == Regime::co3);
  CHECK(classify({0, 0, 1, 0, 2, 0, 0, 0}) == Regime::co4);
  CHECK(classify({0, 0, 0, 0, 1, 0, 0, 0}) == Regime::lie_translation);
  CHECK_THROWS_AS(classify({1, 0, 0, 0, 1, 0, 0, 0}), InvalidRegime);    // a c3 != 0
  CHECK_THROWS_AS(classify({0, 0, 0, 0, 0, 0, 1, 0}), InvalidRegime);    // d without ab
  CHECK_THROWS_AS(residual_e1(VectorField::zero(), OmegaField::zero(), {1, 0, 0, 0, 1, 0, 0, 0}, {1, 1}),
                  InvalidRegime);

  const auto p = default_params(FamilyId::T2_4);
  CHECK(classify(e1_constants(find_operator(FieldFamily(FamilyId::T2_4, p), OperatorId::Q6)->op)) == Regime::co2);
  CHECK(classify(e1_constants(find_operator(family(FamilyId::T2_3), OperatorId::Q5)->op)) == Regime::co4);
  CHECK(classify(e1_constants(find_operator(family(FamilyId::T2_2), OperatorId::Q4)->op)) == Regime::co2);
  CHECK(classify(e1_constants(find_operator(family(FamilyId::T2_2), OperatorId::Q1t)->op)) == Regime::co3);
  CHECK_FALSE(reducible(find_operator(family(FamilyId::T2_1), OperatorId::Q3)->op));
}

TEST_CASE("Lie reduction tags") {
  FieldParams p;
  p.k = 3;
  const auto q1t = find_operator(FieldFamily(FamilyId::T1_1, p), OperatorId::Q1t)->op;
  CHECK(lie_reduction_check(q1t) == SymmetryKind::lie_generator);
  CHECK(lie_reduction_check(find_operator(family(FamilyId::T2_1), OperatorId::Q3)->op) == SymmetryKind::higher_symmetry);
  CHECK(lie_reduction_check(ops::momentum(1)) == SymmetryKind::lie_generator);
  CHECK(lie_reduction_check(find_operator(family(FamilyId::T2_3), OperatorId::Q5)->op) == SymmetryKind::higher_symmetry);
}

TEST_CASE("mutation sensitivity of the constants") {
  // every Lambda constant of a passing operator, perturbed by 1e-3, is detected
  for (auto [id, op] : {std::pair{FamilyId::T2_4, OperatorId::Q6}, std::pair{FamilyId::T2_3, OperatorId::Q5},
                        std::pair{FamilyId::T2_1, OperatorId::Q3}, std::pair{FamilyId::T1_1, OperatorId::Q1t}}) {
    const auto fam = family(id);
    const auto base = find_operator(fam, op)->op;
    const auto pts = sample_annulus(5, 40, [&](Point2 x) { return fam.in_domain(x); });
    for (int slot = 0; slot < 12; ++slot) {
      FirstOrderOperator q = base;
      if (id == FamilyId::T2_1 && slot == 5) continue;  // C^{02}: adds P2, itself an integral of T2.1
      if (slot < 4) q.C[slot] += 1e-3;
      else q.Ca[(slot - 4) / 2][(slot - 4) % 2] += 1e-3;
      double worst = 0;
      for (auto& x : pts) worst = std::max(worst, residual_de(fam.field(), q, x).max_abs());
      INFO(to_string(id) << " slot " << slot << " worst " << worst);
      CHECK(worst > 1e-5);
    }
  }
}

TEST_CASE("equivalence transformations preserve symmetry") {
  const std::vector<EquivalenceTransform> ts{Shift{0.7, -0.4}, PlaneRotation{0.9}, quarter_turn(3, 1),
                                             quarter_turn(1, 2), Scaling{1.7}, Scaling{-0.6}};
  for (auto id : {FamilyId::T2_1, FamilyId::T2_3, FamilyId::T1_5, FamilyId::T1_8}) {
    const auto fam = family(id);
    for (const auto& t : ts) {
      const VectorField Bt = apply_equivalence(t, fam);
      for (const auto& d : fam.symmetry_operators()) {
        const FirstOrderOperator Qt = apply_equivalence(t, d.op);
        double worst = 0;
        for (auto& x : sample_annulus(3, 40, [&](Point2 x) { return fam.in_domain(x); }))
          worst = std::max(worst, residual_de(Bt, Qt, push_point(t, x)).max_abs());
        INFO(to_string(id) << " " << d.op.name << " transform " << t.index());
        CHECK(worst < 1e-8);
      }
    }
  }
}

TEST_CASE("equivalence transform examples and errors") {
  const VectorField B = VectorField::from_generic([](const auto& a, const auto&) {
    using S = std::remove_cvref_t<decltype(a)>;
    return std::array<S, 3>{S(0.0), S(0.0), S(4.0)};
  });
  CHECK(apply_equivalence(Scaling{2.0}, B)(0.3, 0.1)[2] == 1.0);
  const auto fam = family(FamilyId::T2_1);
  const VectorField same = apply_equivalence(Shift{0, 0}, fam);
  const auto v = same(0.4, 0.2), w = fam.field()(0.4, 0.2);
  for (int i = 0; i < 3; ++i) CHECK(v[i] == w[i]);
  CHECK_THROWS_AS(apply_equivalence(Scaling{0.0}, B), std::domain_error);
  SpinRotation bad;
  bad.R[0][1] = 0.5;
  CHECK_THROWS_AS(apply_equivalence(bad, B), std::domain_error);
  SpinRotation reflect;
  reflect.R[2][2] = -1;
  CHECK_THROWS_AS(apply_equivalence(reflect, B), std::domain_error);

  // shift then re-check with the determining module
  const Shift s{1.3, 0};
  const auto q3 = find_operator(fam, OperatorId::Q3)->op;
  CHECK(residual_de(apply_equivalence(s, fam), apply_equivalence(s, q3), {0.2, 0.9}).max_abs() < 1e-12);
}
