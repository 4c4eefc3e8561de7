#include <catch_amalgamated.hpp>

#include "spinplane/algebra.hpp"

using namespace spinplane;

namespace {

const std::vector<ClosedFormSpinorFn>& probes() {
  static const auto p = seeded_probes(20, 7);
  return p;
}

RelationReport run(RelationId id, double mu_scale = 1.0) {
  return check_relation(id, RelationContext{relation_params(id), mu_scale}, probes(), 50, 42);
}

void log(const RelationReport& r) {
  for (auto& p : r.parts) UNSCOPED_INFO(to_string(r.id) << "  " << p.text << "  max=" << p.max_residual);
  for (auto& p : r.info) UNSCOPED_INFO(to_string(r.id) << "  [exact] " << p.text << "  max=" << p.max_residual);
}

}  // namespace

TEST_CASE("relations that hold as written") {
  for (auto id : {RelationId::SA1, RelationId::SA2, RelationId::SA11, RelationId::SA31, RelationId::AL}) {
    const auto r = run(id);
    log(r);
    CHECK(r.pass);
    for (auto& p : r.info) CHECK(p.pass);
  }
}

TEST_CASE("exact forms of the misprinted relations") {
  for (auto id : {RelationId::SA3, RelationId::QR, RelationId::QR2, RelationId::CA}) {
    const auto r = run(id);
    log(r);
    REQUIRE_FALSE(r.info.empty());
    for (auto& p : r.info) CHECK(p.pass);
  }
}

TEST_CASE("commutator parts of SA3 and CA hold") {
  const auto sa3 = run(RelationId::SA3);
  for (size_t i = 1; i < sa3.parts.size(); ++i) CHECK(sa3.parts[i].pass);
  const auto ca = run(RelationId::CA);
  CHECK(ca.parts[0].pass);
  CHECK(ca.parts[1].pass);
}

TEST_CASE("mu mutation in the LHS breaks relations with a mu-dependent side") {
  for (auto id : {RelationId::SA1, RelationId::SA3, RelationId::QR, RelationId::QR2, RelationId::AL, RelationId::CA}) {
    const auto r = run(id, 1 + 1e-3);
    INFO(to_string(id) << " " << r.max_residual);
    CHECK(r.max_residual > 1e-5);
  }
}

TEST_CASE("mutual commutativity of H and the listed integrals") {
  for (auto id : all_families()) {
    const FieldFamily fam(id, default_params(id));
    for (auto& c : mutual_commutativity(fam, probes(), 30, 3)) {
      INFO(to_string(id) << " [" << c.a << ", " << c.b << "] " << c.max_residual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("relation ids and errors") {
  for (auto id : all_relations()) CHECK(relation_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(relation_from_string("SA9"), std::invalid_argument);
  CHECK_THROWS_AS(check_relation(RelationId::SA1, relation_params(RelationId::SA1), {}, 10, 1), std::invalid_argument);
}
