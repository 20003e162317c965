#include <doctest.h>

#include "qsphere/suites.hpp"

using namespace qsphere;

namespace {

void require_all_pass(const CheckReport& r) {
  for (const auto& c : r.results()) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.oracle_disagreements == 0);
  }
  CHECK(r.passed());
}

const CheckResult* find_prefix(const CheckReport& r, const std::string& prefix) {
  for (const auto& c : r.results()) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("relations on small windows") {
  require_all_pass(check_su2q_relations(0.5, 6));
  require_all_pass(check_sphere_relations(2, 0.3, 5));
  require_all_pass(check_interior_agreement(2, 0.5, 4, 40, 3));
}

TEST_CASE("lemma and theorem") {
  require_all_pass(check_lemma_restrictions(2, 0.5, 2, 2));
  const auto t = check_theorem_support(2, 0.5, 2);
  require_all_pass(t);
  const auto* neg = find_prefix(t, "theorem.negative_control_t_only");
  REQUIRE(neg != nullptr);
  REQUIRE(neg->witness.has_value());
  CHECK(neg->witness->find("inf") != std::string::npos);
}

TEST_CASE("set identities and quotient laws") {
  const auto s = check_set_identities(2, {1, 1, 2});
  require_all_pass(s);
  for (const auto& c : s.results()) CHECK(c.detail.find("mismatches: 0") != std::string::npos);
  require_all_pass(check_quotient_soundness(2, 500, 4));
  // Interior-only window: both primed sets are empty.
  const auto interior = check_set_identities(2, {1, 1, 0});
  require_all_pass(interior);
}

TEST_CASE("exactness and q-independence") {
  require_all_pass(check_exactness(2, 0.5, 3));
  const auto qi = check_q_independence_proxy(1, 0.3, 0.7, 2, 6);
  require_all_pass(qi);
  const auto zero = check_q_independence_proxy(1, 0.3, 0.7, 0, 4);
  require_all_pass(zero);
  const auto* rank = find_prefix(zero, "qindep.gram_rank");
  REQUIRE(rank != nullptr);
  CHECK(rank->detail.find("rank 1") != std::string::npos);
}

TEST_CASE("suites validate their parameters") {
  SuiteParams p;
  p.n = 1;
  CHECK_THROWS_AS(run_suite(SuiteKind::Lemma, p), Error);
  p.n = 2;
  p.q = {1.5};
  CHECK_THROWS_AS(run_suite(SuiteKind::Relations, p), Error);
  p.q = {0.5};
  CHECK_THROWS_AS(run_suite(SuiteKind::QIndependence, p), Error);
  CHECK(std::string(suite_name(SuiteKind::Sets)) == "check-sets");
}

TEST_CASE("reports are reproducible") {
  SuiteParams p;
  p.n = 2;
  p.N = 2;
  p.z_max = 1;
  p.x_max = 1;
  p.samples = 300;
  const auto a = run_suite(SuiteKind::Sets, p).to_json();
  const auto b = run_suite(SuiteKind::Sets, p).to_json();
  CHECK(a == b);
}
