#include "qsphere/suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace qsphere {

const char* suite_name(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::Relations: return "check-relations";
    case SuiteKind::Lemma: return "check-lemma";
    case SuiteKind::Theorem: return "check-theorem";
    case SuiteKind::Sets: return "check-sets";
    case SuiteKind::Exactness: return "check-exactness";
    case SuiteKind::QIndependence: return "check-qindep";
  }
  return "?";
}

void SuiteParams::validate(SuiteKind kind) const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (n < 1 || n > 31) bad("n must lie in [1, 31]");
  if (q.empty()) bad("at least one q is required");
  for (double v : q) {
    if (!(v > 0.0 && v < 1.0)) bad("q must lie in (0,1)");
  }
  if (N < 1) bad("N must be >= 1");
  if (!(tol > 0.0)) bad("tol must be > 0");
  for (const auto* list : {&angles.theta, &angles.phi}) {
    if (list->empty()) bad("angle lists must not be empty");
    for (double a : *list) {
      if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) bad("angles must lie in [0, 2pi)");
    }
  }
  if (z_max < 0 || x_max < 0) bad("window bounds must be >= 0");
  if (samples < 1 || agreement_pairs < 1) bad("sample counts must be >= 1");
  switch (kind) {
    case SuiteKind::Relations:
      if (N < 2) bad("check-relations needs N >= 2 for interior columns");
      break;
    case SuiteKind::Lemma:
    case SuiteKind::Sets:
      if (n < 2) bad(std::string(suite_name(kind)) + " needs n >= 2");
      break;
    case SuiteKind::QIndependence:
      if (q.size() != 2 || q[0] == q[1]) bad("check-qindep needs exactly two distinct q values");
      break;
    default: break;
  }
}

CheckReport run_suite(SuiteKind kind, const SuiteParams& p) {
  p.validate(kind);
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport report(suite_name(kind));
  report.set_param("n", static_cast<long>(p.n));
  report.set_param("q", p.q);

  switch (kind) {
    case SuiteKind::Relations:
      report.set_param("N", p.N);
      report.set_param("theta", p.angles.theta);
      report.set_param("phi", p.angles.phi);
      report.set_param("tol", p.tol);
      report.set_param("seed", static_cast<long>(p.seed));
      for (double q : p.q) {
        report.merge(check_su2q_relations(q, p.N, p.angles, p.tol));
        report.merge(check_sphere_relations(p.n, q, p.N, p.angles, p.tol));
      }
      report.merge(check_interior_agreement(p.n, p.q.front(), p.agreement_N, p.agreement_pairs,
                                            p.seed, p.tol));
      break;
    case SuiteKind::Lemma:
      report.set_param("N", p.N);
      report.set_param("L", static_cast<long>(p.L));
      for (double q : p.q) report.merge(check_lemma_restrictions(p.n, q, p.N, p.L));
      break;
    case SuiteKind::Theorem:
      report.set_param("N", p.N);
      report.set_param("L", static_cast<long>(p.L));
      for (double q : p.q) report.merge(check_theorem_support(p.n, q, p.L, p.N));
      break;
    case SuiteKind::Sets:
      report.set_param("N", p.N);
      report.set_param("zmax", p.z_max);
      report.set_param("xmax", p.x_max);
      report.set_param("samples", p.samples);
      report.set_param("seed", static_cast<long>(p.seed));
      report.merge(check_set_identities(p.n, WindowBounds{p.z_max, p.x_max, p.N}));
      report.merge(check_quotient_soundness(p.n, p.samples, p.seed));
      break;
    case SuiteKind::Exactness:
      report.set_param("N", p.N);
      for (double q : p.q) report.merge(check_exactness(p.n, q, p.N));
      break;
    case SuiteKind::QIndependence:
      report.set_param("N", p.N);
      report.set_param("L", static_cast<long>(p.L));
      report.merge(check_q_independence_proxy(p.n, p.q[0], p.q[1], p.L, p.N));
      break;
  }
  report.set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return report;
}

}  // namespace qsphere
