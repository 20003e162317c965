// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "qsphere/spheres.hpp"
#include "qsphere/suites.hpp"

using namespace qsphere;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += why;
    }
  }
};

long g_disagreements = 0;

// Every result whose name starts with `prefix` must pass.
void require_checks(Outcome& o, const CheckReport& r, const std::string& prefix = "") {
  g_disagreements += r.oracle_disagreements();
  bool any = false;
  for (const auto& c : r.results()) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    any = true;
    o.require(c.status == CheckStatus::Pass, c.name + " " + to_string(c.status) + " (" + c.detail + ")");
  }
  o.require(any, "no check named " + prefix + "* in " + r.suite());
}

const CheckResult* find_prefix(const CheckReport& r, const std::string& prefix) {
  for (const auto& c : r.results()) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

double max_residual(const CheckReport& r, const std::string& prefix) {
  double worst = 0.0;
  for (const auto& c : r.results()) {
    if (c.name.rfind(prefix, 0) == 0 && c.residual) worst = std::max(worst, *c.residual);
  }
  return worst;
}

int run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    o.require(false, "runtime " + std::to_string(secs) + " s over " + std::to_string(limit_s) + " s");
  }
  std::printf("criterion %d %s: %s (%.2f s)%s%s\n", id, o.ok ? "PASS" : "FAIL", title, secs,
              o.note.empty() ? "" : ": ", o.note.c_str());
  std::fflush(stdout);
  return o.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  const std::vector<double> qs{0.3, 0.5, 0.9};

  failures += run(1, "sphere unit identity, n=1..3, q in {0.3,0.5,0.9}, N=10", 30, [&] {
    Outcome o;
    double worst = 0.0;
    for (std::size_t n : {1u, 2u, 3u}) {
      for (double q : qs) {
        const auto gens = build_generators(n, q);
        AlgebraElement s = Complex(-1.0) * AlgebraElement::unit(n);
        for (const auto& y : gens.Y) s += convolve(adjoint(y), y);
        o.require(is_zero(s) == ZeroTest::ProvablyZero, "sum not symbolically zero for n=" + std::to_string(n));
        const auto r = check_sphere_relations(n, q, 10);
        require_checks(o, r, "sphere.unit_identity");
        worst = std::max(worst, max_residual(r, "sphere.unit_identity"));
      }
    }
    o.require(worst < 1e-12, "residual " + std::to_string(worst));
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    if (o.ok) o.note = buf;
    return o;
  });

  failures += run(2, "four SU(2)_q relations at N=20", 5, [&] {
    Outcome o;
    double worst = 0.0;
    for (double q : qs) {
      const auto r = check_su2q_relations(q, 20);
      require_checks(o, r, "su2q.");
      o.require(r.results().size() == 4, "expected four relations");
      worst = std::max(worst, max_residual(r, "su2q."));
    }
    o.require(worst < 1e-12, "residual " + std::to_string(worst));
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    if (o.ok) o.note = buf;
    return o;
  });

  failures += run(3, "support and ~-invariance of words (n=2 L<=4, n=3 L<=3)", 120, [&] {
    Outcome o;
    std::string witness;
    for (auto [n, L] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 3}}) {
      const auto r = check_theorem_support(n, 0.5, L);
      require_checks(o, r, "theorem.");
      const auto* neg = find_prefix(r, "theorem.negative_control_t_only");
      o.require(neg && neg->witness, "t-only control printed no witness");
      if (neg && neg->witness && witness.empty()) witness = *neg->witness;
    }
    if (o.ok) o.note = "t-only control refuted at " + witness;
    return o;
  });

  failures += run(4, "face restriction identities, n in {2,3}", 60, [&] {
    Outcome o;
    for (std::size_t n : {2u, 3u}) require_checks(o, check_lemma_restrictions(n, 0.5, 3, 3), "lemma.");
    return o;
  });

  failures += run(5, "set identities on exhaustive windows", 120, [&] {
    Outcome o;
    const std::vector<std::pair<std::size_t, WindowBounds>> cases{{2, {3, 3, 3}}, {3, {2, 2, 2}}};
    for (const auto& [n, b] : cases) {
      const auto r = check_set_identities(n, b);
      require_checks(o, r, "sets.");
      for (const auto& c : r.results()) {
        o.require(c.detail.find("mismatches: 0") != std::string::npos, c.name + ": " + c.detail);
      }
    }
    return o;
  });

  failures += run(6, "quotient groupoid laws on 10^4 seeded samples", 30, [&] {
    Outcome o;
    for (std::size_t n : {2u, 3u}) require_checks(o, check_quotient_soundness(n, 10000, 1), "quotient.");
    return o;
  });

  failures += run(7, "boundary ideal, compatibility, ideal richness", 60, [&] {
    Outcome o;
    const auto r = check_exactness(2, 0.5, 4);
    require_checks(o, r, "exactness.");
    const auto* rich = find_prefix(r, "exactness.ideal_richness");
    o.require(rich && rich->residual && *rich->residual < 1e-8, "richness residual not below 1e-8");
    if (o.ok) o.note = rich->detail;
    return o;
  });

  failures += run(8, "Gram ranks and support patterns, q=0.3 vs q=0.7", 60, [&] {
    Outcome o;
    std::string notes;
    for (auto [n, L, N] : {std::tuple<std::size_t, std::size_t, long>{1, 3, 8}, {2, 2, 5}}) {
      const auto r = check_q_independence_proxy(n, 0.3, 0.7, L, N);
      require_checks(o, r, "qindep.");
      if (const auto* g = find_prefix(r, "qindep.gram_rank")) notes += (notes.empty() ? "" : " | ") + g->detail;
    }
    if (o.ok) o.note = notes;
    return o;
  });

  failures += run(9, "oracle coherence and interior agreement on 10^3 pairs", 0, [&] {
    Outcome o;
    for (std::size_t n : {2u, 3u}) {
      require_checks(o, check_interior_agreement(n, 0.5, 4, 1000, 1), "repr.");
    }
    o.require(g_disagreements == 0, std::to_string(g_disagreements) + " oracle disagreements");
    if (o.ok) o.note = "0 disagreements across all criteria";
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
