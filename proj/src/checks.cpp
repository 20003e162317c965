#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "qsphere/rng.hpp"
#include "qsphere/spheres.hpp"

namespace qsphere {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string tag(std::size_t n, double q) { return "[n=" + std::to_string(n) + " q=" + fmt(q) + "]"; }

ReprConfig make_cfg(std::size_t n, long N, double q, double theta, double phi) {
  ReprConfig cfg;
  cfg.n = n;
  cfg.N = N;
  cfg.q = q;
  cfg.theta = theta;
  cfg.phi.assign(n, phi);
  return cfg;
}

template <class F>
void for_each_angle(const AngleSet& angles, std::size_t n, long N, double q, F&& f) {
  for (double theta : angles.theta) {
    for (double phi : angles.phi) f(make_cfg(n, N, q, theta, phi));
  }
}

std::vector<long> unit_vector(std::size_t n, std::size_t slot, long v) {
  std::vector<long> x(n, 0);
  x[slot] = v;
  return x;
}

// A polynomial identity: sum of scalar * q^k * (product of factors).
struct RelationTerm {
  Complex scalar = 1.0;
  int q_exp = 0;
  std::vector<AlgebraElement> factors;  // empty means the unit
};
using Relation = std::vector<RelationTerm>;

AlgebraElement symbolic(const Relation& rel, std::size_t n) {
  AlgebraElement total(n);
  for (const auto& t : rel) {
    AlgebraElement prod = AlgebraElement::unit(n);
    for (const auto& f : t.factors) prod = convolve(prod, f);
    total += (t.scalar * Coeff::qpow(t.q_exp)) * prod;
  }
  return total;
}

// Residuals of relations on one window configuration, evaluated column by
// column through sparse factor matrices shared across relations.
class NumericRelation {
 public:
  explicit NumericRelation(ReprConfig cfg) : cfg_(std::move(cfg)) {}

  const ReprConfig& config() const { return cfg_; }

  double residual(const Relation& rel, std::span<const std::size_t> cols) {
    double worst = 0.0;
    for (std::size_t c : cols) {
      std::map<std::size_t, Complex> acc;
      for (const auto& t : rel) {
        const Complex scale = t.scalar * std::pow(cfg_.q, t.q_exp);
        std::map<std::size_t, Complex> vec{{c, scale}};
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
          const SparseColumns& m = matrix(*it);
          std::map<std::size_t, Complex> out;
          for (const auto& [k, v] : vec) {
            for (const auto& [r, a] : m.cols[k]) out[r] += a * v;
          }
          vec = std::move(out);
        }
        for (const auto& [r, v] : vec) acc[r] += v;
      }
      for (const auto& [r, v] : acc) worst = std::max(worst, std::abs(v));
    }
    return worst;
  }

  /// Largest entry of the element's own matrix on the given columns.
  double direct(const AlgebraElement& d, std::span<const std::size_t> cols) const {
    const SparseColumns m = to_sparse(d, cfg_);
    double worst = 0.0;
    for (std::size_t c : cols) {
      for (const auto& [r, v] : m.cols[c]) worst = std::max(worst, std::abs(v));
    }
    return worst;
  }

 private:
  const SparseColumns& matrix(const AlgebraElement& f) {
    for (const auto& [elem, m] : cache_) {
      if (elem == f) return m;
    }
    cache_.emplace_back(f, to_sparse(f, cfg_));
    return cache_.back().second;
  }

  ReprConfig cfg_;
  std::vector<std::pair<AlgebraElement, SparseColumns>> cache_;
};

// Symbolic verdicts plus numeric residuals on interior columns for a batch
// of identities sharing one generator set.
void identity_checks(CheckReport& report,
                     const std::vector<std::pair<std::string, Relation>>& relations,
                     std::size_t n, long N, double q, long B, const AngleSet& angles,
                     double tol) {
  std::vector<AlgebraElement> diffs;
  std::vector<double> residuals(relations.size(), 0.0);
  for (const auto& [name, rel] : relations) diffs.push_back(symbolic(rel, n));
  for_each_angle(angles, n, N, q, [&](const ReprConfig& cfg) {
    const auto cols = interior_mask(cfg, B);
    NumericRelation num(cfg);
    for (std::size_t i = 0; i < relations.size(); ++i) {
      residuals[i] = std::max({residuals[i], num.direct(diffs[i], cols),
                               num.residual(relations[i].second, cols)});
    }
  });
  for (std::size_t i = 0; i < relations.size(); ++i) {
    CheckResult r;
    r.name = relations[i].first;
    r.count = 1;
    r.residual = residuals[i];
    const ZeroTest z = is_zero(diffs[i]);
    if (z == ZeroTest::ProvablyZero) {
      r.status = residuals[i] < tol ? CheckStatus::Pass : CheckStatus::Fail;
      if (residuals[i] > kCoherenceTolerance) r.oracle_disagreements = 1;
    } else {
      r.status = z == ZeroTest::Unknown ? CheckStatus::Unknown : CheckStatus::Fail;
    }
    r.detail = std::string("symbolic: ") + to_string(z);
    if (z != ZeroTest::ProvablyZero) r.detail += "; difference " + serialize(diffs[i]);
    report.add(std::move(r));
  }
}

// Largest |M[range(g), source(g)]| over the angle samples, on a window wide
// enough to hold both units of g.
double matrix_value(const AlgebraElement& f, const GroupoidElement& g, double q,
                    const AngleSet& angles) {
  long N = 1;
  for (const Unit* u : {&g.source(), &g.range()}) {
    for (const auto& v : *u) {
      if (!v.is_inf()) N = std::max(N, v.value());
    }
  }
  const Window win(f.dim(), N);
  double best = 0.0;
  for_each_angle(angles, f.dim(), N, q, [&](const ReprConfig& cfg) {
    const auto m = to_matrix(f, cfg);
    best = std::max(best, std::abs(m(win.index(g.range()), win.index(g.source()))));
  });
  return best;
}

double matrix_difference(const AlgebraElement& f, const GroupoidElement& g,
                         const GroupoidElement& h, double q, const AngleSet& angles) {
  long N = 1;
  for (const Unit* u : {&g.source(), &g.range(), &h.source(), &h.range()}) {
    for (const auto& v : *u) {
      if (!v.is_inf()) N = std::max(N, v.value());
    }
  }
  const Window win(f.dim(), N);
  double best = 0.0;
  for_each_angle(angles, f.dim(), N, q, [&](const ReprConfig& cfg) {
    const auto m = to_matrix(f, cfg);
    const Complex a = m(win.index(g.range()), win.index(g.source()));
    const Complex b = m(win.index(h.range()), win.index(h.source()));
    best = std::max(best, std::abs(a - b));
  });
  return best;
}

// Result for a family of items that must all satisfy a predicate.
struct Tally {
  long count = 0;
  long failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++count;
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }

  CheckResult result(const std::string& name) const {
    CheckResult r;
    r.name = name;
    r.count = count;
    r.status = failures == 0 ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = "failures: " + std::to_string(failures);
    if (failures > 0) r.detail += "; first: " + first_failure;
    return r;
  }
};

}  // namespace

CheckReport check_su2q_relations(double q, long N, const AngleSet& angles, double tol) {
  const auto t0 = Clock::now();
  CheckReport report("su2q-relations");
  const AlgebraElement alpha_star = AlgebraElement::single(1, Shift{0, {-1}}, Coeff::sqrt(0, 0));
  const AlgebraElement alpha = adjoint(alpha_star);
  const AlgebraElement gamma = AlgebraElement::single(1, Shift{0, {0}}, Coeff::pow(0, 1, 0));
  const AlgebraElement gamma_star = adjoint(gamma);

  const std::string t = tag(1, q);
  const std::vector<std::pair<std::string, Relation>> relations = {
      {"su2q.alpha_alphastar_plus_gamma_gammastar" + t,
       {{1.0, 0, {alpha, alpha_star}}, {1.0, 0, {gamma, gamma_star}}, {-1.0, 0, {}}}},
      {"su2q.alphastar_alpha_plus_q2_gammastar_gamma" + t,
       {{1.0, 0, {alpha_star, alpha}}, {1.0, 2, {gamma_star, gamma}}, {-1.0, 0, {}}}},
      {"su2q.gamma_alpha_q_commute" + t, {{1.0, 0, {gamma, alpha}}, {-1.0, 1, {alpha, gamma}}}},
      {"su2q.gamma_normal" + t, {{1.0, 0, {gamma, gamma_star}}, {-1.0, 0, {gamma_star, gamma}}}},
  };
  identity_checks(report, relations, 1, N, q, 1, angles, tol);
  report.set_wall_time(seconds_since(t0));
  return report;
}

CheckReport check_sphere_relations(std::size_t n, double q, long N, const AngleSet& angles,
                                   double tol) {
  const auto t0 = Clock::now();
  CheckReport report("sphere-relations");
  const GeneratorSet gens = build_generators(n, q);
  const std::string t = tag(n, q);

  std::vector<std::pair<std::string, Relation>> relations;
  Relation unit_identity{{-1.0, 0, {}}};
  for (std::size_t m = 1; m <= n + 1; ++m) {
    unit_identity.push_back({1.0, 0, {adjoint(gens.gen(m)), gens.gen(m)}});
  }
  relations.emplace_back("sphere.unit_identity" + t, std::move(unit_identity));

  // Generator acting on each slot, the t-only one last.
  std::vector<const AlgebraElement*> by_slot(n + 1);
  for (std::size_t m = 1; m <= n + 1; ++m) by_slot[acting_slot(n, m)] = &gens.gen(m);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t k = j + 1; k <= n; ++k) {
      const Relation rel{{1.0, 0, {*by_slot[j], *by_slot[k]}},
                         {-1.0, 1, {*by_slot[k], *by_slot[j]}}};
      const std::string name = "sphere.q_commute_slots_" + std::to_string(j + 1) + "_" +
                               std::to_string(k + 1) + t;
      relations.emplace_back(name, rel);
    }
  }
  identity_checks(report, relations, n, N, q, 1, angles, tol);
  report.set_wall_time(seconds_since(t0));
  return report;
}

namespace {

Coeff random_coeff(std::size_t n, SeededRng& rng) {
  Coeff total;
  const long monomials = rng.uniform_int(1, 2);
  for (long k = 0; k < monomials; ++k) {
    Coeff c = Coeff::constant(Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0));
    const long atoms = rng.uniform_int(0, 2);
    for (long a = 0; a < atoms; ++a) {
      const int slot = static_cast<int>(rng.uniform_int(0, static_cast<long>(n) - 1));
      switch (rng.uniform_int(0, 3)) {
        case 0:
          c = c * Coeff::pow(slot, static_cast<int>(rng.uniform_int(1, 2)),
                             static_cast<int>(rng.uniform_int(0, 1)));
          break;
        case 1: c = c * Coeff::sqrt(slot, static_cast<int>(rng.uniform_int(-1, 1))); break;
        case 2: c = c * Coeff::ind(slot, static_cast<int>(rng.uniform_int(1, 2))); break;
        default: c = c * Coeff::qpow(static_cast<int>(rng.uniform_int(0, 2))); break;
      }
    }
    total += c;
  }
  return total;
}

AlgebraElement random_element(std::size_t n, SeededRng& rng) {
  AlgebraElement::TermMap terms;
  const long count = rng.uniform_int(1, 3);
  for (long k = 0; k < count; ++k) {
    Shift s{rng.uniform_int(-1, 1), std::vector<long>(n)};
    for (auto& x : s.x) x = rng.uniform_int(-1, 1);
    terms[s] += random_coeff(n, rng);
  }
  return AlgebraElement(n, std::move(terms));
}

}  // namespace

CheckReport check_interior_agreement(std::size_t n, double q, long N, long pairs,
                                     std::uint64_t seed, double tol) {
  const auto t0 = Clock::now();
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "interior agreement needs N >= 2");
  if (pairs < 1) throw Error(ErrorCode::InvalidArgument, "pairs must be >= 1");
  CheckReport report("interior-agreement");
  SeededRng rng(seed);
  double conv_residual = 0.0;
  double adj_residual = 0.0;
  Tally conv, adj;
  long conv_disagree = 0;
  long adj_disagree = 0;
  for (long p = 0; p < pairs; ++p) {
    const AlgebraElement f = random_element(n, rng);
    const AlgebraElement g = random_element(n, rng);
    ReprConfig cfg = make_cfg(n, N, q, 0.0, 0.0);
    cfg.theta = 2.0 * std::numbers::pi * rng.uniform01();
    for (auto& a : cfg.phi) a = 2.0 * std::numbers::pi * rng.uniform01();
    const long B = std::max({f.bandwidth(), g.bandwidth(), 1L});
    const auto cols = interior_mask(cfg, B);

    const auto mf = to_matrix(f, cfg);
    const auto lhs = to_matrix(convolve(f, g), cfg);
    const auto rhs = multiply(mf, to_matrix(g, cfg));
    const double rc = max_abs_on_columns(lhs - rhs, cols);
    conv_residual = std::max(conv_residual, rc);
    conv.record(rc < tol, "pair " + std::to_string(p) + " residual " + fmt(rc));
    conv_disagree += rc > kCoherenceTolerance;

    const double ra = max_abs_on_block(to_matrix(adjoint(f), cfg) - adjoint(mf), cols, cols);
    adj_residual = std::max(adj_residual, ra);
    adj.record(ra < tol, "element " + std::to_string(p) + " residual " + fmt(ra));
    adj_disagree += ra > kCoherenceTolerance;
  }
  const std::string t = tag(n, q);
  CheckResult rc = conv.result("repr.interior_agreement" + t);
  rc.residual = conv_residual;
  rc.oracle_disagreements = conv_disagree;
  report.add(rc);
  CheckResult ra = adj.result("repr.adjoint_agreement" + t);
  ra.residual = adj_residual;
  ra.oracle_disagreements = adj_disagree;
  report.add(ra);
  report.set_wall_time(seconds_since(t0));
  return report;
}

CheckReport check_lemma_restrictions(std::size_t n, double q, long N, std::size_t L) {
  const auto t0 = Clock::now();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "the restriction suite needs n >= 2");
  CheckReport report("lemma-restrictions");
  const GeneratorSet gens = build_generators(n, q);
  const std::string t = tag(n, q);
  const std::size_t last = n - 1;

  // Faces i = 1..n-1 are slots 0..n-2.
  Tally vanish, circle, product;
  for (std::size_t s = 0; s < last; ++s) {
    const std::size_t pivot = n + 1 - s;  // the m whose acting slot is s
    for (std::size_t m = 1; m <= n + 1; ++m) {
      const AlgebraElement r = rho_face(gens.gen(m), s);
      const std::string what = "rho_" + std::to_string(s + 1) + "(Y" + std::to_string(m) + ")";
      if (m < pivot) {
        vanish.record(is_zero(r) == ZeroTest::ProvablyZero, what + " = " + serialize(r));
      } else if (m == pivot) {
        Coeff c = Coeff::one();
        for (std::size_t l = 0; l < s; ++l) c = c * Coeff::pow(static_cast<int>(l), 1, 0);
        const AlgebraElement expected =
            AlgebraElement::single(n, Shift{1, unit_vector(n, s, -1)}, c, face_bit(s));
        circle.record(equal(r, expected) == ZeroTest::ProvablyZero, what + " = " + serialize(r));
      } else {
        bool ok = !r.empty();
        for (const auto& [sh, c] : r.terms()) {
          ok = ok && c.max_slot() < static_cast<int>(s) && sh.x[last] == 0;
        }
        product.record(ok, what + " = " + serialize(r));
      }
    }
  }
  report.add(vanish.result("lemma.a_vanishing" + t));
  CheckResult cr = circle.result("lemma.b_circle_mode" + t);
  cr.detail += "; circle generator reported as slot mode -1";
  report.add(cr);
  report.add(product.result("lemma.c_product_form" + t));

  Tally pullback, boundary;
  for_each_word(gens, L, [&](const Word& w) {
    for (std::size_t s = 0; s < last; ++s) {
      const AlgebraElement a = rho_face(w.element, s);
      const AlgebraElement back = pi_pullback_ni(rho_face(a, last), s);
      pullback.record(equal(back, a) == ZeroTest::ProvablyZero,
                      "face " + std::to_string(s + 1) + ", word " + w.name());
    }
    const AlgebraElement b = rho_face(w.element, last);
    bool ok = equal(rho_face(pullback_last_slot(b), last), b) == ZeroTest::ProvablyZero;
    const BoundaryFamily fam = rho_boundary(w.element);
    const BoundaryFamily again = pi_pullback_n_boundary(fam.back());
    for (std::size_t i = 0; i < n; ++i) ok = ok && equal(again[i], fam[i]) == ZeroTest::ProvablyZero;
    boundary.record(ok, "word " + w.name());
    return true;
  });
  report.add(pullback.result("lemma.d_pullback_identity" + t));
  report.add(boundary.result("lemma.e_boundary_isomorphism" + t));

  // Numeric: the matrix of rho_s(f) is the matrix of f on the columns over F_s.
  double residual = 0.0;
  long checked = 0;
  const Window win(n, N);
  for_each_angle(AngleSet{}, n, N, q, [&](const ReprConfig& cfg) {
    for (std::size_t m = 1; m <= n + 1; ++m) {
      for (const AlgebraElement& f : {gens.gen(m), adjoint(gens.gen(m))}) {
        const auto full = to_matrix(f, cfg);
        for (std::size_t s = 0; s < n; ++s) {
          const auto face = to_matrix(rho_face(f, s), cfg);
          for (std::size_t c = 0; c < win.size(); ++c) {
            const bool over_face = win.unit(c)[s].is_inf();
            for (std::size_t r = 0; r < win.size(); ++r) {
              const Complex expect = over_face ? full(r, c) : Complex(0.0);
              residual = std::max(residual, std::abs(face(r, c) - expect));
            }
          }
          ++checked;
        }
      }
    }
  });
  CheckResult num;
  num.name = "lemma.restriction_matrices" + t;
  num.count = checked;
  num.residual = residual;
  num.status = residual < 1e-12 ? CheckStatus::Pass : CheckStatus::Fail;
  num.oracle_disagreements = residual > kCoherenceTolerance ? 1 : 0;
  num.detail = "window N=" + std::to_string(N);
  report.add(num);

  // The last face carries the n-1 sphere through phi_*.
  const GeneratorSet lower = build_generators(n - 1, q);
  Tally transport;
  transport.record(is_zero(rho_face(gens.gen(1), last)) == ZeroTest::ProvablyZero,
                   "rho_n(Y1) is nonzero");
  for (std::size_t m = 1; m <= n; ++m) {
    const AlgebraElement moved = transport_phi(embed_lower(lower.gen(m)));
    const AlgebraElement expected = rho_face(gens.gen(m + 1), last);
    transport.record(equal(moved, expected) == ZeroTest::ProvablyZero,
                     "Y" + std::to_string(m) + " of the lower sphere");
  }
  report.add(transport.result("lemma.phi_transport" + t));

  report.set_wall_time(seconds_since(t0));
  return report;
}

CheckReport check_theorem_support(std::size_t n, double q, std::size_t L, long scan_N) {
  const auto t0 = Clock::now();
  CheckReport report("theorem-support");
  const GeneratorSet gens = build_generators(n, q);
  const std::string t = tag(n, q) + "[L=" + std::to_string(L) + "]";
  const auto units = enumerate_units(n, scan_N);

  Tally support, sim;
  std::string support_unknown, sim_unknown;
  long scan_violations = 0;
  long disagreements = 0;
  double scan_worst = 0.0;
  std::string first_scan;
  for_each_word(gens, L, [&](const Word& w) {
    const Certificate sc = support_subset_ftilde(w.element);
    support.record(sc.status == CertStatus::Certified,
                   w.name() + ": " + to_string(sc.status) + " " + sc.detail);
    bool sim_ok = false;
    if (sc.status == CertStatus::Certified) {
      const Certificate ic = sim_invariant(w.element);
      sim_ok = ic.status == CertStatus::Certified;
      sim.record(sim_ok, w.name() + ": " + to_string(ic.status) + " " + ic.detail);
    } else {
      sim.record(false, w.name() + ": support not certified");
    }

    // Window scan: values outside Ftilde_n or across a ~-class.
    for (const auto& [s, c] : w.element.terms()) {
      for (const auto& u : units) {
        bool valid = true;
        for (std::size_t j = 0; j < n; ++j) valid = valid && u[j].plus(s.x[j]).has_value();
        if (!valid) continue;
        const GroupoidElement g(s, u);
        const Complex v = eval(c, u, q);
        double bad = 0.0;
        if (!in_ftilde(g)) {
          bad = std::abs(v);
        } else {
          bad = std::abs(v - eval(c, canonicalize_unit(u), q));
        }
        if (bad > kCoherenceTolerance) {
          if (scan_violations == 0) first_scan = w.name() + " at " + g.str();
          ++scan_violations;
          scan_worst = std::max(scan_worst, bad);
          if (sc.status == CertStatus::Certified && (in_ftilde(g) ? sim_ok : true)) ++disagreements;
        }
      }
    }
    return true;
  });
  report.add(support.result("theorem.support_in_ftilde" + t));
  report.add(sim.result("theorem.sim_invariance" + t));

  CheckResult scan;
  scan.name = "theorem.window_scan" + t;
  scan.count = support.count;
  scan.residual = scan_worst;
  scan.status = scan_violations == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  scan.oracle_disagreements = disagreements;
  scan.detail = "violations: " + std::to_string(scan_violations) + " over units with N=" +
                std::to_string(scan_N);
  if (scan_violations > 0) scan.detail += "; first: " + first_scan;
  report.add(scan);

  // Negative control: a bare t-mode leaves Ftilde_n on every face.
  {
    const AlgebraElement t_only =
        AlgebraElement::single(n, Shift{1, std::vector<long>(n, 0)}, Coeff::one());
    const Certificate c = support_subset_ftilde(t_only);
    CheckResult r;
    r.name = "theorem.negative_control_t_only" + tag(n, q);
    r.count = 1;
    r.status = c.status == CertStatus::Refuted ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::string("support certificate: ") + to_string(c.status);
    if (c.witness) {
      r.witness = c.witness->str();
      const double v = matrix_value(t_only, *c.witness, q, AngleSet{});
      r.residual = v;
      if (v <= kCoherenceTolerance) r.oracle_disagreements = 1;
    }
    report.add(r);
  }
  // Negative control: supported in Ftilde_n but depends on a slot after the first inf.
  if (n >= 2) {
    const AlgebraElement f = AlgebraElement::single(
        n, Shift{0, std::vector<long>(n, 0)}, Coeff::sqrt(0, 0) * Coeff::pow(1, 1, 0));
    CheckResult r;
    r.name = "theorem.negative_control_sim" + tag(n, q);
    r.count = 1;
    const Certificate sc = support_subset_ftilde(f);
    if (sc.status != CertStatus::Certified) {
      r.status = CheckStatus::Fail;
      r.detail = "support unexpectedly " + std::string(to_string(sc.status));
    } else {
      const Certificate c = sim_invariant(f);
      r.status = c.status == CertStatus::Refuted ? CheckStatus::Pass : CheckStatus::Fail;
      r.detail = std::string("invariance certificate: ") + to_string(c.status);
      if (c.witness && c.partner) {
        r.witness = c.witness->str() + " vs " + c.partner->str();
        const double v = matrix_difference(f, *c.witness, *c.partner, q, AngleSet{});
        r.residual = v;
        if (v <= kCoherenceTolerance) r.oracle_disagreements = 1;
      }
    }
    report.add(r);
  }
  report.set_wall_time(seconds_since(t0));
  return report;
}

CheckReport check_set_identities(std::size_t n, const WindowBounds& window) {
  const auto t0 = Clock::now();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "set identities need n >= 2");
  CheckReport report("set-identities");
  const std::string t = "[n=" + std::to_string(n) + " zmax=" + std::to_string(window.z_max) +
                        " xmax=" + std::to_string(window.x_max) +
                        " N=" + std::to_string(window.N) + "]";
  const auto elems = enumerate_window(n, window);

  // Image of the embedded lower subgroupoid under phi_*, built point by point.
  std::set<GroupoidElement> image;
  long roundtrip_failures = 0;
  for (const auto& h : elems) {
    if (!in_ftilde_lower_embedded(h)) continue;
    const GroupoidElement g = phi_star(h);
    if (!(phi_star_inv(g) == h)) ++roundtrip_failures;
    image.insert(g);
  }
  Tally prime;
  long prime_members = 0;
  for (const auto& g : elems) {
    if (!g.w().back().is_inf()) continue;
    const bool lhs = in_ftilde_prime(g);
    prime_members += lhs ? 1 : 0;
    prime.record(lhs == (image.count(g) > 0), g.str());
  }
  CheckResult pr = prime.result("sets.ftilde_prime_is_phi_image" + t);
  pr.detail = "mismatches: " + std::to_string(prime.failures + roundtrip_failures) +
              "; members: " + std::to_string(prime_members) +
              (prime.failures ? "; first: " + prime.first_failure : std::string());
  if (roundtrip_failures > 0) pr.status = CheckStatus::Fail;
  report.add(pr);

  Tally dprime, closure;
  long dprime_members = 0;
  for (const auto& g : elems) {
    if (!in_boundary(g.w())) continue;
    const bool lhs = in_ftilde_doubleprime(g);
    dprime_members += lhs ? 1 : 0;
    dprime.record(lhs == in_ftilde_prime(pi_n_boundary(g)), g.str());
    if (lhs) closure.record(in_ftilde_doubleprime(canonicalize(g)), g.str());
  }
  CheckResult dr = dprime.result("sets.ftilde_doubleprime_via_pi" + t);
  dr.detail = "mismatches: " + std::to_string(dprime.failures) +
              "; members: " + std::to_string(dprime_members) +
              (dprime.failures ? "; first: " + dprime.first_failure : std::string());
  report.add(dr);
  CheckResult cr = closure.result("sets.canonicalize_closure" + t);
  cr.detail = "mismatches: " + std::to_string(closure.failures) +
              (closure.failures ? "; first: " + closure.first_failure : std::string());
  report.add(cr);

  report.set_wall_time(seconds_since(t0));
  return report;
}

namespace {

constexpr long kSampleMaxFinite = 5;
constexpr long kSampleMaxShift = 3;

ExtNat random_entry(SeededRng& rng) {
  const long v = rng.uniform_int(0, kSampleMaxFinite + 1);
  return v > kSampleMaxFinite ? kInf : ExtNat(v);
}

std::size_t first_inf(const Unit& w) {
  std::size_t i = 0;
  while (i < w.size() && !w[i].is_inf()) ++i;
  return i;
}

// Another representative of the class of w: entries after the first inf redrawn.
Unit random_representative(const Unit& w, SeededRng& rng) {
  Unit out = w;
  for (std::size_t j = first_inf(w) + 1; j < w.size(); ++j) out[j] = random_entry(rng);
  return out;
}

// Random element of Ftilde_n with the given source unit.
GroupoidElement random_with_source(const Unit& w, SeededRng& rng) {
  const std::size_t n = w.size();
  Shift s{rng.uniform_int(-kSampleMaxShift, kSampleMaxShift), std::vector<long>(n, 0)};
  const std::size_t i = first_inf(w);
  long partial = 0;
  for (std::size_t j = 0; j < std::min(i, n); ++j) {
    s.x[j] = rng.uniform_int(std::max(-w[j].value(), -kSampleMaxShift), kSampleMaxShift);
    partial += s.x[j];
  }
  if (i < n) s.x[i] = -s.z - partial;
  return GroupoidElement(std::move(s), w);
}

Unit random_unit(std::size_t n, SeededRng& rng) {
  Unit w(n);
  for (auto& v : w) v = random_entry(rng);
  return w;
}

// All representatives of a class with tail entries from a small set.
std::vector<GroupoidElement> small_representatives(const GroupoidElement& g) {
  static const ExtNat kTail[] = {0, 1, 2, kInf};
  const std::size_t n = g.dim();
  const Unit base = canonicalize_unit(g.w());
  const std::size_t start = first_inf(base) + 1;
  std::vector<GroupoidElement> out;
  std::size_t combos = 1;
  for (std::size_t j = start; j < n; ++j) combos *= std::size(kTail);
  for (std::size_t k = 0; k < combos; ++k) {
    Unit w = base;
    std::size_t code = k;
    for (std::size_t j = start; j < n; ++j) {
      w[j] = kTail[code % std::size(kTail)];
      code /= std::size(kTail);
    }
    out.emplace_back(g.shift(), std::move(w));
  }
  return out;
}

}  // namespace

CheckReport check_quotient_soundness(std::size_t n, long samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  CheckReport report("quotient-soundness");
  SeededRng rng(seed);
  Tally assoc, inverse_laws, independence, oracle;
  for (long k = 0; k < samples; ++k) {
    const std::string at = "sample " + std::to_string(k);
    try {
      const GroupoidElement c = random_with_source(random_unit(n, rng), rng);
      const GroupoidElement b = random_with_source(random_representative(c.range(), rng), rng);
      const GroupoidElement a = random_with_source(random_representative(b.range(), rng), rng);

      const CanonicalClass ab = compose_classes(a, b);
      const CanonicalClass bc = compose_classes(b, c);
      assoc.record(compose_classes(ab.rep(), c) == compose_classes(a, bc.rep()),
                   at + ": " + a.str() + " " + b.str() + " " + c.str());

      const CanonicalClass A(a);
      const CanonicalClass Ainv = inverse_class(A);
      const bool inv_ok =
          compose_classes(A, Ainv) == CanonicalClass(GroupoidElement::unit_at(a.range())) &&
          compose_classes(Ainv, A) == CanonicalClass(GroupoidElement::unit_at(a.source())) &&
          inverse_class(Ainv) == A;
      inverse_laws.record(inv_ok, at + ": " + a.str());

      const GroupoidElement a2(a.shift(), random_representative(a.w(), rng));
      const GroupoidElement b2(b.shift(), random_representative(b.w(), rng));
      independence.record(compose_classes(a2, b2) == ab, at + ": " + a2.str() + " " + b2.str());

      // Compose every exactly composable pair of representatives.
      bool consistent = true;
      long pairs = 0;
      for (const auto& ar : small_representatives(a)) {
        for (const auto& br : small_representatives(b)) {
          if (ar.source() != br.range()) continue;
          ++pairs;
          consistent = consistent && CanonicalClass(compose(ar, br)) == ab;
        }
      }
      oracle.record(consistent && pairs > 0, at + ": " + a.str() + " " + b.str());
    } catch (const Error& e) {
      const std::string what = at + ": " + e.what();
      assoc.record(false, what);
      inverse_laws.record(false, what);
      independence.record(false, what);
      oracle.record(false, what);
    }
  }
  const std::string t = "[n=" + std::to_string(n) + " seed=" + std::to_string(seed) + "]";
  report.add(assoc.result("quotient.associativity" + t));
  report.add(inverse_laws.result("quotient.inverse_laws" + t));
  report.add(independence.result("quotient.representative_independence" + t));
  CheckResult o = oracle.result("quotient.bruteforce_representatives" + t);
  o.oracle_disagreements = oracle.failures;
  report.add(o);
  report.set_wall_time(seconds_since(t0));
  return report;
}

namespace {

// Orthonormal basis built by modified Gram-Schmidt with one re-orthogonalization.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return basis_.size(); }
  bool full() const { return basis_.size() == dim_; }

  void add(std::vector<Complex> v) {
    const double norm0 = norm(v);
    if (norm0 == 0.0) return;
    project_out(v);
    project_out(v);
    const double r = norm(v);
    if (r <= 1e-8 * norm0) return;
    for (auto& x : v) x /= r;
    basis_.push_back(std::move(v));
  }

  double residual(std::vector<Complex> v) const {
    project_out(v);
    project_out(v);
    return norm(v);
  }

 private:
  static double norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
  }
  void project_out(std::vector<Complex>& v) const {
    for (const auto& b : basis_) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) dot += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < dim_; ++i) v[i] -= dot * b[i];
    }
  }

  std::size_t dim_;
  std::vector<std::vector<Complex>> basis_;
};

}  // namespace

CheckReport check_exactness(std::size_t n, double q, long N) {
  const auto t0 = Clock::now();
  CheckReport report("exactness");
  const GeneratorSet gens = build_generators(n, q);
  const std::string t = tag(n, q);

  // Y_1 Y_1* lies in the kernel of the boundary restriction.
  {
    const AlgebraElement f = convolve(gens.gen(1), adjoint(gens.gen(1)));
    const Certificate c = vanishes_on_boundary(f);
    CheckResult r;
    r.name = "exactness.y1_y1star_in_ideal" + t;
    r.count = 1;
    r.status = c.status == CertStatus::Certified ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::string("boundary certificate: ") + to_string(c.status);
    double residual = 0.0;
    for_each_angle(AngleSet{}, n, N, q, [&](const ReprConfig& cfg) {
      const auto m = to_matrix(f, cfg);
      const Window win(n, N);
      for (std::size_t col = 0; col < win.size(); ++col) {
        if (!in_boundary(win.unit(col))) continue;
        for (std::size_t row = 0; row < win.size(); ++row) {
          residual = std::max(residual, std::abs(m(row, col)));
        }
      }
    });
    r.residual = residual;
    if (c.status == CertStatus::Certified && residual > kCoherenceTolerance) {
      r.oracle_disagreements = 1;
    }
    report.add(r);
  }

  // Boundary families of words agree on overlaps of faces.
  Tally compat;
  for_each_word(gens, 3, [&](const Word& w) {
    compat.record(boundary_compatible(rho_boundary(w.element)), w.name());
    return true;
  });
  report.add(compat.result("exactness.boundary_compatibility" + t));

  if (n >= 2) {
    BoundaryFamily fam = rho_boundary(AlgebraElement::unit(n));
    fam[0] = Complex(2.0) * fam[0];
    CheckResult r;
    r.name = "exactness.compatibility_negative_control" + t;
    r.count = 1;
    r.status = boundary_compatible(fam) ? CheckStatus::Fail : CheckStatus::Pass;
    r.detail = "doubled unit on the first face must be rejected";
    report.add(r);
  }

  // 1 - sum Y_m Y_m* on the 5-sphere survives on the boundary.
  {
    const GeneratorSet g2 = build_generators(2, q);
    AlgebraElement d = AlgebraElement::unit(2);
    for (std::size_t m = 1; m <= 3; ++m) d -= convolve(g2.gen(m), adjoint(g2.gen(m)));
    const Certificate c = vanishes_on_boundary(d);
    CheckResult r;
    r.name = "exactness.non_ideal_control[n=2 q=" + fmt(q) + "]";
    r.count = 1;
    r.status = c.status == CertStatus::Refuted ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::string("boundary certificate: ") + to_string(c.status);
    if (c.witness) {
      r.witness = c.witness->str();
      const double v = matrix_value(d, *c.witness, q, AngleSet{});
      r.residual = v;
      if (v <= kCoherenceTolerance) r.oracle_disagreements = 1;
    }
    report.add(r);
  }

  // Ideal richness: compressions of n = 1 words to the finite units of the
  // N = 2 window span every matrix unit.
  {
    constexpr long kN = 2;
    constexpr std::size_t kLength = 8;
    const GeneratorSet g1 = build_generators(1, q);
    const ReprConfig cfg = make_cfg(1, kN, q, 2.0 * std::numbers::pi / 7.0, 0.0);
    const auto finite = finite_mask(cfg);
    const std::size_t k = finite.size();
    Span span(k * k);
    long words = 0;
    for_each_word(g1, kLength, [&](const Word& w) {
      ++words;
      const auto m = to_matrix(w.element, cfg);
      std::vector<Complex> v;
      v.reserve(k * k);
      for (std::size_t r : finite) {
        for (std::size_t c : finite) v.push_back(m(r, c));
      }
      span.add(std::move(v));
      return !span.full();
    });
    double worst = 0.0;
    for (std::size_t e = 0; e < k * k; ++e) {
      std::vector<Complex> unit(k * k, 0.0);
      unit[e] = 1.0;
      worst = std::max(worst, span.residual(std::move(unit)));
    }
    CheckResult r;
    r.name = "exactness.ideal_richness[n=1 N=2 L=8 q=" + fmt(q) + "]";
    r.count = words;
    r.residual = worst;
    r.status = worst < 1e-8 ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = "span rank " + std::to_string(span.rank()) + " of " + std::to_string(k * k) +
               " after " + std::to_string(words) + " words";
    report.add(r);
  }

  report.set_wall_time(seconds_since(t0));
  return report;
}

CheckReport check_q_independence_proxy(std::size_t n, double q1, double q2, std::size_t L,
                                       long N) {
  const auto t0 = Clock::now();
  if (!(q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0) || q1 == q2) {
    throw Error(ErrorCode::InvalidArgument, "need two distinct q values in (0,1)");
  }
  CheckReport report("q-independence");
  const std::string t = "[n=" + std::to_string(n) + " L=" + std::to_string(L) +
                        " N=" + std::to_string(N) + " q=" + fmt(q1) + "," + fmt(q2) + "]";
  const std::vector<Word> words = words_up_to(build_generators(n, q1), L);
  const long B = std::min<long>(static_cast<long>(L), N / 2);

  std::vector<std::size_t> ranks;
  std::string gaps;
  for (double q : {q1, q2}) {
    const ReprConfig cfg =
        make_cfg(n, N, q, 2.0 * std::numbers::pi / 7.0, std::numbers::pi / 2.0);
    std::vector<TruncatedMatrix> mats;
    mats.reserve(words.size());
    for (const auto& w : words) mats.push_back(to_matrix(w.element, cfg));
    const auto cols = interior_mask(cfg, B);
    const std::size_t rank = gram_rank(mats, cols, kRankTolerance);
    ranks.push_back(rank);

    const auto eig = gram_spectrum(mats, cols);
    const double top = std::sqrt(std::max(eig.back(), 0.0));
    const std::size_t dropped = eig.size() - rank;
    const double kept_min = std::sqrt(std::max(eig[dropped], 0.0)) / top;
    const double dropped_max = dropped ? std::sqrt(std::max(eig[dropped - 1], 0.0)) / top : 0.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sq=%g: rank %zu, smallest kept %.3e, largest dropped %.3e",
                  gaps.empty() ? "" : "; ", q, rank, kept_min, dropped_max);
    gaps += buf;
  }
  CheckResult r;
  r.name = "qindep.gram_rank" + t;
  r.count = static_cast<long>(words.size());
  r.status = ranks[0] == ranks[1] ? CheckStatus::Pass : CheckStatus::Fail;
  r.detail = gaps;
  report.add(r);

  // Which shifts of which words carry a numerically nonzero coefficient.
  auto pattern = [&](double q) {
    std::vector<std::string> out;
    for (const auto& w : words) {
      std::string row = w.name() + ":";
      for (const auto& [s, c] : w.element.terms()) {
        double best = 0.0;
        for (const auto& u : probe_units(n)) best = std::max(best, std::abs(eval(c, u, q)));
        if (best > kNonzeroThreshold) row += " " + to_string(s);
      }
      out.push_back(std::move(row));
    }
    return out;
  };
  const auto p1 = pattern(q1);
  const auto p2 = pattern(q2);
  Tally same;
  for (std::size_t i = 0; i < p1.size(); ++i) same.record(p1[i] == p2[i], p1[i] + " vs " + p2[i]);
  report.add(same.result("qindep.support_pattern" + t));

  report.set_wall_time(seconds_since(t0));
  return report;
}

}  // namespace qsphere
