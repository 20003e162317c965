// qsphere: batch front-end over the C API.
//
// Exit codes: 0 all checks passed, 1 a check failed (or an internal error),
// 2 bad flags or invalid input.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/qsphere.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  int n = 2;
  std::vector<double> q;
  long N = 0;
  std::vector<double> theta;
  std::vector<double> phi;
  int L = -1;
  long zmax = 3;
  long xmax = 3;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  long samples = 10000;
  std::string out;
  bool timing = false;
  std::string word;
  bool gram = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int status_exit(qs_status s) {
  return s == QS_ERR_INTERNAL ? kExitFail : kExitUsage;
}

int report_error(qs_status s) {
  std::cerr << "qsphere: " << qs_status_string(s) << ": " << qs_last_error() << "\n";
  return status_exit(s);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + o.out);
  f << text;
  if (!f) throw UsageError("failed writing " + o.out);
}

void validate(const Options& o) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  for (double q : o.q) {
    if (!(q > 0.0 && q < 1.0)) throw UsageError("--q values must lie in (0,1)");
  }
  if (o.N < 1) throw UsageError("--N must be >= 1");
  if (!(o.tol > 0.0)) throw UsageError("--tol must be > 0");
  for (const auto* list : {&o.theta, &o.phi}) {
    for (double a : *list) {
      if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) throw UsageError("angles must lie in [0, 2pi)");
    }
  }
  if (o.q.size() > QS_MAX_LIST || o.theta.size() > QS_MAX_LIST || o.phi.size() > QS_MAX_LIST) {
    throw UsageError("at most " + std::to_string(QS_MAX_LIST) + " values per list");
  }
}

template <class F>
std::string fetch_string(F&& call) {
  size_t needed = 0;
  if (qs_status s = call(nullptr, 0, &needed); s != QS_OK) throw s;
  std::string text(needed + 1, '\0');
  if (qs_status s = call(text.data(), text.size(), &needed); s != QS_OK) throw s;
  text.resize(needed);
  return text;
}

int run_check(qs_check_kind kind, const Options& o) {
  qs_check_params p;
  qs_check_params_init(&p);
  p.n = o.n;
  p.q_count = o.q.size();
  std::copy(o.q.begin(), o.q.end(), p.q);
  p.N = o.N;
  if (!o.theta.empty()) {
    p.theta_count = o.theta.size();
    std::copy(o.theta.begin(), o.theta.end(), p.theta);
  }
  if (!o.phi.empty()) {
    p.phi_count = o.phi.size();
    std::copy(o.phi.begin(), o.phi.end(), p.phi);
  }
  p.L = o.L;
  p.zmax = o.zmax;
  p.xmax = o.xmax;
  p.tol = o.tol;
  p.seed = o.seed;
  p.samples = o.samples;

  qs_report* report = nullptr;
  if (qs_status s = qs_run_check(kind, &p, &report); s != QS_OK) return report_error(s);
  std::string json;
  try {
    json = fetch_string([&](char* b, size_t c, size_t* n) {
      return qs_report_json(report, o.timing ? 1 : 0, b, c, n);
    });
  } catch (qs_status s) {
    qs_report_free(report);
    return report_error(s);
  }
  const bool passed = qs_report_passed(report) != 0;
  qs_report_free(report);
  emit(o, json);
  if (!passed) std::cerr << "qsphere: some checks failed\n";
  return passed ? kExitPass : kExitFail;
}

// Builds the window matrix of --word; the caller frees both handles.
int build_matrix(const Options& o, qs_element** elem, qs_matrix** mat) {
  if (o.word.empty()) throw UsageError("--word is required");
  if (o.q.size() > 1 || o.theta.size() > 1) throw UsageError("represent takes a single q and theta");
  if (!o.phi.empty() && o.phi.size() != 1 && o.phi.size() != static_cast<size_t>(o.n)) {
    throw UsageError("--phi takes one angle or one per slot");
  }
  if (qs_status s = qs_element_parse(o.n, o.word.c_str(), elem); s != QS_OK) return report_error(s);
  std::vector<double> phi(static_cast<size_t>(o.n), 0.0);
  if (o.phi.size() == 1) std::fill(phi.begin(), phi.end(), o.phi[0]);
  if (o.phi.size() == phi.size()) phi = o.phi;
  const qs_repr_config cfg{o.n, o.N, o.q.front(), o.theta.empty() ? 0.0 : o.theta.front(),
                           phi.data(), phi.size()};
  if (qs_status s = qs_matrix_build(*elem, &cfg, mat); s != QS_OK) return report_error(s);
  return kExitPass;
}

int run_represent(const Options& o) {
  qs_element* elem = nullptr;
  qs_matrix* mat = nullptr;
  int rc = build_matrix(o, &elem, &mat);
  if (rc == kExitPass) {
    try {
      emit(o, fetch_string([&](char* b, size_t c, size_t* n) { return qs_matrix_export(mat, b, c, n); }));
    } catch (qs_status s) {
      rc = report_error(s);
    }
  }
  qs_matrix_free(mat);
  qs_element_free(elem);
  return rc;
}

int run_spectrum(const Options& o) {
  qs_element* elem = nullptr;
  qs_matrix* mat = nullptr;
  int rc = build_matrix(o, &elem, &mat);
  if (rc == kExitPass && o.gram) {
    qs_matrix* g = nullptr;
    if (qs_status s = qs_matrix_gram(mat, &g); s != QS_OK) {
      rc = report_error(s);
    } else {
      qs_matrix_free(mat);
      mat = g;
    }
  }
  if (rc == kExitPass) {
    size_t dim = 0;
    qs_matrix_dim(mat, &dim);
    std::vector<double> eig(dim);
    double norm = 0.0;
    qs_status s = qs_matrix_spectrum(mat, eig.data(), eig.size(), &dim);
    if (s == QS_OK) s = qs_matrix_op_norm(mat, &norm);
    if (s != QS_OK) {
      rc = report_error(s);
    } else {
      std::string text = "%%Spectrum n=" + std::to_string(o.n) + " N=" + std::to_string(o.N) +
                         " dim=" + std::to_string(dim) + " gram=" + (o.gram ? "1" : "0") + "\n";
      char buf[64];
      for (double e : eig) {
        std::snprintf(buf, sizeof buf, "%.17g\n", e);
        text += buf;
      }
      std::snprintf(buf, sizeof buf, "%%%%OpNorm %.17g\n", norm);
      text += buf;
      emit(o, text);
    }
  }
  qs_matrix_free(mat);
  qs_element_free(elem);
  return rc;
}

struct Subcommand {
  const char* name;
  const char* help;
  std::optional<qs_check_kind> kind;
  long default_N;
  int default_L;
  std::vector<double> default_q;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum sphere groupoid checks and window representations"};
  app.require_subcommand(1);

  const std::vector<Subcommand> commands = {
      {"check-relations", "SU(2)_q and sphere relations, interior agreement",
       QS_CHECK_RELATIONS, 10, 3, {0.5}},
      {"check-lemma", "face restrictions and pullback identities", QS_CHECK_LEMMA, 3, 3, {0.5}},
      {"check-theorem", "support and ~-invariance of words", QS_CHECK_THEOREM, 3, 3, {0.5}},
      {"check-sets", "set identities and quotient groupoid laws", QS_CHECK_SETS, 3, 3, {0.5}},
      {"check-exactness", "boundary ideal, compatibility, richness", QS_CHECK_EXACTNESS, 4, 3, {0.5}},
      {"check-qindep", "Gram ranks and support patterns at two q", QS_CHECK_QINDEP, 8, 3,
       {0.3, 0.7}},
      {"represent", "export the window matrix of --word", std::nullopt, 4, 0, {0.5}},
      {"spectrum", "eigenvalues of the window matrix of --word", std::nullopt, 4, 0, {0.5}},
  };

  Options opt;
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--n", opt.n, "number of slots (sphere S^{2n+1})");
    sub->add_option("--q", opt.q, "deformation parameter(s) in (0,1)")->delimiter(',');
    sub->add_option("--N", opt.N, "window cutoff");
    sub->add_option("--theta", opt.theta, "z-mode angle(s) in [0, 2pi)")->delimiter(',');
    sub->add_option("--phi", opt.phi, "circle-mode angle(s) in [0, 2pi)")->delimiter(',');
    sub->add_option("--out", opt.out, "output path (default: standard output)");
    if (c.kind) {
      sub->add_option("--L", opt.L, "word length bound");
      sub->add_option("--zmax", opt.zmax, "window bound on |z|");
      sub->add_option("--xmax", opt.xmax, "window bound on |x_i|");
      sub->add_option("--tol", opt.tol, "numeric residual tolerance");
      sub->add_option("--seed", opt.seed, "seed of the sampling generator");
      sub->add_option("--samples", opt.samples, "quotient-law samples");
      sub->add_flag("--timing", opt.timing, "include wall time in the report");
    } else {
      sub->add_option("--word", opt.word, "element, e.g. \"Y1*.Y1 + Y2*.Y2\"")->required();
      if (std::string(c.name) == "spectrum") sub->add_flag("--gram", opt.gram, "use M^H M");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qsphere: " << e.what() << "\n";
    return kExitUsage;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const Subcommand& c = commands[i];
    CLI::App* sub = subs[i];
    if (sub->count("--N") == 0) opt.N = c.default_N;
    if (sub->count("--q") == 0) opt.q = c.default_q;
    if (c.kind && sub->count("--L") == 0) opt.L = c.default_L;
    if (c.kind && *c.kind == QS_CHECK_QINDEP && sub->count("--n") == 0) opt.n = 1;
    try {
      validate(opt);
      if (c.kind) return run_check(*c.kind, opt);
      return std::string(c.name) == "represent" ? run_represent(opt) : run_spectrum(opt);
    } catch (const UsageError& e) {
      std::cerr << "qsphere: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}
