#include "qsphere/qsphere.h"

#include <cstring>
#include <new>
#include <numbers>
#include <string>

#include "qsphere/suites.hpp"

struct qs_element {
  qsphere::AlgebraElement value;
};
struct qs_matrix {
  qsphere::TruncatedMatrix value;
};
struct qs_report {
  qsphere::CheckReport value;
};

namespace {

thread_local std::string g_last_error;

qs_status code_of(qsphere::ErrorCode c) {
  using qsphere::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return QS_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidUnit: return QS_ERR_INVALID_UNIT;
    case ErrorCode::NotComposable: return QS_ERR_NOT_COMPOSABLE;
    case ErrorCode::NotInSubgroupoid: return QS_ERR_NOT_IN_SUBGROUPOID;
    case ErrorCode::DomainError: return QS_ERR_DOMAIN;
    case ErrorCode::NotHermitian: return QS_ERR_NOT_HERMITIAN;
    case ErrorCode::ParseError: return QS_ERR_PARSE;
  }
  return QS_ERR_INTERNAL;
}

qs_status fail(qs_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
qs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const qsphere::Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QS_ERR_INTERNAL, e.what());
  }
}

qs_status write_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed == nullptr) return fail(QS_ERR_INVALID_ARGUMENT, "needed must not be NULL");
  *needed = s.size();
  if (buf == nullptr && cap == 0) return QS_OK;
  if (buf == nullptr || cap < s.size() + 1) {
    if (buf != nullptr && cap > 0) buf[0] = '\0';
    return fail(QS_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(cap) + " bytes, need " +
                                             std::to_string(s.size() + 1));
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return QS_OK;
}

std::size_t checked_n(int n) {
  if (n < 1 || n > 31) throw qsphere::Error(qsphere::ErrorCode::InvalidArgument, "n must lie in [1, 31]");
  return static_cast<std::size_t>(n);
}

}  // namespace

extern "C" {

const char* qs_last_error(void) { return g_last_error.c_str(); }

const char* qs_status_string(qs_status status) {
  switch (status) {
    case QS_OK: return "ok";
    case QS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QS_ERR_INVALID_UNIT: return "invalid unit";
    case QS_ERR_NOT_COMPOSABLE: return "not composable";
    case QS_ERR_NOT_IN_SUBGROUPOID: return "not in subgroupoid";
    case QS_ERR_DOMAIN: return "domain error";
    case QS_ERR_NOT_HERMITIAN: return "not Hermitian";
    case QS_ERR_PARSE: return "parse error";
    case QS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case QS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qs_status qs_element_generator(int n, int m, int adjoint, qs_element** out) {
  return guarded([&] {
    if (out == nullptr) return fail(QS_ERR_INVALID_ARGUMENT, "out must not be NULL");
    const std::size_t dim = checked_n(n);
    if (m < 1 || m > n + 1) return fail(QS_ERR_INVALID_ARGUMENT, "generator index out of range");
    const auto gens = qsphere::build_generators(dim, 0.5);
    const auto& y = gens.gen(static_cast<std::size_t>(m));
    *out = new qs_element{adjoint ? qsphere::adjoint(y) : y};
    return QS_OK;
  });
}

qs_status qs_element_parse(int n, const char* expr, qs_element** out) {
  return guarded([&] {
    if (out == nullptr || expr == nullptr) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    const auto gens = qsphere::build_generators(checked_n(n), 0.5);
    *out = new qs_element{qsphere::parse_word_expression(gens, expr)};
    return QS_OK;
  });
}

qs_status qs_element_convolve(const qs_element* f, const qs_element* g, qs_element** out) {
  return guarded([&] {
    if (!f || !g || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    if (f->value.dim() != g->value.dim() || f->value.pinned() != g->value.pinned()) {
      return fail(QS_ERR_INVALID_ARGUMENT, "elements live on different groupoids");
    }
    *out = new qs_element{qsphere::convolve(f->value, g->value)};
    return QS_OK;
  });
}

qs_status qs_element_adjoint(const qs_element* f, qs_element** out) {
  return guarded([&] {
    if (!f || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = new qs_element{qsphere::adjoint(f->value)};
    return QS_OK;
  });
}

qs_status qs_element_is_zero(const qs_element* f, int* out) {
  return guarded([&] {
    if (!f || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = qsphere::is_zero(f->value) == qsphere::ZeroTest::ProvablyZero ? 1 : 0;
    return QS_OK;
  });
}

qs_status qs_element_to_string(const qs_element* f, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!f) return fail(QS_ERR_INVALID_ARGUMENT, "NULL element");
    return write_string(qsphere::serialize(f->value), buf, cap, needed);
  });
}

void qs_element_free(qs_element* f) { delete f; }

qs_status qs_matrix_build(const qs_element* f, const qs_repr_config* cfg, qs_matrix** out) {
  return guarded([&] {
    if (!f || !cfg || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    qsphere::ReprConfig rc;
    rc.n = checked_n(cfg->n);
    rc.N = cfg->N;
    rc.q = cfg->q;
    rc.theta = cfg->theta;
    if (cfg->phi != nullptr) rc.phi.assign(cfg->phi, cfg->phi + cfg->phi_count);
    *out = new qs_matrix{qsphere::to_matrix(f->value, rc)};
    return QS_OK;
  });
}

qs_status qs_matrix_gram(const qs_matrix* m, qs_matrix** out) {
  return guarded([&] {
    if (!m || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = new qs_matrix{qsphere::multiply(qsphere::adjoint(m->value), m->value)};
    return QS_OK;
  });
}

qs_status qs_matrix_dim(const qs_matrix* m, size_t* out) {
  return guarded([&] {
    if (!m || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = m->value.dim();
    return QS_OK;
  });
}

qs_status qs_matrix_export(const qs_matrix* m, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!m) return fail(QS_ERR_INVALID_ARGUMENT, "NULL matrix");
    return write_string(qsphere::export_matrix(m->value), buf, cap, needed);
  });
}

qs_status qs_matrix_spectrum(const qs_matrix* m, double* out, size_t cap, size_t* count) {
  return guarded([&] {
    if (!m || !count) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *count = m->value.dim();
    if (out == nullptr && cap == 0) return QS_OK;
    if (out == nullptr || cap < m->value.dim()) {
      return fail(QS_ERR_BUFFER_TOO_SMALL, "eigenvalue buffer too small");
    }
    const auto eig = qsphere::hermitian_spectrum(m->value);
    std::copy(eig.begin(), eig.end(), out);
    return QS_OK;
  });
}

qs_status qs_matrix_op_norm(const qs_matrix* m, double* out) {
  return guarded([&] {
    if (!m || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    *out = qsphere::op_norm_estimate(m->value);
    return QS_OK;
  });
}

void qs_matrix_free(qs_matrix* m) { delete m; }

qs_status qs_check_params_init(qs_check_params* p) {
  if (p == nullptr) return fail(QS_ERR_INVALID_ARGUMENT, "NULL params");
  const qsphere::SuiteParams d;
  std::memset(p, 0, sizeof *p);
  p->n = static_cast<int>(d.n);
  p->q[0] = d.q.front();
  p->q_count = 1;
  p->N = d.N;
  p->theta_count = d.angles.theta.size();
  std::copy(d.angles.theta.begin(), d.angles.theta.end(), p->theta);
  p->phi_count = d.angles.phi.size();
  std::copy(d.angles.phi.begin(), d.angles.phi.end(), p->phi);
  p->L = static_cast<int>(d.L);
  p->zmax = d.z_max;
  p->xmax = d.x_max;
  p->tol = d.tol;
  p->seed = d.seed;
  p->samples = d.samples;
  return QS_OK;
}

qs_status qs_run_check(qs_check_kind kind, const qs_check_params* p, qs_report** out) {
  return guarded([&] {
    if (!p || !out) return fail(QS_ERR_INVALID_ARGUMENT, "NULL argument");
    if (p->q_count > QS_MAX_LIST || p->theta_count > QS_MAX_LIST || p->phi_count > QS_MAX_LIST) {
      return fail(QS_ERR_INVALID_ARGUMENT, "list longer than QS_MAX_LIST");
    }
    if (p->n < 1 || p->L < 0) return fail(QS_ERR_INVALID_ARGUMENT, "n must be >= 1 and L >= 0");
    qsphere::SuiteKind k;
    switch (kind) {
      case QS_CHECK_RELATIONS: k = qsphere::SuiteKind::Relations; break;
      case QS_CHECK_LEMMA: k = qsphere::SuiteKind::Lemma; break;
      case QS_CHECK_THEOREM: k = qsphere::SuiteKind::Theorem; break;
      case QS_CHECK_SETS: k = qsphere::SuiteKind::Sets; break;
      case QS_CHECK_EXACTNESS: k = qsphere::SuiteKind::Exactness; break;
      case QS_CHECK_QINDEP: k = qsphere::SuiteKind::QIndependence; break;
      default: return fail(QS_ERR_INVALID_ARGUMENT, "unknown check kind");
    }
    qsphere::SuiteParams sp;
    sp.n = static_cast<std::size_t>(p->n);
    sp.q.assign(p->q, p->q + p->q_count);
    sp.N = p->N;
    sp.angles.theta.assign(p->theta, p->theta + p->theta_count);
    sp.angles.phi.assign(p->phi, p->phi + p->phi_count);
    sp.L = static_cast<std::size_t>(p->L);
    sp.z_max = p->zmax;
    sp.x_max = p->xmax;
    sp.tol = p->tol;
    sp.seed = p->seed;
    sp.samples = p->samples;
    *out = new qs_report{qsphere::run_suite(k, sp)};
    return QS_OK;
  });
}

int qs_report_passed(const qs_report* r) { return r != nullptr && r->value.passed() ? 1 : 0; }

qs_status qs_report_json(const qs_report* r, int include_timing, char* buf, size_t cap,
                         size_t* needed) {
  return guarded([&] {
    if (!r) return fail(QS_ERR_INVALID_ARGUMENT, "NULL report");
    return write_string(r->value.to_json(include_timing != 0), buf, cap, needed);
  });
}

void qs_report_free(qs_report* r) { delete r; }

}  // extern "C"
