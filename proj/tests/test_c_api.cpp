#include <doctest.h>

#include <string>
#include <vector>

#include "qsphere/qsphere.h"

namespace {

std::string element_text(const qs_element* e) {
  size_t needed = 0;
  REQUIRE(qs_element_to_string(e, nullptr, 0, &needed) == QS_OK);
  std::string s(needed + 1, '\0');
  REQUIRE(qs_element_to_string(e, s.data(), s.size(), &needed) == QS_OK);
  s.resize(needed);
  return s;
}

}  // namespace

TEST_CASE("elements through the C interface") {
  qs_element* y = nullptr;
  qs_element* ys = nullptr;
  qs_element* prod = nullptr;
  REQUIRE(qs_element_generator(1, 2, 0, &y) == QS_OK);
  REQUIRE(qs_element_adjoint(y, &ys) == QS_OK);
  REQUIRE(qs_element_convolve(ys, y, &prod) == QS_OK);
  int zero = -1;
  REQUIRE(qs_element_is_zero(prod, &zero) == QS_OK);
  CHECK(zero == 0);

  qs_element* ident = nullptr;
  REQUIRE(qs_element_parse(1, "Y1*.Y1 + Y2*.Y2 - 1", &ident) == QS_OK);
  REQUIRE(qs_element_is_zero(ident, &zero) == QS_OK);
  CHECK(zero == 1);

  qs_element* parsed = nullptr;
  REQUIRE(qs_element_parse(1, "Y2*.Y2", &parsed) == QS_OK);
  CHECK(element_text(parsed) == element_text(prod));

  char small[2];
  size_t needed = 0;
  CHECK(qs_element_to_string(prod, small, sizeof small, &needed) == QS_ERR_BUFFER_TOO_SMALL);
  CHECK(needed > 1);
  CHECK(small[0] == '\0');

  qs_element_free(parsed);
  qs_element_free(ident);
  qs_element_free(prod);
  qs_element_free(ys);
  qs_element_free(y);
  qs_element_free(nullptr);
}

TEST_CASE("error reporting") {
  qs_element* e = nullptr;
  CHECK(qs_element_parse(2, "Y9", &e) == QS_ERR_PARSE);
  CHECK(std::string(qs_last_error()).find("Y") != std::string::npos);
  CHECK(e == nullptr);
  CHECK(qs_element_generator(0, 1, 0, &e) == QS_ERR_INVALID_ARGUMENT);
  CHECK(qs_element_generator(2, 4, 0, &e) == QS_ERR_INVALID_ARGUMENT);
  CHECK(qs_element_generator(2, 1, 0, nullptr) == QS_ERR_INVALID_ARGUMENT);

  qs_element* a = nullptr;
  qs_element* b = nullptr;
  REQUIRE(qs_element_generator(1, 1, 0, &a) == QS_OK);
  REQUIRE(qs_element_generator(2, 1, 0, &b) == QS_OK);
  qs_element* out = nullptr;
  CHECK(qs_element_convolve(a, b, &out) == QS_ERR_INVALID_ARGUMENT);
  qs_element_free(a);
  qs_element_free(b);
  CHECK(std::string(qs_status_string(QS_ERR_NOT_HERMITIAN)) == "not Hermitian");
}

TEST_CASE("matrices through the C interface") {
  qs_element* s = nullptr;
  REQUIRE(qs_element_parse(2, "Y1*.Y1 + Y2*.Y2 + Y3*.Y3", &s) == QS_OK);
  const double phi[2] = {0.5, 1.0};
  const qs_repr_config cfg{2, 3, 0.5, 0.25, phi, 2};
  qs_matrix* m = nullptr;
  REQUIRE(qs_matrix_build(s, &cfg, &m) == QS_OK);
  size_t dim = 0;
  REQUIRE(qs_matrix_dim(m, &dim) == QS_OK);
  CHECK(dim == 25);
  std::vector<double> eig(dim);
  size_t count = 0;
  REQUIRE(qs_matrix_spectrum(m, eig.data(), eig.size(), &count) == QS_OK);
  CHECK(count == dim);
  for (double v : eig) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  double norm = 0;
  REQUIRE(qs_matrix_op_norm(m, &norm) == QS_OK);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

  size_t needed = 0;
  REQUIRE(qs_matrix_export(m, nullptr, 0, &needed) == QS_OK);
  std::string text(needed + 1, '\0');
  REQUIRE(qs_matrix_export(m, text.data(), text.size(), &needed) == QS_OK);
  CHECK(text.rfind("%%GroupoidMatrix n=2 N=3", 0) == 0);

  qs_element* y = nullptr;
  qs_matrix* ym = nullptr;
  qs_matrix* gram = nullptr;
  REQUIRE(qs_element_generator(2, 2, 0, &y) == QS_OK);
  REQUIRE(qs_matrix_build(y, &cfg, &ym) == QS_OK);
  CHECK(qs_matrix_spectrum(ym, eig.data(), eig.size(), &count) == QS_ERR_NOT_HERMITIAN);
  REQUIRE(qs_matrix_gram(ym, &gram) == QS_OK);
  CHECK(qs_matrix_spectrum(gram, eig.data(), eig.size(), &count) == QS_OK);
  CHECK(qs_matrix_spectrum(gram, eig.data(), 3, &count) == QS_ERR_BUFFER_TOO_SMALL);

  const qs_repr_config bad{2, 3, 1.5, 0.0, nullptr, 0};
  qs_matrix* none = nullptr;
  CHECK(qs_matrix_build(s, &bad, &none) == QS_ERR_INVALID_ARGUMENT);

  qs_matrix_free(gram);
  qs_matrix_free(ym);
  qs_element_free(y);
  qs_matrix_free(m);
  qs_element_free(s);
}

TEST_CASE("checks through the C interface") {
  qs_check_params p;
  REQUIRE(qs_check_params_init(&p) == QS_OK);
  CHECK(p.n == 2);
  CHECK(p.q_count == 1);
  CHECK(p.theta_count == 3);
  p.N = 2;
  p.zmax = 1;
  p.xmax = 1;
  p.samples = 200;
  qs_report* r = nullptr;
  REQUIRE(qs_run_check(QS_CHECK_SETS, &p, &r) == QS_OK);
  CHECK(qs_report_passed(r) == 1);
  size_t needed = 0;
  REQUIRE(qs_report_json(r, 0, nullptr, 0, &needed) == QS_OK);
  std::string json(needed + 1, '\0');
  REQUIRE(qs_report_json(r, 0, json.data(), json.size(), &needed) == QS_OK);
  json.resize(needed);
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  qs_report_free(r);

  p.n = 1;
  CHECK(qs_run_check(QS_CHECK_LEMMA, &p, &r) == QS_ERR_INVALID_ARGUMENT);
  CHECK(qs_run_check(static_cast<qs_check_kind>(42), &p, &r) == QS_ERR_INVALID_ARGUMENT);
  CHECK(qs_report_passed(nullptr) == 0);
}
