#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsphere/spheres.hpp"
#include "qsphere/truncated.hpp"

using namespace qsphere;

namespace {

ReprConfig config(std::size_t n, long N, double q = 0.5) {
  ReprConfig c;
  c.n = n;
  c.N = N;
  c.q = q;
  return c;
}

}  // namespace

TEST_CASE("window indexing") {
  const Window w(2, 3);
  CHECK(w.size() == 25);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.index(w.unit(i)) == i);
  CHECK(w.unit(24) == Unit{kInf, kInf});
  CHECK(w.unit(4) == Unit{0, kInf});
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(config(1, 2).validate());
  CHECK_THROWS_AS(config(1, 0).validate(), Error);
  CHECK_THROWS_AS(config(1, 2, 1.0).validate(), Error);
  auto c = config(2, 2);
  c.theta = 2 * std::numbers::pi;
  CHECK_THROWS_AS(c.validate(), Error);
  c.theta = 0;
  c.phi = {0.1};
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("matrix of alpha-star on N = 2") {
  auto cfg = config(1, 2, 0.5);
  cfg.phi = {0.9};
  const auto f = AlgebraElement::single(1, Shift{0, {-1}}, Coeff::sqrt(0, 0));
  const auto m = to_matrix(f, cfg);
  REQUIRE(m.dim() == 4);
  // Rows and columns: 0, 1, 2, inf.
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      Complex expect = 0.0;
      if (c >= 1 && c <= 2 && r == c - 1) expect = std::sqrt(1 - std::pow(0.25, static_cast<double>(c)));
      if (r == 3 && c == 3) expect = std::polar(1.0, -0.9);
      CHECK(std::abs(m(r, c) - expect) < 1e-15);
    }
  }
  // Same entries from the evaluator.
  for (std::size_t c = 1; c <= 2; ++c) {
    const GroupoidElement g(0, {-1}, {static_cast<long>(c)});
    CHECK(std::abs(m(c - 1, c) - f.value_at(g, 0.5)) < 1e-15);
  }
}

TEST_CASE("unit and diagonal matrices") {
  const auto cfg = config(2, 3);
  const auto id = to_matrix(AlgebraElement::unit(2), cfg);
  CHECK(max_abs(id - TruncatedMatrix::identity(cfg)) == 0.0);

  const auto c1 = config(1, 4);
  const auto g = to_matrix(AlgebraElement::single(1, Shift{0, {0}}, Coeff::pow(0, 1, 0)), c1);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(std::abs(g(k, k) - std::pow(0.5, static_cast<double>(k))) < 1e-16);
  CHECK(g(5, 5) == Complex(0.0));
}

TEST_CASE("sparse and dense agree") {
  const auto gens = build_generators(2, 0.5);
  auto cfg = config(2, 4);
  cfg.theta = 1.0;
  cfg.phi = {0.2, 2.2};
  for (const auto& w : words_up_to(gens, 2)) {
    const auto dense = to_matrix(w.element, cfg);
    const auto sparse = to_sparse(w.element, cfg);
    TruncatedMatrix rebuilt(cfg, sparse.dim);
    for (std::size_t c = 0; c < sparse.cols.size(); ++c) {
      for (const auto& [r, v] : sparse.cols[c]) rebuilt(r, c) = v;
    }
    CHECK(max_abs(dense - rebuilt) == 0.0);
  }
}

TEST_CASE("interior mask") {
  const auto cfg = config(1, 4);
  const Window w(1, 4);
  const auto mask = interior_mask(cfg, 1);
  std::vector<Unit> units;
  for (auto i : mask) units.push_back(w.unit(i));
  CHECK(units == std::vector<Unit>{{1}, {2}, {3}, {kInf}});
  CHECK(interior_mask(cfg, 0).size() == w.size());
  CHECK_THROWS_AS(interior_mask(config(1, 2), 2), Error);
  CHECK(finite_mask(config(2, 2)).size() == 9);
}

TEST_CASE("hermitian spectrum") {
  const auto id = TruncatedMatrix::identity(config(2, 2));
  for (double e : hermitian_spectrum(id)) CHECK(std::abs(e - 1.0) < 1e-15);

  // diag(q^{2k}), k = 0..N, and 0 at inf.
  const long N = 5;
  const auto c1 = config(1, N);
  const auto d = to_matrix(AlgebraElement::single(1, Shift{0, {0}}, Coeff::pow(0, 2, 0)), c1);
  const auto eig = hermitian_spectrum(d);
  std::vector<double> expect{0.0};
  for (long k = N; k >= 0; --k) expect.push_back(std::pow(0.25, static_cast<double>(k)));
  REQUIRE(eig.size() == expect.size());
  for (std::size_t i = 0; i < eig.size(); ++i) CHECK(std::abs(eig[i] - expect[i]) < 1e-15);

  // A dense Hermitian test matrix with a known spectrum: U diag U^H for a
  // Householder-like unitary built from a fixed vector.
  HermitianInput h{3, {}};
  const std::vector<double> lam{-1.0, 0.5, 2.0};
  const std::vector<Complex> v{{1, 0.5}, {-0.3, 0.2}, {0.7, -0.4}};
  double vv = 0;
  for (const auto& x : v) vv += std::norm(x);
  h.data.assign(9, 0.0);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      Complex s = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        const Complex urk = (r == k ? 1.0 : 0.0) - 2.0 * v[r] * std::conj(v[k]) / vv;
        const Complex uck = (c == k ? 1.0 : 0.0) - 2.0 * v[c] * std::conj(v[k]) / vv;
        s += urk * lam[k] * std::conj(uck);
      }
      h.data[r * 3 + c] = s;
    }
  }
  const auto got = hermitian_spectrum(h);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - lam[i]) < 1e-12);

  HermitianInput bad{2, {0.0, 1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(hermitian_spectrum(bad), Error);
}

TEST_CASE("sum of Y*Y has unit spectrum") {
  for (std::size_t n : {1u, 2u}) {
    const auto gens = build_generators(n, 0.5);
    AlgebraElement s(n);
    for (const auto& y : gens.Y) s += convolve(adjoint(y), y);
    auto cfg = config(n, 6);
    cfg.theta = 0.4;
    cfg.phi.assign(n, 1.0);
    const auto m = to_matrix(s, cfg);
    for (double e : hermitian_spectrum(m)) CHECK(std::abs(e - 1.0) < 1e-12);
    CHECK(std::abs(op_norm_estimate(m) - 1.0) < 1e-12);
  }
}

TEST_CASE("operator norm") {
  const auto c1 = config(1, 6, 0.5);
  const auto g = to_matrix(AlgebraElement::single(1, Shift{0, {0}}, Coeff::pow(0, 1, 0)), c1);
  CHECK(std::abs(op_norm_estimate(g) - 1.0) < 1e-12);
  const auto a = to_matrix(AlgebraElement::single(1, Shift{0, {-1}}, Coeff::sqrt(0, 0)), c1);
  // Nearly degenerate top singular values: the estimate is a lower bound of
  // the exact norm from the Gram spectrum.
  const double exact = std::sqrt(hermitian_spectrum(multiply(adjoint(a), a)).back());
  CHECK(std::abs(exact - 1.0) < 1e-12);
  const double est = op_norm_estimate(a);
  CHECK(est <= exact + 1e-12);
  CHECK(est > 0.999);
}

TEST_CASE("gram rank") {
  const auto cfg = config(1, 3);
  const auto id = TruncatedMatrix::identity(cfg);
  std::vector<std::size_t> all(id.dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(gram_rank(std::vector<TruncatedMatrix>{id}, all, kRankTolerance) == 1);
  CHECK(gram_rank(std::vector<TruncatedMatrix>{id, id}, all, kRankTolerance) == 1);
  const auto g = to_matrix(AlgebraElement::single(1, Shift{0, {0}}, Coeff::pow(0, 1, 0)), cfg);
  CHECK(gram_rank(std::vector<TruncatedMatrix>{id, g, Complex(2.0) * id - g}, all, kRankTolerance) == 2);
  const auto spec = gram_spectrum(std::vector<TruncatedMatrix>{id, id}, all);
  REQUIRE(spec.size() == 2);
  CHECK(std::abs(spec.back() - 2.0 * static_cast<double>(all.size())) < 1e-12);
  CHECK(spec.front() < 1e-20);
  CHECK_THROWS_AS(gram_rank(std::vector<TruncatedMatrix>{}, all, kRankTolerance), Error);
}

TEST_CASE("export format") {
  auto cfg = config(1, 1);
  const auto m = to_matrix(AlgebraElement::single(1, Shift{0, {-1}}, Coeff::sqrt(0, 0)), cfg);
  const std::string text = export_matrix(m);
  CHECK(text.rfind("%%GroupoidMatrix n=1 N=1", 0) == 0);
  CHECK(text.find("\n0 1 0.866025403784438") != std::string::npos);
  CHECK(text == export_matrix(m));
}
