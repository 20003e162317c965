#include <doctest.h>

#include <cmath>

#include "qsphere/coeff.hpp"
#include "qsphere/rng.hpp"

using namespace qsphere;

namespace {

// Random expression over `slots` slots, at most `depth` levels of Sum/Prod.
Expr random_expr(SeededRng& rng, int slots, int depth) {
  const long kind = depth == 0 ? rng.uniform_int(0, 4) : rng.uniform_int(0, 6);
  const int slot = static_cast<int>(rng.uniform_int(0, slots - 1));
  switch (kind) {
    case 0: return Expr::constant({rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1});
    case 1: return Expr::qpow(static_cast<int>(rng.uniform_int(-2, 2)));
    case 2: return Expr::pow(slot, static_cast<int>(rng.uniform_int(1, 2)), static_cast<int>(rng.uniform_int(-2, 2)));
    case 3: return Expr::sqrt(slot, static_cast<int>(rng.uniform_int(-2, 2)));
    case 4: return Expr::ind(slot, static_cast<int>(rng.uniform_int(0, 3)));
    default: {
      std::vector<Expr> parts;
      const long k = rng.uniform_int(2, 3);
      for (long i = 0; i < k; ++i) parts.push_back(random_expr(rng, slots, depth - 1));
      return kind == 5 ? Expr::sum(std::move(parts)) : Expr::prod(std::move(parts));
    }
  }
}

Unit random_unit(SeededRng& rng, int slots) {
  Unit w;
  for (int i = 0; i < slots; ++i) {
    const long v = rng.uniform_int(0, 6);
    w.push_back(v == 6 ? kInf : ExtNat(v));
  }
  return w;
}

}  // namespace

TEST_CASE("atom semantics") {
  const std::vector<ExtNat> w{1, 2};
  CHECK(std::abs(eval(Expr::prod({Expr::pow(0, 1, 0), Expr::pow(1, 1, 0)}), w, 0.5) - 0.125) < 1e-15);
  CHECK(eval(Expr::sqrt(0, 0), std::vector<ExtNat>{kInf}, 0.5) == Complex(1.0));
  CHECK(eval(Expr::sqrt(0, 0), std::vector<ExtNat>{0}, 0.5) == Complex(0.0));
  CHECK(eval(Expr::pow(0, 1, 0), std::vector<ExtNat>{kInf}, 0.5) == Complex(0.0));
  CHECK(eval(Expr::ind(0, 2), std::vector<ExtNat>{1}, 0.5) == Complex(0.0));
  CHECK(eval(Expr::ind(0, 2), std::vector<ExtNat>{kInf}, 0.5) == Complex(1.0));
  CHECK_THROWS_AS(eval(Expr::pow(3, 1, 0), w, 0.5), Error);
  CHECK_THROWS_AS(eval(Expr::pow(0, 1, 0), w, 1.5), Error);
}

TEST_CASE("shift") {
  const std::vector<long> down{-1};
  const std::vector<long> up{1};
  CHECK(normalize(shift(Expr::pow(0, 1, 0), down)) == normalize(Expr::pow(0, 1, -1)));
  CHECK(normalize(shift(Expr::sqrt(0, 0), up)) == normalize(Expr::sqrt(0, 1)));
  CHECK(shift(Coeff::sqrt(0, 0), up) == Coeff::sqrt(0, 1));
}

TEST_CASE("shift agrees with evaluation at the translated unit") {
  SeededRng rng(11);
  long tested = 0;
  while (tested < 10000) {
    const Expr e = random_expr(rng, 2, 2);
    const Unit w = random_unit(rng, 2);
    std::vector<long> x{rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)};
    Unit target;
    bool valid = true;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto t = w[i].plus(x[i]);
      valid = valid && t.has_value();
      if (t) target.push_back(*t);
    }
    if (!valid) continue;
    const double q = 0.2 + 0.7 * rng.uniform01();
    const Complex lhs = eval(shift(e, x), w, q);
    const Complex rhs = eval(e, target, q);
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    const Complex nf = eval(shift(normalize(e), x), w, q);
    REQUIRE(std::abs(nf - rhs) <= 1e-11 * (1 + std::abs(rhs)));
    ++tested;
  }
}

TEST_CASE("normal form evaluates like the expression") {
  SeededRng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_expr(rng, 3, 3);
    const Coeff c = normalize(e);
    for (int k = 0; k < 4; ++k) {
      const Unit w = random_unit(rng, 3);
      const double q = 0.2 + 0.7 * rng.uniform01();
      const Complex a = eval(e, w, q);
      REQUIRE(std::abs(a - eval(c, w, q)) <= 1e-11 * (1 + std::abs(a)));
    }
  }
}

TEST_CASE("restriction to an infinite slot") {
  CHECK(normalize(restrict_inf(Expr::prod({Expr::pow(0, 1, 0), Expr::sqrt(1, 0)}), 0)).empty());
  CHECK(normalize(restrict_inf(Expr::sqrt(0, 0), 0)) == Coeff::one());
  CHECK(normalize(restrict_inf(Expr::constant(2.5), 1)) == Coeff::constant(2.5));
  CHECK(restrict_inf(Coeff::sqrt(0, 0), 0) == Coeff::one());

  SeededRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Coeff c = normalize(random_expr(rng, 2, 2));
    Unit w = random_unit(rng, 2);
    w[1] = kInf;
    const Coeff r = restrict_inf(c, 1);
    CHECK_FALSE(r.references(1));
    REQUIRE(std::abs(eval(r, w, 0.4) - eval(c, w, 0.4)) < 1e-12);
  }
}

TEST_CASE("zero tests") {
  const Expr s = Expr::sqrt(0, 0);
  const Expr e = Expr::sum({Expr::prod({s, s}), Expr::pow(0, 2, 0)}) - Expr::constant(1.0);
  CHECK(is_zero(normalize(e)) == ZeroTest::ProvablyZero);
  // Numeric side of the same identity.
  for (const auto& w : probe_units(1)) {
    for (double q : kProbeQs) CHECK(std::abs(eval(e, w, q)) < 1e-15);
  }
  CHECK(is_zero(Coeff::pow(0, 1, 0)) == ZeroTest::ProvablyNonzero);
  const Coeff c = normalize(Expr::sum({Expr::sqrt(1, 2), Expr::pow(0, 1, 1)}));
  CHECK(equal(c, c) == ZeroTest::ProvablyZero);
}

TEST_CASE("square of a root folds into a polynomial") {
  const Coeff sq = Coeff::sqrt(0, 0) * Coeff::sqrt(0, 0);
  CHECK(sq == Coeff::one() - Coeff::qpow(0) * Coeff::pow(0, 2, 0));
  // Negative offset: the square keeps its guard w >= 1.
  const Coeff neg = Coeff::sqrt(0, -1) * Coeff::sqrt(0, -1);
  for (long v : {0L, 1L, 3L}) {
    const std::vector<ExtNat> w{v};
    const double expect = v >= 1 ? 1 - std::pow(0.5, 2 * (v - 1)) : 0.0;
    CHECK(std::abs(eval(neg, w, 0.5) - expect) < 1e-15);
  }
}

TEST_CASE("rendering is deterministic") {
  const Coeff c = Coeff::pow(0, 1, 0) * Coeff::sqrt(1, 0) + Coeff::constant(2.0);
  CHECK(render(c) == render(Coeff::constant(2.0) + Coeff::sqrt(1, 0) * Coeff::pow(0, 1, 0)));
  CHECK_FALSE(render(c).empty());
}
