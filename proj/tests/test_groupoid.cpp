#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "qsphere/groupoid.hpp"
#include "qsphere/rng.hpp"

using namespace qsphere;

namespace {

GroupoidElement el(long z, std::vector<long> x, Unit w) {
  return GroupoidElement(z, std::move(x), std::move(w));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidArgument;
}

struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Window representatives sharing a's shift and unit class.
std::vector<GroupoidElement> window_class(const GroupoidElement& a, long N) {
  std::vector<GroupoidElement> out;
  const Unit target = canonicalize_unit(a.w());
  for (const auto& w : enumerate_units(a.dim(), N)) {
    if (canonicalize_unit(w) != target) continue;
    try {
      out.emplace_back(a.shift(), w);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("construction and validity") {
  const auto u = el(0, {0, 0}, {2, 3});
  CHECK(u.is_unit());
  CHECK(u.source() == Unit{2, 3});
  CHECK(u.range() == Unit{2, 3});

  CHECK(el(0, {5, -1}, {kInf, 3}).range() == Unit{kInf, 2});
  CHECK(code_of([] { el(0, {-1, 0}, {0, 3}); }) == ErrorCode::InvalidUnit);
}

TEST_CASE("composition and inverse") {
  CHECK(compose(el(1, {-1, 0}, {3, 3}), el(0, {1, 0}, {2, 3})) == el(1, {0, 0}, {2, 3}));

  const auto h = el(2, {1, -1}, {1, 3});
  CHECK(compose(GroupoidElement::unit_at(h.range()), h) == h);
  CHECK(compose(h, GroupoidElement::unit_at(h.source())) == h);
  CHECK(code_of([] { compose(el(0, {1, 0}, {4, kInf}), el(0, {0, 0}, {5, 2})); }) ==
        ErrorCode::NotComposable);

  CHECK(inverse(el(1, {2, 0}, {0, 5})) == el(-1, {-2, 0}, {2, 5}));
  const auto u = GroupoidElement::unit_at({3, kInf});
  CHECK(inverse(u) == u);
  CHECK(inverse(el(0, {-1}, {kInf})) == el(0, {1}, {kInf}));
  CHECK(compose(h, inverse(h)) == GroupoidElement::unit_at(h.range()));
}

TEST_CASE("faces and boundary") {
  CHECK(in_face({kInf, 3}, 0));
  CHECK_FALSE(in_boundary({2, 3}));
  CHECK(in_boundary({2, kInf}));
  CHECK_FALSE(in_face({2, kInf}, 0));
}

TEST_CASE("infinity condition") {
  CHECK(in_ftilde(el(1, {-1, 0}, {kInf, 4})));
  CHECK_FALSE(in_ftilde(el(1, {0, -1}, {kInf, 4})));
  CHECK(in_ftilde(el(3, {2, -1}, {1, 4})));
  CHECK(satisfies_infinity_condition(Shift{1, {0, -1}}, 1));
  CHECK_FALSE(satisfies_infinity_condition(Shift{1, {0, -1}}, 0));
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(el(0, {0, 0, 0}, {3, kInf, 5})) == el(0, {0, 0, 0}, {3, kInf, kInf}));
  const auto g = el(2, {1, -1, 0}, {1, 4, 4});
  CHECK(canonicalize(g) == g);
  CHECK(canonicalize(el(2, {-2, 0, 0}, {kInf, 1, 4})) == el(2, {-2, 0, 0}, {kInf, kInf, kInf}));
  CHECK(code_of([] { canonicalize(el(1, {0, 0}, {kInf, 0})); }) == ErrorCode::NotInSubgroupoid);
}

TEST_CASE("sim relation against a union-find closure") {
  CHECK(sim_equivalent(el(0, {0, 0, 0}, {3, kInf, 5}), el(0, {0, 0, 0}, {3, kInf, 7})));
  CHECK_FALSE(sim_equivalent(el(0, {0, 0, 0}, {3, 4, kInf}), el(0, {0, 0, 0}, {3, kInf, kInf})));
  const auto g = el(1, {-1, 0, 0}, {kInf, 2, 0});
  CHECK(sim_equivalent(g, g));

  // Close the generating pairs (z,x,w) ~ (z,x,w_1..w_i=inf,inf..inf) over the
  // window and compare components with canonical representatives.
  for (std::size_t n : {2u, 3u}) {
    const long N = 2;
    std::vector<GroupoidElement> elems;
    for (const auto& e : enumerate_window(n, {1, 1, N})) {
      if (in_ftilde(e)) elems.push_back(e);
    }
    std::map<GroupoidElement, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    Components comp(elems.size());
    for (std::size_t a = 0; a < elems.size(); ++a) {
      const auto& e = elems[a];
      for (std::size_t i = 0; i < n; ++i) {
        if (!e.w()[i].is_inf()) continue;
        Unit w = e.w();
        for (std::size_t j = i + 1; j < n; ++j) w[j] = kInf;
        comp.join(a, index.at(GroupoidElement(e.shift(), w)));
      }
    }
    long mismatches = 0;
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = a; b < elems.size(); ++b) {
        if (elems[a].shift() != elems[b].shift()) continue;
        if (sim_equivalent(elems[a], elems[b]) != (comp.find(a) == comp.find(b))) ++mismatches;
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("quotient composition") {
  const auto a = el(1, {0, -1}, {4, kInf});
  const auto b = el(-1, {1, 0}, {3, kInf});
  CHECK(compose_classes(a, b).rep() == el(0, {1, -1}, {3, kInf}));

  const auto u = GroupoidElement::unit_at(a.range());
  CHECK(compose_classes(u, a).rep() == canonicalize(a));
  const CanonicalClass ca(a);
  CHECK(compose_classes(ca, inverse_class(ca)).rep() ==
        GroupoidElement::unit_at(canonicalize_unit(a.range())));
}

TEST_CASE("quotient composition matches brute force over representatives") {
  // Every composable pair of window representatives must land in one class.
  const std::size_t n = 3;
  const long N = 2;
  std::vector<GroupoidElement> elems;
  for (const auto& e : enumerate_window(n, {1, 1, N})) {
    if (in_ftilde(e)) elems.push_back(e);
  }
  SeededRng rng(7);
  long tested = 0;
  for (int trial = 0; trial < 40000 && tested < 300; ++trial) {
    const auto& a = elems[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(elems.size()) - 1))];
    const auto& b = elems[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(elems.size()) - 1))];
    if (canonicalize_unit(a.source()) != canonicalize_unit(b.range())) continue;
    std::set<GroupoidElement> classes;
    for (const auto& ra : window_class(a, N)) {
      for (const auto& rb : window_class(b, N)) {
        if (ra.source() == rb.range()) classes.insert(canonicalize(compose(ra, rb)));
      }
    }
    REQUIRE(classes.size() == 1);
    CHECK(*classes.begin() == compose_classes(a, b).rep());
    ++tested;
  }
  CHECK(tested >= 100);
}

TEST_CASE("boundary pullback and phi") {
  CHECK(pi_n_boundary(el(0, {0, 0}, {kInf, 4})) == el(0, {0, 0}, {kInf, kInf}));
  const auto g = el(0, {1, 0}, {2, kInf});
  CHECK(pi_n_boundary(g) == g);
  CHECK(code_of([] { pi_n_boundary(el(0, {0, 0}, {2, 4})); }) == ErrorCode::DomainError);

  CHECK(phi_star(el(1, {2, 0}, {3, kInf})) == el(1, {2, -3}, {3, kInf}));
  const auto h = el(0, {0, 0}, {kInf, kInf});
  CHECK(phi_star(h) == h);
  for (const auto& e : enumerate_window(2, {2, 2, 2})) {
    if (e.w()[1].is_inf()) CHECK(phi_star_inv(phi_star(e)) == e);
  }
}

TEST_CASE("primed subgroupoids") {
  CHECK(in_ftilde_prime(el(1, {0, -1}, {4, kInf})));
  CHECK(in_ftilde_doubleprime(el(1, {-1, 0}, {kInf, 4})));
  CHECK_FALSE(in_ftilde_prime(el(1, {-1, 0}, {kInf, 4})));
  CHECK_FALSE(in_ftilde_prime(el(0, {0, 0}, {1, 2})));
  CHECK_FALSE(in_ftilde_doubleprime(el(0, {0, 0}, {1, 2})));
}

TEST_CASE("window enumeration") {
  CHECK(enumerate_window(1, {0, 0, 0}).size() == 2);
  // Brute count: x in {-1,0,1}, w in {0,1,inf}, keep w + x >= 0.
  long count = 0;
  for (long x = -1; x <= 1; ++x) {
    for (long w : {0L, 1L}) count += (w + x >= 0);
    ++count;  // inf
  }
  CHECK(count == 8);
  CHECK(enumerate_window(1, {0, 1, 1}).size() == static_cast<std::size_t>(count));
  CHECK(code_of([] { enumerate_window(1, {-1, 0, 0}); }) == ErrorCode::InvalidArgument);
}
