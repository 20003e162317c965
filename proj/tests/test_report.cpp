#include <doctest.h>

#include <json.hpp>

#include "qsphere/error.hpp"
#include "qsphere/report.hpp"
#include "qsphere/rng.hpp"

using namespace qsphere;

TEST_CASE("report json layout") {
  CheckReport r("check-demo");
  r.set_param("n", 2L);
  r.set_param("q", std::vector<double>{0.3, 0.7});
  CheckResult a;
  a.name = "demo.first";
  a.residual = 1e-15;
  a.count = 4;
  a.detail = "ok";
  r.add(a);
  CheckResult b;
  b.name = "demo.second";
  b.witness = "(1,(0,0),(inf,0))";
  r.add(b);

  const auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["schema_version"] == kReportSchemaVersion);
  CHECK(doc["suite"] == "check-demo");
  CHECK(doc["params"]["n"] == 2);
  CHECK(doc["params"]["q"].size() == 2);
  CHECK(doc["passed"] == true);
  CHECK(doc["oracle_disagreements"] == 0);
  REQUIRE(doc["checks"].size() == 2);
  CHECK(doc["checks"][0]["status"] == "pass");
  CHECK(doc["checks"][0]["witness"].is_null());
  CHECK(doc["checks"][1]["residual"].is_null());
  CHECK_FALSE(doc.contains("wall_time_s"));
  CHECK(nlohmann::json::parse(r.to_json(true)).contains("wall_time_s"));
  CHECK(r.to_json() == r.to_json());

  CHECK_THROWS_AS(r.add(a), Error);
}

TEST_CASE("pass requires every check to pass") {
  CheckReport r("s");
  CheckResult ok;
  ok.name = "a";
  r.add(ok);
  CHECK(r.passed());
  CheckResult unknown;
  unknown.name = "b";
  unknown.status = CheckStatus::Unknown;
  r.add(unknown);
  CHECK_FALSE(r.passed());

  CheckReport f("s");
  CheckResult bad;
  bad.name = "c";
  bad.status = CheckStatus::Fail;
  bad.oracle_disagreements = 2;
  f.add(bad);
  CHECK_FALSE(f.passed());
  CHECK(f.oracle_disagreements() == 2);
  r.merge(f);
  CHECK(r.results().size() == 3);
  CHECK(r.find("c") != nullptr);
  CHECK(r.find("zzz") == nullptr);
}

TEST_CASE("seeded generator") {
  // State recursion written out by hand.
  std::uint64_t x = 42;
  SeededRng rng(42);
  for (int i = 0; i < 5; ++i) {
    x = 6364136223846793005ULL * x + 1442695040888963407ULL;
    CHECK(rng.next() == x);
  }
  SeededRng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const long v = a.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    const std::uint64_t raw = b.next();
    CHECK(v == -3 + static_cast<long>((raw >> 33) % 7));
  }
  SeededRng c(1);
  for (int i = 0; i < 100; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS(c.uniform_int(2, 1), Error);
}
