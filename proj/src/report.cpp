#include "qsphere/report.hpp"

#include <algorithm>
#include <json.hpp>

#include "qsphere/error.hpp"

namespace qsphere {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unknown: return "unknown";
  }
  return "?";
}

void CheckReport::add(CheckResult r) {
  if (find(r.name) != nullptr) {
    throw Error(ErrorCode::InvalidArgument, "duplicate check name: " + r.name);
  }
  results_.push_back(std::move(r));
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& r : other.results_) add(r);
  wall_time_s_ += other.wall_time_s_;
}

const CheckResult* CheckReport::find(const std::string& name) const {
  auto it = std::find_if(results_.begin(), results_.end(),
                         [&](const CheckResult& r) { return r.name == name; });
  return it == results_.end() ? nullptr : &*it;
}

bool CheckReport::passed() const {
  return std::all_of(results_.begin(), results_.end(),
                     [](const CheckResult& r) { return r.status == CheckStatus::Pass; });
}

long CheckReport::oracle_disagreements() const {
  long total = 0;
  for (const auto& r : results_) total += r.oracle_disagreements;
  return total;
}

std::string CheckReport::to_json(bool include_timing) const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["suite"] = suite_;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : params_) {
    std::visit([&](const auto& v) { params[key] = v; }, value);
  }
  doc["params"] = params;
  doc["passed"] = passed();
  doc["oracle_disagreements"] = oracle_disagreements();
  ordered_json checks = ordered_json::array();
  for (const auto& r : results_) {
    ordered_json c;
    c["name"] = r.name;
    c["status"] = to_string(r.status);
    c["count"] = r.count;
    c["residual"] = r.residual ? ordered_json(*r.residual) : ordered_json(nullptr);
    c["witness"] = r.witness ? ordered_json(*r.witness) : ordered_json(nullptr);
    c["oracle_disagreements"] = r.oracle_disagreements;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  doc["checks"] = std::move(checks);
  if (include_timing) doc["wall_time_s"] = wall_time_s_;
  return doc.dump(2) + "\n";
}

}  // namespace qsphere
