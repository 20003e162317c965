#pragma once

// Check results and their JSON rendering (schema_version 1).

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qsphere {

enum class CheckStatus { Pass, Fail, Unknown };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  /// Largest numeric residual behind the verdict, when one was computed.
  std::optional<double> residual;
  /// Serialized groupoid element(s) exhibiting a nonzero value.
  std::optional<std::string> witness;
  std::string detail;
  /// Number of items (identities, words, samples, elements) examined.
  long count = 0;
  /// Cases where the symbolic and numeric oracles disagree.
  long oracle_disagreements = 0;
};

using ParamValue = std::variant<long, double, std::string, std::vector<double>>;

class CheckReport {
 public:
  explicit CheckReport(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  const std::vector<CheckResult>& results() const { return results_; }
  const std::map<std::string, ParamValue>& params() const { return params_; }

  void set_param(const std::string& key, ParamValue value) { params_[key] = std::move(value); }
  /// Throws Error(InvalidArgument) on a duplicate check name.
  void add(CheckResult r);
  /// Appends all results of `other`; parameters are kept from *this.
  void merge(const CheckReport& other);

  const CheckResult* find(const std::string& name) const;
  bool passed() const;
  long oracle_disagreements() const;

  void set_wall_time(double seconds) { wall_time_s_ = seconds; }
  double wall_time() const { return wall_time_s_; }

  /// Deterministic unless include_timing is set.
  std::string to_json(bool include_timing = false) const;

 private:
  std::string suite_;
  std::map<std::string, ParamValue> params_;
  std::vector<CheckResult> results_;
  double wall_time_s_ = 0.0;
};

inline constexpr int kReportSchemaVersion = 1;

}  // namespace qsphere
