#pragma once

// The batch suites behind the command-line subcommands.

#include <cstdint>
#include <vector>

#include "qsphere/spheres.hpp"

namespace qsphere {

enum class SuiteKind { Relations, Lemma, Theorem, Sets, Exactness, QIndependence };

struct SuiteParams {
  std::size_t n = 2;
  std::vector<double> q{0.5};
  long N = 10;
  AngleSet angles;
  std::size_t L = 3;
  long z_max = 3;
  long x_max = 3;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  long samples = 10000;
  long agreement_pairs = 1000;
  long agreement_N = 4;

  /// Throws Error(InvalidArgument) on out-of-range values.
  void validate(SuiteKind kind) const;
};

/// Runs every check of the suite for each q and merges the reports.
CheckReport run_suite(SuiteKind kind, const SuiteParams& p);

const char* suite_name(SuiteKind kind);

}  // namespace qsphere
