#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdarwin::cli {

// Every threshold the acceptance checks compare against. Changing one changes
// the verdict of exactly the criterion that names it.
struct Tolerances {
  double interference = 1e-12;
  double interference_seconds = 1.0;
  double partial_trace = 1e-10;
  std::size_t partial_trace_samples = 200;
  double cat = 1e-12;
  double spam_objectivity = 1e-12;
  double measure_prepare = 1e-9;
  double sieve_purity = 1e-9;
  std::size_t sieve_resolution = 64;
  double plateau = 1e-9;
  double redundancy = 1e-12;
  double erasure = 1e-12;
  std::size_t emergence_seeds = 100;
  double emergence_ratio = 0.25;
  double emergence_seconds = 600.0;
  double branch = 1e-12;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool reproduces_paper = false;  // run by --quick
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> evaluate_criteria(bool quick, const Tolerances& tol);

/// One line per criterion on `out`; true when all pass.
bool run_selftest(bool quick, const Tolerances& tol, std::ostream& out);

}  // namespace qdarwin::cli
