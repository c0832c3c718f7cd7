#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/cli/config.hpp"

namespace casimir::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Prints "PASS name ..." / "FAIL name ..." for each check.
void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

/// Algebraic identities between the polarizabilities, Green-tensor components and the
/// different routes to the self-energies, evaluated on the configured pair.
std::vector<CheckResult> identities_suite(const RunConfig& config, double tol);

/// Green-function pipeline against fourth-order perturbation theory on random mode models.
std::vector<CheckResult> oracle_suite(const OracleSpec& spec, double tol, int workers);

}  // namespace casimir::cli
