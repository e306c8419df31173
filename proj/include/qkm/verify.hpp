#pragma once

#include <string>
#include <vector>

#include "qkm/spectral.hpp"

namespace qkm {

struct CheckResult {
  std::string check;
  std::string status;  // pass | fail | skipped
  int first_failing_order = -1;
  std::string detail;
};

struct VerifyOptions {
  int order = 6;
  Scalar rho_shift{0};  // corrupts rhohat_1 inside the identity checks
};

std::vector<std::string> verify_check_names();  // sorted
CheckResult run_check(const std::string& name, const SpectralInput& in, const VerifyOptions& opt);
std::vector<CheckResult> run_checks(const std::vector<std::string>& names, const SpectralInput& in, const VerifyOptions& opt);

}  // namespace qkm
