// Verification reports produced by the check suites.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uqbc/params.hpp"

namespace uqbc {

struct Check {
  std::string id;  // module.check.instance
  double residual = 0.0;
  std::optional<cplx> scalar;
  bool pass = false;
  std::int64_t millis = 0;
};

struct VerificationReport {
  std::string suite;
  ModelParams params;
  std::string gauge = "homogeneous";
  std::string left = "identity";
  std::string right = "explicit";
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool pass() const;
  // Appends a check; pass is residual <= tol (NaN fails).
  Check& add(std::string id, double residual, double tol, std::optional<cplx> scalar = std::nullopt);
  // Lower-bound check: passes when value > floor (a quantity that must stay away from zero).
  Check& add_exceeds(std::string id, double value, double floor, std::optional<cplx> scalar = std::nullopt);
  // Runs fn under a timer and records its residual.
  Check& timed(std::string id, double tol, const std::function<double()>& fn);
  void append(const VerificationReport& other);
  double max_residual(const std::string& id_prefix = "") const;
  // Stable ordering by check id.
  void finalize();
};

}  // namespace uqbc
