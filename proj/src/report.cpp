#include "uqbc/report.hpp"

#include <algorithm>
#include <cmath>

namespace uqbc {

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check& VerificationReport::add(std::string id, double residual, double tol, std::optional<cplx> scalar) {
  Check c;
  c.id = std::move(id);
  c.residual = residual;
  c.scalar = scalar;
  c.pass = std::isfinite(residual) && residual <= tol;
  checks.push_back(std::move(c));
  return checks.back();
}

Check& VerificationReport::add_exceeds(std::string id, double value, double floor, std::optional<cplx> scalar) {
  Check& c = add(std::move(id), value, INFINITY, scalar);
  c.pass = std::isfinite(value) && value > floor;
  return c;
}

Check& VerificationReport::timed(std::string id, double tol, const std::function<double()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  double r = fn();
  auto t1 = std::chrono::steady_clock::now();
  Check& c = add(std::move(id), r, tol);
  c.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return c;
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

double VerificationReport::max_residual(const std::string& id_prefix) const {
  double m = 0.0;
  for (const auto& c : checks)
    if (c.id.rfind(id_prefix, 0) == 0) m = std::max(m, std::isfinite(c.residual) ? c.residual : INFINITY);
  return m;
}

void VerificationReport::finalize() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
}

}  // namespace uqbc
