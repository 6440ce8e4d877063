// Command-line front end: option handling, suite orchestration and report serialization.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "uqbc/spectrum.hpp"
#include "uqbc/spin_chain.hpp"

namespace uqbc {

enum class ExitCode : int { pass = 0, fail = 1, invalid_input = 2, io_error = 3 };

enum class ReportFormat { json, text };

struct RunOptions {
  ChainSpec chain;
  int samples = 5;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string suite = "all";
  ReportFormat format = ReportFormat::json;
  std::optional<std::string> out;
  bool timings = false;
};

// Largest chain the verify suites accept: n^N <= kMaxVerifyDim.
inline constexpr int kMaxVerifyDim = 256;

// "a+bi", "a-bi", "a", "bi", "i", "-i"; whitespace is ignored.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

// key=value lines, '#' comments. Keys are the long flag names without dashes.
std::map<std::string, std::string> read_config(const std::string& path);
// Applies one key=value setting; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(RunOptions& opts, const std::string& key, const std::string& value);

VerificationReport run_verify(const RunOptions& opts);
SpectrumReport run_spectrum(const ChainSpec& spec, double cluster_tol = 1e-8);

nlohmann::json report_to_json(const VerificationReport& r, bool timings = false);
VerificationReport report_from_json(const nlohmann::json& j);
nlohmann::json spectrum_to_json(const SpectrumReport& s, const ChainSpec& spec);
std::string emit_report(const VerificationReport& r, ReportFormat format, bool timings = false);
std::string emit_spectrum(const SpectrumReport& s, const ChainSpec& spec, ReportFormat format);

// Entry point behind the uqbc executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uqbc
