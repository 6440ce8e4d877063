#include "uqbc/cli.hpp"

#include <cmath>
#include <map>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "uqbc/charges.hpp"
#include "uqbc/hecke.hpp"
#include "uqbc/quantum_algebra.hpp"
#include "uqbc/reflection.hpp"
#include "uqbc/yang_baxter.hpp"

namespace uqbc {

using nlohmann::json;

namespace {

const std::vector<std::string> kSettingKeys = {"n",    "sites", "mu",         "m",  "zeta",  "samples",
                                               "seed", "tol",   "gauge",      "left", "right", "diag-block",
                                               "xi",   "suite", "format",     "out"};

const std::map<std::string, std::string> kSettingHelp = {
    {"n", "rank n of gl_n (>= 2)"},
    {"sites", "number of chain sites N"},
    {"mu", "anisotropy mu, q = exp(i mu)"},
    {"m", "right boundary parameter m"},
    {"zeta", "right boundary parameter zeta"},
    {"samples", "spectral-parameter samples per check"},
    {"seed", "random seed"},
    {"tol", "relative residual tolerance"},
    {"gauge", "homogeneous | principal"},
    {"left", "identity | transpose-shift | affine-limit"},
    {"right", "explicit | ansatz | diagonal | trivial"},
    {"diag-block", "diagonal K: number of leading entries"},
    {"xi", "diagonal K parameter"},
    {"suite", "all | hecke | ybe | reflection | algebra | chain | symmetry"},
    {"format", "json | text"},
    {"out", "write the report to this path"},
};

const std::vector<std::string> kSuites = {"all", "hecke", "ybe", "reflection", "algebra", "chain", "symmetry"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
  return x;
}

double parse_double(const std::string& key, const std::string& v) {
  size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
  return x;
}

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }
cplx from_cjson(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

// JSON has no inf/nan; those residuals travel as strings.
json real_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}
double from_real_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

json params_json(const ModelParams& p) {
  return {{"n", p.n}, {"sites", p.sites}, {"mu", cjson(p.mu)}, {"m", cjson(p.m)}, {"zeta", cjson(p.zeta)}};
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.n = j.at("n").get<int>();
  p.sites = j.at("sites").get<int>();
  p.mu = from_cjson(j.at("mu"));
  p.m = from_cjson(j.at("m"));
  p.zeta = from_cjson(j.at("zeta"));
  return p;
}

std::string fmt_real(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

void check_size(const ModelParams& p, int cap, const std::string& what) {
  double d = std::pow(double(p.n), p.sites);
  if (d > cap)
    throw ParameterError("size", what + " needs n^N <= " + std::to_string(cap) + " (got " +
                                     std::to_string(static_cast<long long>(d)) + ")");
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path);
  if (!f) throw IoError("cannot open '" + *path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + *path + "' failed");
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto bad = [&] { return std::invalid_argument("cannot parse complex value '" + text + "' (expected a+bi)"); };
  auto number = [&](const std::string& t) {
    if (t.empty()) throw bad();
    size_t used = 0;
    double x = 0;
    try {
      x = std::stod(t, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != t.size()) throw bad();
    return x;
  };
  if (s.empty()) throw bad();
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : number(re), number(im)};
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+")
     << std::abs(z.imag()) << "i";
  return os.str();
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (std::find(kSettingKeys.begin(), kSettingKeys.end(), key) == kSettingKeys.end())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_setting(RunOptions& o, const std::string& key, const std::string& v) {
  ModelParams& p = o.chain.params;
  if (key == "n") p.n = parse_int(key, v);
  else if (key == "sites") p.sites = parse_int(key, v);
  else if (key == "mu") p.mu = parse_complex(v);
  else if (key == "m") p.m = parse_complex(v);
  else if (key == "zeta") p.zeta = parse_complex(v);
  else if (key == "samples") o.samples = parse_int(key, v);
  else if (key == "seed") {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("seed: expected an unsigned 64-bit integer, got '" + v + "'");
    try {
      o.seed = std::stoull(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("seed: out of range '" + v + "'");
    }
  } else if (key == "tol") o.tol = parse_double(key, v);
  else if (key == "gauge") o.chain.gauge = gauge_from_string(v);
  else if (key == "left") o.chain.left = left_boundary_from_string(v);
  else if (key == "right") o.chain.right.kind = right_boundary_from_string(v);
  else if (key == "diag-block") o.chain.right.block = parse_int(key, v);
  else if (key == "xi") o.chain.right.xi = parse_complex(v);
  else if (key == "suite") {
    if (std::find(kSuites.begin(), kSuites.end(), v) == kSuites.end())
      throw std::invalid_argument("unknown suite '" + v + "'");
    o.suite = v;
  } else if (key == "format") {
    if (v == "json") o.format = ReportFormat::json;
    else if (v == "text") o.format = ReportFormat::text;
    else throw std::invalid_argument("unknown format '" + v + "'");
  } else if (key == "out") o.out = v;
  else throw std::invalid_argument("unknown setting '" + key + "'");
}

VerificationReport run_verify(const RunOptions& o) {
  validate(o.chain);
  if (o.samples < 1) throw ParameterError("samples", "samples must be >= 1");
  if (!(o.tol > 0)) throw ParameterError("tol", "tolerance must be positive");
  const ModelParams& p = o.chain.params;
  const bool want_chain = o.suite == "all" || o.suite == "chain" || o.suite == "symmetry";
  if (want_chain) check_size(p, kMaxVerifyDim, "chain suites");

  VerificationReport all;
  all.suite = o.suite;
  all.params = p;
  all.seed = o.seed;
  all.gauge = to_string(o.chain.gauge);
  all.left = to_string(o.chain.left);
  all.right = to_string(o.chain.right.kind);
  // Each suite draws from its own stream so that subsets reproduce the full run.
  auto run = [&](const std::string& name, std::uint64_t stream, const auto& fn) {
    if (o.suite != "all" && o.suite != name) return;
    Sampler s(o.seed ^ (0x9e3779b97f4a7c15ULL * stream));
    all.append(fn(s));
  };
  run("hecke", 1, [&](Sampler&) { return verify_hecke_suite(p, o.tol); });
  run("ybe", 2, [&](Sampler& s) { return verify_ybe_suite(p, o.samples, o.tol, s); });
  run("reflection", 3, [&](Sampler& s) { return verify_reflection_suite(p, o.samples, o.tol, s); });
  run("algebra", 4, [&](Sampler& s) { return verify_algebra_suite(p, o.samples, o.tol, s); });
  run("chain", 5, [&](Sampler& s) { return verify_chain_suite(o.chain, o.samples, o.tol, s); });
  run("symmetry", 6, [&](Sampler& s) { return verify_symmetry_suite(o.chain, o.samples, o.tol, s); });
  all.finalize();
  return all;
}

SpectrumReport run_spectrum(const ChainSpec& spec, double cluster_tol) {
  validate(spec.params, true);
  check_size(spec.params, kMaxSpectrumDim, "spectrum");
  ChainSpec s = spec;
  s.gauge = Gauge::homogeneous;
  s.left = LeftBoundaryKind::identity;
  if (s.right.kind != RightBoundaryKind::explicit_k && s.right.kind != RightBoundaryKind::ansatz)
    s.right.kind = RightBoundaryKind::explicit_k;
  return compute_spectrum(build_hamiltonian(s, HamiltonianRoute::hecke_form), cluster_tol);
}

json report_to_json(const VerificationReport& r, bool timings) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc = {{"id", c.id}, {"residual", real_json(c.residual)}, {"pass", c.pass},
               {"millis", timings ? c.millis : 0}};
    jc["scalar"] = c.scalar ? cjson(*c.scalar) : json(nullptr);
    checks.push_back(std::move(jc));
  }
  json params = params_json(r.params);
  params["gauge"] = r.gauge;
  params["left"] = r.left;
  params["right"] = r.right;
  params["seed"] = r.seed;
  return {{"suite", r.suite}, {"params", params}, {"checks", checks}, {"pass", r.pass()}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  const json& pj = j.at("params");
  r.params = params_from_json(pj);
  r.gauge = pj.at("gauge").get<std::string>();
  r.left = pj.at("left").get<std::string>();
  r.right = pj.at("right").get<std::string>();
  r.seed = pj.at("seed").get<std::uint64_t>();
  for (const auto& jc : j.at("checks")) {
    Check c;
    c.id = jc.at("id").get<std::string>();
    c.residual = from_real_json(jc.at("residual"));
    c.pass = jc.at("pass").get<bool>();
    c.millis = jc.at("millis").get<std::int64_t>();
    if (!jc.at("scalar").is_null()) c.scalar = from_cjson(jc.at("scalar"));
    r.checks.push_back(std::move(c));
  }
  return r;
}

json spectrum_to_json(const SpectrumReport& s, const ChainSpec& spec) {
  json ev = json::array(), cl = json::array();
  for (cplx e : s.eigenvalues) ev.push_back(cjson(e));
  for (const auto& c : s.clusters) cl.push_back({{"value", cjson(c.value)}, {"multiplicity", c.multiplicity}});
  return {{"params", params_json(spec.params)},
          {"eigenvalues", ev},
          {"clusters", cl},
          {"hermitian_defect", real_json(s.hermitian_defect)},
          {"cluster_tol", s.cluster_tol}};
}

std::string emit_report(const VerificationReport& r, ReportFormat format, bool timings) {
  if (format == ReportFormat::json) return report_to_json(r, timings).dump(2) + "\n";
  std::ostringstream os;
  const ModelParams& p = r.params;
  os << "suite " << r.suite << "  n=" << p.n << " N=" << p.sites << " mu=" << format_complex(p.mu)
     << " m=" << format_complex(p.m) << " zeta=" << format_complex(p.zeta) << " gauge=" << r.gauge
     << " left=" << r.left << " right=" << r.right << " seed=" << r.seed << "\n";
  size_t width = 8;
  for (const auto& c : r.checks) width = std::max(width, c.id.size());
  int failed = 0;
  for (const auto& c : r.checks) {
    failed += !c.pass;
    os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.id << "  "
       << fmt_real(c.residual);
    if (c.scalar) os << "  scalar " << format_complex(*c.scalar);
    if (timings) os << "  " << c.millis << " ms";
    os << "\n";
  }
  os << (r.pass() ? "PASS" : "FAIL") << "  " << r.checks.size() << " checks, " << failed << " failed\n";
  return os.str();
}

std::string emit_spectrum(const SpectrumReport& s, const ChainSpec& spec, ReportFormat format) {
  if (format == ReportFormat::json) return spectrum_to_json(s, spec).dump(2) + "\n";
  std::ostringstream os;
  os << "spectrum n=" << spec.params.n << " N=" << spec.params.sites << "  hermitian_defect "
     << fmt_real(s.hermitian_defect) << "  cluster_tol " << fmt_real(s.cluster_tol) << "\n";
  for (const auto& c : s.clusters) os << "  " << format_complex(c.value) << "  x" << c.multiplicity << "\n";
  return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification and spectra for open U_q(gl_n) chains with non-diagonal boundaries"};
  app.require_subcommand(1);
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> flag;
  std::string config;
  bool timings = false;
  auto add_flags = [&](CLI::App* sub) {
    for (const auto& k : kSettingKeys) flag[sub->get_name() + k] = sub->add_option("--" + k, raw[k], kSettingHelp.at(k));
    sub->add_option("--config", config, "key=value file; command-line flags take precedence");
    sub->add_flag("--timings", timings, "record per-check wall time");
  };
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of the open-chain Hamiltonian");
  add_flags(verify);
  add_flags(spectrum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  }

  CLI::App* sub = verify->parsed() ? verify : spectrum;
  RunOptions opts;
  opts.timings = timings;
  try {
    if (!config.empty())
      for (const auto& [k, v] : read_config(config))
        if (flag.at(sub->get_name() + k)->count() == 0) apply_setting(opts, k, v);
    for (const auto& k : kSettingKeys)
      if (flag.at(sub->get_name() + k)->count() > 0) apply_setting(opts, k, raw[k]);

    if (sub == verify) {
      const VerificationReport r = run_verify(opts);
      write_output(emit_report(r, opts.format, opts.timings), opts.out, out);
      return static_cast<int>(r.pass() ? ExitCode::pass : ExitCode::fail);
    }
    const SpectrumReport s = run_spectrum(opts.chain);
    write_output(emit_spectrum(s, opts.chain, opts.format), opts.out, out);
    return static_cast<int>(ExitCode::pass);
  } catch (const ParameterError& e) {
    err << "invalid input: invariant " << e.invariant() << " violated: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::io_error);
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  }
}

}  // namespace uqbc
