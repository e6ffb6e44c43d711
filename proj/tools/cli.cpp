#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sflab/errors.hpp"
#include "sflab/sieve.hpp"

namespace sflab::cli {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string RunConfig::echo_line() const {
  std::ostringstream os;
  os << "config command=" << command << " format=" << format
     << " out=" << (out_path.empty() ? "-" : out_path)
     << " cache=" << (cache_dir ? *cache_dir : "-") << " seed=" << seed
     << " timings=" << (timings ? "on" : "off");
  for (const auto& [k, v] : flags) os << ' ' << k << '=' << v;
  return os.str();
}

namespace {

double emitted_runtime(const WindowReport& r, bool timings) {
  return timings ? r.runtime_ms : 0.0;
}

std::string csv_b(const std::optional<double>& b) {
  // 0 marks "no cap" in the CSV schema (B >= 1 whenever set).
  return fmt_double(b ? *b : 0.0);
}

void append_window_row(std::string& out, const WindowReport& r, bool timings) {
  out += std::to_string(r.window.x);
  out += ',';
  out += std::to_string(r.window.h);
  out += ',';
  out += csv_b(r.b_cap);
  out += ',';
  out += fmt_double(r.sum_logp);
  out += ',';
  out += fmt_double(r.sum_lambda);
  out += ',';
  out += fmt_double(r.main_term);
  out += ',';
  out += fmt_double(r.rel_dev);
  out += ',';
  out += method_name(r.method);
  out += ',';
  out += fmt_double(emitted_runtime(r, timings));
  out += '\n';
}

constexpr const char* kWindowHeader = "X,H,B,sum_logp,sum_lambda,main_term,rel_dev,method,runtime_ms\n";

}  // namespace

std::string window_report_csv(const WindowReport& report, bool timings) {
  std::string out = kWindowHeader;
  append_window_row(out, report, timings);
  return out;
}

std::string window_report_csv(std::span<const SweepEntry> entries, bool timings) {
  std::string out = kWindowHeader;
  for (const auto& e : entries) {
    if (e.report) append_window_row(out, *e.report, timings);
  }
  return out;
}

std::string window_report_text(const WindowReport& r, bool timings, const std::string& weight) {
  std::ostringstream os;
  const double headline = (weight == "lambda") ? r.sum_lambda : r.sum_logp;
  os << "window X=" << r.window.x << " H=" << r.window.h << " B=" << csv_b(r.b_cap)
     << " method=" << method_name(r.method) << "\n";
  if (r.contract_warning) os << "contract_warning: H outside [4, X]\n";
  os << "sum_" << (weight == "lambda" ? "lambda" : "logp") << " = " << fmt_double(headline)
     << "\n"
     << "sum_logp    = " << fmt_double(r.sum_logp) << "\n"
     << "sum_lambda  = " << fmt_double(r.sum_lambda) << "\n"
     << "weight_diff = " << fmt_double(r.sum_lambda - r.sum_logp) << "\n"
     << "main_term   = " << fmt_double(r.main_term) << "\n"
     << "rel_dev     = " << fmt_double(r.rel_dev) << "\n"
     << "delta       = " << fmt_double(r.window.delta()) << "\n"
     << "h_exponent  = " << fmt_double(r.window.h_exponent()) << "\n"
     << "in_theorem_range = " << (r.in_theorem_range ? "true" : "false") << "\n"
     << "runtime_ms  = " << fmt_double(emitted_runtime(r, timings)) << "\n";
  return os.str();
}

namespace {

ordered_json window_json_obj(const WindowReport& r, bool timings) {
  ordered_json j;
  j["x"] = r.window.x;
  j["h"] = r.window.h;
  j["b"] = r.b_cap ? *r.b_cap : 0.0;
  j["sum_logp"] = r.sum_logp;
  j["sum_lambda"] = r.sum_lambda;
  j["main_term"] = r.main_term;
  j["rel_dev"] = r.rel_dev;
  j["method"] = method_name(r.method);
  j["runtime_ms"] = emitted_runtime(r, timings);
  j["delta"] = r.window.delta();
  j["h_exponent"] = r.window.h_exponent();
  j["contract_warning"] = r.contract_warning;
  j["in_theorem_range"] = r.in_theorem_range;
  return j;
}

}  // namespace

std::string window_report_json(const WindowReport& report, bool timings) {
  return window_json_obj(report, timings).dump(2) + "\n";
}

std::string sweep_json(std::span<const SweepEntry> entries, bool timings) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries) {
    if (e.report) {
      arr.push_back(window_json_obj(*e.report, timings));
    } else {
      ordered_json j;
      j["x"] = e.x;
      j["error"] = e.error;
      arr.push_back(j);
    }
  }
  return arr.dump(2) + "\n";
}

std::string squarefull_csv(std::span<const SquarefullItem> items) {
  std::string out = "n,a,b\n";
  for (const auto& it : items) {
    out += std::to_string(it.n);
    out += ',';
    out += std::to_string(it.a);
    out += ',';
    out += std::to_string(it.b);
    out += '\n';
  }
  return out;
}

std::string exponent_report_json(const ExponentReport& r) {
  ordered_json j;
  j["delta"] = r.delta;
  j["phi_delta"] = r.phi_delta;
  j["cond1"] = r.cond1;
  j["cond2"] = r.cond2;
  j["admissible"] = r.admissible;
  j["lambda1"] = r.lambda1;
  j["lambda2"] = r.lambda2;
  j["threshold"] = r.threshold;
  j["epsilon"] = r.epsilon;
  j["slack1"] = r.slack1;
  j["slack2"] = r.slack2;
  if (std::isfinite(r.eta)) j["eta"] = r.eta;
  if (std::isfinite(r.c_factor)) j["c_factor"] = r.c_factor;
  return j.dump(2) + "\n";
}

std::string exponent_report_text(const ExponentReport& r) {
  std::ostringstream os;
  os << "delta     = " << fmt_double(r.delta) << "\n"
     << "phi_delta = " << fmt_double(r.phi_delta) << "\n"
     << "cond1     = " << fmt_double(r.cond1) << "   (phi - delta/2, must stay < 1)\n"
     << "cond2     = " << fmt_double(r.cond2) << "   (phi + delta/2, must stay < 3/2)\n"
     << "admissible = " << (r.admissible ? "true" : "false") << "\n"
     << "slack1    = " << fmt_double(r.slack1) << "  vs 1 - eps/10\n"
     << "slack2    = " << fmt_double(r.slack2) << "  vs 3/2 - eps/10\n"
     << "lambda1   = " << fmt_double(r.lambda1) << "\n"
     << "lambda2   = " << fmt_double(r.lambda2) << "\n"
     << "threshold = " << fmt_double(r.threshold) << "\n";
  if (std::isfinite(r.eta)) os << "eta       = " << fmt_double(r.eta) << "\n";
  if (std::isfinite(r.c_factor)) os << "c_factor  = " << fmt_double(r.c_factor) << "\n";
  return os.str();
}

std::string budget_csv(const ErrorBudget& b) {
  std::string out = "label,exponent,bound,pass\n";
  for (const auto& e : b.entries) {
    const bool pass = (e.label == "main") || (e.exponent < b.main_exponent);
    out += e.label;
    out += ',';
    out += fmt_double(e.exponent);
    out += ',';
    out += fmt_double(b.main_exponent);
    out += ',';
    out += pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string budget_text(const ErrorBudget& b) {
  std::ostringstream os;
  os << "error budget at X=" << fmt_double(b.x) << " H=" << fmt_double(b.h)
     << " eps1=" << fmt_double(b.eps1) << " (delta=" << fmt_double(b.delta) << ")\n";
  if (b.contract_warning) os << "contract_warning: H outside [4, X]\n";
  for (const auto& e : b.entries) {
    const bool pass = (e.label == "main") || (e.exponent < b.main_exponent);
    os << "  " << e.label << ": X^" << fmt_double(e.exponent) << (pass ? "" : "  [EXCEEDS MAIN]")
       << "\n";
  }
  os << "all_below_main = " << (b.all_below_main ? "true" : "false") << "\n";
  return os.str();
}

std::string budget_json(const ErrorBudget& b) {
  ordered_json j;
  j["x"] = b.x;
  j["h"] = b.h;
  j["eps1"] = b.eps1;
  j["delta"] = b.delta;
  j["main_exponent"] = b.main_exponent;
  ordered_json entries = ordered_json::array();
  for (const auto& e : b.entries) {
    ordered_json je;
    je["label"] = e.label;
    je["exponent"] = e.exponent;
    je["bound"] = b.main_exponent;
    je["pass"] = (e.label == "main") || (e.exponent < b.main_exponent);
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["all_below_main"] = b.all_below_main;
  j["contract_warning"] = b.contract_warning;
  return j.dump(2) + "\n";
}

std::string truncation_csv(const TruncationDiag& d) {
  std::string out = "X,H,B,T,r1,r2,r3,sample_x,psi_err\n";
  for (const auto& [sx, err] : d.psi_err_sample) {
    out += fmt_double(d.x);
    out += ',';
    out += fmt_double(d.h);
    out += ',';
    out += fmt_double(d.b_cap);
    out += ',';
    out += fmt_double(d.t);
    out += ',';
    out += fmt_double(d.r1);
    out += ',';
    out += fmt_double(d.r2);
    out += ',';
    out += fmt_double(d.r3);
    out += ',';
    out += fmt_double(sx);
    out += ',';
    out += fmt_double(err);
    out += '\n';
  }
  return out;
}

std::string truncation_text(const TruncationDiag& d, const ZeroTable& zeros) {
  std::ostringstream os;
  os << "explicit-formula diagnostics X=" << fmt_double(d.x) << " H=" << fmt_double(d.h)
     << " B=" << fmt_double(d.b_cap) << " T=" << fmt_double(d.t) << "\n"
     << "zeros: count=" << zeros.count() << " digest=" << zeros.source_digest << "\n"
     << "r1 = " << fmt_double(d.r1) << "\n"
     << "r2 = " << fmt_double(d.r2) << "\n"
     << "r3 = " << fmt_double(d.r3) << "\n"
     << "psi_err samples (x, psi_trunc - psi):\n";
  for (const auto& [sx, err] : d.psi_err_sample) {
    os << "  " << fmt_double(sx) << "  " << fmt_double(err) << "\n";
  }
  return os.str();
}

std::string truncation_json(const TruncationDiag& d, const ZeroTable& zeros) {
  ordered_json j;
  j["x"] = d.x;
  j["h"] = d.h;
  j["b"] = d.b_cap;
  j["t"] = d.t;
  j["r1"] = d.r1;
  j["r2"] = d.r2;
  j["r3"] = d.r3;
  j["zero_count"] = zeros.count();
  j["source_digest"] = zeros.source_digest;
  ordered_json samples = ordered_json::array();
  for (const auto& [sx, err] : d.psi_err_sample) {
    ordered_json s;
    s["x"] = sx;
    s["psi_err"] = err;
    samples.push_back(s);
  }
  j["psi_err_sample"] = samples;
  return j.dump(2) + "\n";
}

namespace {

struct OutputSink {
  std::ostream& stream;
  std::string path;  // empty = stream

  void write(const std::string& bytes) const {
    if (path.empty()) {
      stream << bytes;
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output path " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for output path " + path);
  }
};

std::optional<std::filesystem::path> resolve_cache(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return std::filesystem::path(*flag);
  if (const char* env = std::getenv("SFLAB_CACHE"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

// Emits the config echo: text reports carry it as a '#' header, CSV and
// JSON stay schema-clean and the echo goes to the error stream.
void echo_config(const RunConfig& cfg, std::string& text_out, std::ostream& err) {
  if (cfg.format == "text") {
    text_out += "# " + cfg.echo_line() + "\n";
  } else {
    err << "# " << cfg.echo_line() << "\n";
  }
}

std::string opt_str(const std::optional<double>& v) {
  return v ? fmt_double(*v) : "-";
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sflab: sums of a prime and a square-full number, at desk scale"};
  app.fallthrough();
  // help stays on --help only; -h would shadow the --h window flag
  app.set_help_flag("--help", "Print help and exit");
  const auto add_cmd = [&app](const char* name, const char* desc) {
    auto* c = app.add_subcommand(name, desc);
    c->set_help_flag("--help", "Print help and exit");
    return c;
  };

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write the report to this path instead of stdout");
  std::string cache_flag;
  app.add_option("--cache", cache_flag, "Cache directory (overrides SFLAB_CACHE)");
  app.add_option("--seed", cfg.seed, "Seed for randomized sweeps")->capture_default_str();
  app.add_flag("--timings", cfg.timings,
               "Emit measured runtimes (off by default; timings break byte-reproducibility)");

  // primes
  auto* primes_cmd = add_cmd("primes", "Enumerate primes up to a limit");
  u64 primes_limit = 0;
  bool primes_count_only = false;
  primes_cmd->add_option("--limit", primes_limit, "Inclusive upper bound")->required();
  primes_cmd->add_flag("--count-only", primes_count_only, "Print only the count");

  // squarefull
  auto* sf_cmd = add_cmd("squarefull", "Enumerate square-full numbers");
  u64 sf_limit = 0;
  double sf_b = 0.0;
  bool sf_count_only = false;
  bool sf_exclude_one = false;
  std::string sf_csv;
  sf_cmd->add_option("--limit", sf_limit, "Inclusive upper bound")->required();
  auto* sf_b_opt = sf_cmd->add_option("--b", sf_b, "Restrict to items with b <= B");
  sf_cmd->add_flag("--count-only", sf_count_only, "Print only the count");
  sf_cmd->add_flag("--exclude-one", sf_exclude_one,
                   "Drop n = 1 from the set (sensitivity checks)");
  sf_cmd->add_option("--csv", sf_csv, "Write CSV (n,a,b) to this path");

  // zeta
  auto* zeta_cmd = add_cmd("zeta", "Evaluate the Riemann zeta function");
  double zeta_s = 0.0;
  zeta_cmd->add_option("--s", zeta_s, "Real argument, s >= 1.1")->required();

  // constant
  auto* const_cmd =
      add_cmd("constant", "Print zeta(3/2)/zeta(3) at full precision");

  // r
  auto* r_cmd = add_cmd("r", "Representation function R(N) (or R~_B with --b)");
  u64 r_n = 0;
  double r_b = 0.0;
  r_cmd->add_option("--n", r_n, "Argument N")->required();
  auto* r_b_opt = r_cmd->add_option("--b", r_b, "b-part cap B");

  // window
  auto* win_cmd = add_cmd("window", "Window sum over (X, X+H]");
  u64 win_x = 0, win_h = 0;
  double win_b = 0.0;
  std::string win_method = "prefix", win_weight = "logp";
  win_cmd->add_option("--x", win_x, "Left endpoint X")->required();
  win_cmd->add_option("--h", win_h, "Window length H")->required();
  auto* win_b_opt = win_cmd->add_option("--b", win_b, "b-part cap B");
  win_cmd->add_option("--method", win_method, "pair | prefix")
      ->check(CLI::IsMember({"pair", "prefix"}))
      ->capture_default_str();
  win_cmd->add_option("--weight", win_weight, "logp | lambda (text headline)")
      ->check(CLI::IsMember({"logp", "lambda"}))
      ->capture_default_str();

  // sweep
  auto* sweep_cmd = add_cmd("sweep", "Window sums across a list of X values");
  std::vector<u64> sweep_xs;
  double sweep_hexp = 0.7, sweep_a = 0.0;
  u64 sweep_budget = 0;
  std::string sweep_csv, sweep_method = "prefix";
  sweep_cmd->add_option("--x-list", sweep_xs, "X values (comma or space separated)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--h-exp", sweep_hexp, "H = ceil(X^E)")->required();
  auto* sweep_a_opt =
      sweep_cmd->add_option("--a", sweep_a, "Use B = (log X)^{4A}, capped at X^{1/3}");
  sweep_cmd->add_option("--budget", sweep_budget, "Sieve budget (default: largest X+H)");
  sweep_cmd->add_option("--csv", sweep_csv, "Write CSV rows to this path");
  sweep_cmd->add_option("--method", sweep_method, "pair | prefix")
      ->check(CLI::IsMember({"pair", "prefix"}))
      ->capture_default_str();

  // psi
  auto* psi_cmd = add_cmd("psi", "Chebyshev psi, optionally truncated over zeros");
  double psi_x = 0.0, psi_t = 0.0;
  std::string psi_zeros;
  psi_cmd->add_option("--x", psi_x, "Argument x")->required();
  auto* psi_zeros_opt = psi_cmd->add_option("--zeros", psi_zeros, "Zero table file");
  auto* psi_t_opt = psi_cmd->add_option("--t", psi_t, "Truncation height T");
  psi_t_opt->needs(psi_zeros_opt);

  // explicit
  auto* exp_cmd = add_cmd("explicit", "Truncated explicit-formula diagnostics");
  u64 ex_x = 0, ex_h = 0;
  double ex_b = 1.0, ex_t = 0.0;
  std::string ex_zeros, ex_csv;
  exp_cmd->add_option("--x", ex_x, "Window start X")->required();
  exp_cmd->add_option("--h", ex_h, "Window length H")->required();
  exp_cmd->add_option("--b", ex_b, "b-part cap B")->required();
  exp_cmd->add_option("--t", ex_t, "Truncation height T")->required();
  exp_cmd->add_option("--zeros", ex_zeros, "Zero table file")->required();
  exp_cmd->add_option("--csv", ex_csv, "Write CSV rows to this path");

  // exponents
  auto* expn_cmd = add_cmd("exponents", "Zero-density exponent calculus");
  double expn_phi = 0.0, expn_calpha = 0.0, expn_delta = 0.0, expn_eps1 = 0.0;
  double expn_x = 0.0, expn_h = 0.0, expn_c = 1.0, expn_c1 = 1.0;
  bool expn_solve = false, expn_budget = false;
  auto* expn_phi_opt = expn_cmd->add_option("--phi", expn_phi, "Evaluate phi(lambda)");
  auto* expn_ca_opt = expn_cmd->add_option("--c-alpha", expn_calpha, "Evaluate c(alpha)");
  expn_cmd->add_flag("--solve", expn_solve, "Solve the lambda root equations");
  auto* expn_delta_opt =
      expn_cmd->add_option("--delta", expn_delta, "Admissibility report at Delta");
  auto* expn_eps_opt = expn_cmd->add_option("--eps1", expn_eps1, "Epsilon for slack / budget");
  expn_cmd->add_flag("--budget", expn_budget, "Error-budget exponents (needs --x, --h)");
  auto* expn_x_opt = expn_cmd->add_option("--x", expn_x, "X for the budget / eta context");
  auto* expn_h_opt = expn_cmd->add_option("--h", expn_h, "H for the budget");
  expn_cmd->add_option("--c", expn_c, "Constant c in C(X)")->capture_default_str();
  expn_cmd->add_option("--c1", expn_c1, "Constant c1 in eta(X)")->capture_default_str();

  app.require_subcommand(1);

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;  // flag errors are contract errors: exit 1
  }

  cfg.cache_dir = cache_flag.empty() ? std::optional<std::string>() : cache_flag;
  const auto cache = resolve_cache(cfg.cache_dir);

  std::string payload;

  if (primes_cmd->parsed()) {
    cfg.command = "primes";
    cfg.flags = {{"limit", std::to_string(primes_limit)},
                 {"count_only", primes_count_only ? "true" : "false"}};
    echo_config(cfg, payload, err);
    const auto table = SieveTable::build(primes_limit, cache);
    if (!table.cache_warning().empty()) err << "warning: " << table.cache_warning() << "\n";
    if (cfg.format == "json") {
      ordered_json j;
      j["limit"] = primes_limit;
      j["count"] = table.primes().size();
      if (!primes_count_only) j["primes"] = std::vector<u64>(table.primes().begin(), table.primes().end());
      payload = j.dump(2) + "\n";
    } else if (primes_count_only) {
      payload += std::to_string(table.primes().size()) + "\n";
    } else {
      if (cfg.format == "csv") payload += "p\n";
      for (u64 p : table.primes()) payload += std::to_string(p) + "\n";
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (sf_cmd->parsed()) {
    cfg.command = "squarefull";
    std::optional<double> cap;
    if (sf_b_opt->count() > 0) cap = sf_b;
    cfg.flags = {{"limit", std::to_string(sf_limit)},
                 {"b", opt_str(cap)},
                 {"count_only", sf_count_only ? "true" : "false"},
                 {"exclude_one", sf_exclude_one ? "true" : "false"}};
    if (!sf_csv.empty() && !sf_count_only) cfg.format = "csv";
    echo_config(cfg, payload, err);
    const auto set = SquarefullSet::enumerate(sf_limit, cap, !sf_exclude_one);
    if (sf_count_only) {
      if (cfg.format == "json") {
        ordered_json j;
        j["limit"] = sf_limit;
        j["count"] = set.size();
        payload = j.dump(2) + "\n";
      } else {
        payload += std::to_string(set.size()) + "\n";
      }
    } else if (cfg.format == "json") {
      ordered_json j;
      j["limit"] = sf_limit;
      j["count"] = set.size();
      ordered_json items = ordered_json::array();
      for (const auto& it : set.items()) {
        ordered_json ji;
        ji["n"] = it.n;
        ji["a"] = it.a;
        ji["b"] = it.b;
        items.push_back(ji);
      }
      j["items"] = items;
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += squarefull_csv(set.items());
    } else {
      for (const auto& it : set.items()) {
        payload += std::to_string(it.n) + " " + std::to_string(it.a) + " " +
                   std::to_string(it.b) + "\n";
      }
    }
    OutputSink sink{out, !sf_csv.empty() ? sf_csv : cfg.out_path};
    if (!sf_csv.empty() && !sf_count_only) payload = squarefull_csv(set.items());
    sink.write(payload);
    return 0;
  }

  if (zeta_cmd->parsed()) {
    cfg.command = "zeta";
    cfg.flags = {{"s", fmt_double(zeta_s)}};
    echo_config(cfg, payload, err);
    const auto z = zeta(zeta_s);
    if (cfg.format == "json") {
      ordered_json j;
      j["s"] = z.s;
      j["value"] = z.value;
      j["abs_error_bound"] = z.abs_error_bound;
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += "s,value,abs_error_bound\n" + fmt_double(z.s) + "," + fmt_double(z.value) +
                 "," + fmt_double(z.abs_error_bound) + "\n";
    } else {
      payload += fmt_double(z.value) + "\n";
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (const_cmd->parsed()) {
    cfg.command = "constant";
    echo_config(cfg, payload, err);
    const double c = singular_constant();
    if (cfg.format == "json") {
      ordered_json j;
      j["singular_constant"] = c;
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += "singular_constant\n" + fmt_double(c) + "\n";
    } else {
      payload += fmt_double(c) + "\n";
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (r_cmd->parsed()) {
    cfg.command = "r";
    std::optional<double> cap;
    if (r_b_opt->count() > 0) cap = r_b;
    cfg.flags = {{"n", std::to_string(r_n)}, {"b", opt_str(cap)}};
    echo_config(cfg, payload, err);
    const auto table = SieveTable::build(std::max<u64>(r_n, 2), cache);
    if (!table.cache_warning().empty()) err << "warning: " << table.cache_warning() << "\n";
    const double v = cap ? r_tilde(r_n, *cap, table) : r_of_n(r_n, table);
    if (cfg.format == "json") {
      ordered_json j;
      j["n"] = r_n;
      j["b"] = cap ? *cap : 0.0;
      j["value"] = v;
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += "n,b,value\n" + std::to_string(r_n) + "," + fmt_double(cap ? *cap : 0.0) +
                 "," + fmt_double(v) + "\n";
    } else {
      payload += fmt_double(v) + "\n";
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (win_cmd->parsed()) {
    cfg.command = "window";
    std::optional<double> cap;
    if (win_b_opt->count() > 0) cap = win_b;
    cfg.flags = {{"x", std::to_string(win_x)},
                 {"h", std::to_string(win_h)},
                 {"b", opt_str(cap)},
                 {"method", win_method},
                 {"weight", win_weight}};
    echo_config(cfg, payload, err);
    const auto table = SieveTable::build(std::max<u64>(win_x + win_h, 2), cache);
    if (!table.cache_warning().empty()) err << "warning: " << table.cache_warning() << "\n";
    const auto method =
        win_method == "pair" ? WindowMethod::pair_enumeration : WindowMethod::prefix_sum;
    const auto rep = window_sum({win_x, win_h}, cap, table, method);
    if (rep.contract_warning && cfg.format != "text") {
      err << "warning: contract violation (H outside [4, X]); computation proceeded\n";
    }
    if (cfg.format == "json") {
      payload = window_report_json(rep, cfg.timings);
    } else if (cfg.format == "csv") {
      payload += window_report_csv(rep, cfg.timings);
    } else {
      payload += window_report_text(rep, cfg.timings, win_weight);
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    cfg.command = "sweep";
    SweepOptions opt;
    opt.h_exponent = sweep_hexp;
    opt.b_rule = (sweep_a_opt->count() > 0) ? BRule::log_power : BRule::none;
    opt.a_param = sweep_a;
    opt.sieve_budget = sweep_budget;
    opt.method =
        sweep_method == "pair" ? WindowMethod::pair_enumeration : WindowMethod::prefix_sum;
    opt.cache_dir = cache;
    std::string xs_str;
    for (std::size_t i = 0; i < sweep_xs.size(); ++i) {
      if (i) xs_str += ';';
      xs_str += std::to_string(sweep_xs[i]);
    }
    cfg.flags = {{"x_list", xs_str},
                 {"h_exp", fmt_double(sweep_hexp)},
                 {"a", sweep_a_opt->count() ? fmt_double(sweep_a) : "-"},
                 {"budget", std::to_string(sweep_budget)},
                 {"method", sweep_method}};
    if (!sweep_csv.empty()) cfg.format = "csv";
    echo_config(cfg, payload, err);
    const auto entries = sweep(sweep_xs, opt);
    for (const auto& e : entries) {
      if (!e.error.empty()) err << "E_RANGE (row X=" << e.x << "): " << e.error << "\n";
    }
    if (cfg.format == "json") {
      payload = sweep_json(entries, cfg.timings);
    } else if (cfg.format == "csv") {
      payload += window_report_csv(entries, cfg.timings);
    } else {
      for (const auto& e : entries) {
        if (e.report) {
          payload += window_report_text(*e.report, cfg.timings, "logp");
          payload += "--\n";
        } else {
          payload += "X=" + std::to_string(e.x) + " error: " + e.error + "\n--\n";
        }
      }
    }
    OutputSink{out, !sweep_csv.empty() ? sweep_csv : cfg.out_path}.write(payload);
    return 0;
  }

  if (psi_cmd->parsed()) {
    cfg.command = "psi";
    cfg.flags = {{"x", fmt_double(psi_x)},
                 {"zeros", psi_zeros_opt->count() ? psi_zeros : "-"},
                 {"t", psi_t_opt->count() ? fmt_double(psi_t) : "-"}};
    echo_config(cfg, payload, err);
    if (!(psi_x >= 1.0)) throw DomainError("psi: requires x >= 1");
    const u64 limit = static_cast<u64>(std::floor(psi_x));
    const auto table = SieveTable::build(std::max<u64>(limit, 2), cache);
    const double psi_exact = table.psi(psi_x);
    ordered_json j;
    j["x"] = psi_x;
    j["psi"] = psi_exact;
    std::string text = "psi(" + fmt_double(psi_x) + ") = " + fmt_double(psi_exact) + "\n";
    std::string csv_hdr = "x,psi";
    std::string csv_row = fmt_double(psi_x) + "," + fmt_double(psi_exact);
    if (psi_zeros_opt->count() > 0) {
      const auto zeros = load_zeros(psi_zeros);
      const double trunc = psi_truncated(psi_x, psi_t, zeros);
      j["t"] = psi_t;
      j["psi_truncated"] = trunc;
      j["truncation_error"] = trunc - psi_exact;
      j["zero_count"] = zeros.count_leq(psi_t);
      text += "psi_truncated(T=" + fmt_double(psi_t) + ") = " + fmt_double(trunc) + "\n";
      text += "truncation_error = " + fmt_double(trunc - psi_exact) + "\n";
      csv_hdr += ",t,psi_truncated,truncation_error";
      csv_row += "," + fmt_double(psi_t) + "," + fmt_double(trunc) + "," +
                 fmt_double(trunc - psi_exact);
    }
    if (cfg.format == "json") {
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += csv_hdr + "\n" + csv_row + "\n";
    } else {
      payload += text;
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  if (exp_cmd->parsed()) {
    cfg.command = "explicit";
    cfg.flags = {{"x", std::to_string(ex_x)},
                 {"h", std::to_string(ex_h)},
                 {"b", fmt_double(ex_b)},
                 {"t", fmt_double(ex_t)},
                 {"zeros", ex_zeros}};
    if (!ex_csv.empty()) cfg.format = "csv";
    echo_config(cfg, payload, err);
    const auto zeros = load_zeros(ex_zeros);
    const auto table = SieveTable::build(std::max<u64>(ex_x + ex_h, 2), cache);
    const auto diag = truncation_diag(ex_x, ex_h, ex_b, ex_t, zeros, table);
    if (cfg.format == "json") {
      payload = truncation_json(diag, zeros);
    } else if (cfg.format == "csv") {
      payload += truncation_csv(diag);
    } else {
      payload += truncation_text(diag, zeros);
    }
    OutputSink{out, !ex_csv.empty() ? ex_csv : cfg.out_path}.write(payload);
    return 0;
  }

  if (expn_cmd->parsed()) {
    cfg.command = "exponents";
    const bool has_phi = expn_phi_opt->count() > 0;
    const bool has_ca = expn_ca_opt->count() > 0;
    const bool has_delta = expn_delta_opt->count() > 0;
    if (!has_phi && !has_ca && !expn_solve && !has_delta && !expn_budget) {
      throw DomainError(
          "exponents: choose at least one of --phi, --c-alpha, --solve, --delta, --budget");
    }
    cfg.flags = {{"phi", has_phi ? fmt_double(expn_phi) : "-"},
                 {"c_alpha", has_ca ? fmt_double(expn_calpha) : "-"},
                 {"solve", expn_solve ? "true" : "false"},
                 {"delta", has_delta ? fmt_double(expn_delta) : "-"},
                 {"eps1", expn_eps_opt->count() ? fmt_double(expn_eps1) : "-"},
                 {"budget", expn_budget ? "true" : "false"},
                 {"x", expn_x_opt->count() ? fmt_double(expn_x) : "-"},
                 {"h", expn_h_opt->count() ? fmt_double(expn_h) : "-"}};
    echo_config(cfg, payload, err);

    ordered_json j;
    std::string text;
    std::string csv;

    if (has_phi) {
      const double v = phi(expn_phi);
      j["phi"] = {{"lambda", expn_phi}, {"value", v}};
      text += "phi(" + fmt_double(expn_phi) + ") = " + fmt_double(v) + "\n";
      csv += "phi(" + fmt_double(expn_phi) + ")," + fmt_double(v) + ",,\n";
    }
    if (has_ca) {
      const double v = c_alpha(expn_calpha);
      j["c_alpha"] = {{"alpha", expn_calpha}, {"value", v}};
      text += "c(" + fmt_double(expn_calpha) + ") = " + fmt_double(v) + "\n";
      csv += "c_alpha(" + fmt_double(expn_calpha) + ")," + fmt_double(v) + ",,\n";
    }
    if (expn_solve) {
      const auto roots = solve_lambda_roots();
      ordered_json js;
      js["lambda1"] = roots.lambda1;
      js["lambda2"] = roots.lambda2;
      js["threshold"] = 1.0 - roots.lambda2;
      js["lambda2_closed_form"] = lambda2_closed_form();
      js["threshold_closed_form"] = threshold_exponent();
      j["solve"] = js;
      text += "lambda1 = " + fmt_double(roots.lambda1) + "\n";
      text += "lambda2 = " + fmt_double(roots.lambda2) + "  (closed form " +
              fmt_double(lambda2_closed_form()) + ")\n";
      text += "threshold = " + fmt_double(1.0 - roots.lambda2) + "  (closed form " +
              fmt_double(threshold_exponent()) + ")\n";
      csv += "lambda1," + fmt_double(roots.lambda1) + ",,\n";
      csv += "lambda2," + fmt_double(roots.lambda2) + ",,\n";
      csv += "threshold," + fmt_double(1.0 - roots.lambda2) + ",,\n";
    }
    if (has_delta) {
      const double eps = expn_eps_opt->count() ? expn_eps1 : 0.0;
      const ExponentReport rep =
          (expn_x_opt->count() > 0)
              ? admissibility(expn_delta, eps, expn_x, expn_c, expn_c1)
              : admissibility(expn_delta, eps);
      // ExponentReport is its own JSON document when it is the only mode.
      if (!has_phi && !has_ca && !expn_solve && !expn_budget && cfg.format == "json") {
        payload = exponent_report_json(rep);
        OutputSink{out, cfg.out_path}.write(payload);
        return 0;
      }
      j["admissibility"] = ordered_json::parse(exponent_report_json(rep));
      text += exponent_report_text(rep);
      csv += "cond1," + fmt_double(rep.cond1) + ",1,\n";
      csv += "cond2," + fmt_double(rep.cond2) + ",1.5,\n";
    }
    if (expn_budget) {
      if (expn_x_opt->count() == 0 || expn_h_opt->count() == 0) {
        throw DomainError("exponents --budget requires --x and --h");
      }
      const double eps1 = expn_eps_opt->count() ? expn_eps1 : 0.01;
      const auto budget = error_budget(expn_x, expn_h, eps1);
      if (budget.contract_warning && cfg.format != "text") {
        err << "warning: contract violation (H outside [4, X]); computation proceeded\n";
      }
      if (!has_phi && !has_ca && !expn_solve && !has_delta) {
        if (cfg.format == "json") {
          payload = budget_json(budget);
        } else if (cfg.format == "csv") {
          payload += budget_csv(budget);
        } else {
          payload += budget_text(budget);
        }
        OutputSink{out, cfg.out_path}.write(payload);
        return 0;
      }
      j["budget"] = ordered_json::parse(budget_json(budget));
      text += budget_text(budget);
      csv += budget_csv(budget);
    }

    if (cfg.format == "json") {
      payload = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
      payload += "label,exponent,bound,pass\n" + csv;
    } else {
      payload += text;
    }
    OutputSink{out, cfg.out_path}.write(payload);
    return 0;
  }

  err << "E_DOMAIN: no subcommand selected\n";
  return 1;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return run(std::move(args), out, err);
  } catch (const DomainError& e) {
    err << "E_DOMAIN: " << e.what() << "\n";
    return 1;
  } catch (const RangeError& e) {
    err << "E_RANGE: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "E_PARSE: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "E_IO: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sflab::cli
