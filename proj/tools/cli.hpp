#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sflab/exponents.hpp"
#include "sflab/explicit_formula.hpp"
#include "sflab/representation.hpp"
#include "sflab/zeta.hpp"

namespace sflab::cli {

// Resolved run configuration. Every run echoes the full configuration:
// into the report header for text output, to the error stream otherwise,
// so CSV and JSON payloads stay schema-clean.
struct RunConfig {
  std::string command;
  std::string format = "text";  // text | csv | json
  std::string out_path;         // empty = stdout
  std::optional<std::string> cache_dir;
  long long seed = 0;
  bool timings = false;  // off by default so repeated runs are byte-identical
  std::vector<std::pair<std::string, std::string>> flags;

  std::string echo_line() const;
};

// 17 significant digits, enough to round-trip any double.
std::string fmt_double(double v);

// --- deterministic report serialization -----------------------------------

std::string window_report_csv(std::span<const SweepEntry> entries, bool timings);
std::string window_report_csv(const WindowReport& report, bool timings);
std::string window_report_text(const WindowReport& report, bool timings,
                               const std::string& weight);
std::string window_report_json(const WindowReport& report, bool timings);
std::string sweep_json(std::span<const SweepEntry> entries, bool timings);

std::string squarefull_csv(std::span<const SquarefullItem> items);

std::string exponent_report_json(const ExponentReport& report);
std::string exponent_report_text(const ExponentReport& report);

std::string budget_csv(const ErrorBudget& budget);
std::string budget_text(const ErrorBudget& budget);
std::string budget_json(const ErrorBudget& budget);

std::string truncation_csv(const TruncationDiag& diag);
std::string truncation_text(const TruncationDiag& diag, const ZeroTable& zeros);
std::string truncation_json(const TruncationDiag& diag, const ZeroTable& zeros);

// --- entry point -----------------------------------------------------------

// Routes argv to the module operations. Exit codes: 0 success, 1 domain /
// range / parse error, 2 I/O error. Errors print one line to `err` with a
// stable E_DOMAIN / E_RANGE / E_PARSE / E_IO prefix.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sflab::cli
