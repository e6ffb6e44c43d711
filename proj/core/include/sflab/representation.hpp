#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sflab/sieve.hpp"
#include "sflab/squarefull.hpp"

namespace sflab {

// Short-interval window (X, X+H]. The standing assumption everywhere is
// 4 <= H <= X; violations are recorded, not fatal.
struct Window {
  u64 x = 0;
  u64 h = 0;

  // XH^{-1} = X^delta
  double delta() const;
  // H = X^{h_exponent}; delta + h_exponent = 1 in exact arithmetic.
  double h_exponent() const;
  bool contract_ok() const { return h >= 4 && h <= x; }
};

enum class WindowMethod { pair_enumeration, prefix_sum };

const char* method_name(WindowMethod m);  // "pair" / "prefix"

struct WindowReport {
  Window window;
  std::optional<double> b_cap;
  double sum_logp = 0.0;    // sum_{X < N <= X+H} R(N) (or R~_B with a cap)
  double sum_lambda = 0.0;  // Lambda-weighted variant
  double main_term = 0.0;   // singular_constant * H * sqrt(X)
  double rel_dev = 0.0;     // sum_logp / main_term - 1
  WindowMethod method = WindowMethod::prefix_sum;
  double runtime_ms = 0.0;
  bool contract_warning = false;
  bool in_theorem_range = false;  // threshold < h_exponent < 1
};

// R(N) = sum over square-full f < N with N - f prime of log(N - f).
// Requires N >= 2 and table.limit >= N.
double r_of_n(u64 n, const SieveTable& table);

// R~_B(N): same sum restricted to f = a^2 b^3 with square-free b <= B.
// Equals r_of_n(N) exactly (same code path) once B >= N^{1/3}.
double r_tilde(u64 n, double b_cap, const SieveTable& table);

// Exact window sum by either method. prefix_sum reuses the table's log
// prefix array; pair_enumeration re-sums log p per (p, f) pair, which is
// the independent route the two-method agreement check leans on.
WindowReport window_sum(Window w, std::optional<double> b_cap, const SieveTable& table,
                        WindowMethod method = WindowMethod::prefix_sum);

enum class BRule { none, log_power };

struct SweepEntry {
  u64 x = 0;
  std::optional<WindowReport> report;
  std::string error;  // nonempty when the row failed
};

struct SweepOptions {
  double h_exponent = 0.7;
  BRule b_rule = BRule::none;
  double a_param = 1.0;       // B = (log X)^{4A}, capped at X^{1/3}
  u64 sieve_budget = 0;       // 0 = fit to the largest window
  WindowMethod method = WindowMethod::prefix_sum;
  std::optional<std::filesystem::path> cache_dir;
};

// One report per X with H = ceil(X^{h_exponent}); windows beyond the sieve
// budget become error rows and the sweep continues.
std::vector<SweepEntry> sweep(std::span<const u64> xs, const SweepOptions& opt);

}  // namespace sflab
