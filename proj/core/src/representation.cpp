#include "sflab/representation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sflab/errors.hpp"
#include "sflab/exponents.hpp"
#include "sflab/kahan.hpp"
#include "sflab/zeta.hpp"

namespace sflab {

double Window::delta() const {
  return std::log(static_cast<double>(x) / static_cast<double>(h)) /
         std::log(static_cast<double>(x));
}

double Window::h_exponent() const {
  return std::log(static_cast<double>(h)) / std::log(static_cast<double>(x));
}

const char* method_name(WindowMethod m) {
  return m == WindowMethod::pair_enumeration ? "pair" : "prefix";
}

double r_tilde(u64 n, double b_cap, const SieveTable& table) {
  if (n < 2) throw DomainError("r_of_n: requires N >= 2");
  if (table.limit() < n) throw RangeError("r_of_n: sieve limit below N");
  if (!(b_cap >= 1.0)) throw DomainError("r_tilde: requires B >= 1");
  if (n == 2) return 0.0;  // no square-full f <= 0
  KahanSum acc;
  const auto set = SquarefullSet::enumerate(n - 2, b_cap);
  for (const auto& it : set.items()) {
    const u64 p = n - it.n;
    if (table.is_prime(p)) acc.add(std::log(static_cast<double>(p)));
  }
  return acc.value();
}

double r_of_n(u64 n, const SieveTable& table) {
  return r_tilde(n, std::numeric_limits<double>::infinity(), table);
}

WindowReport window_sum(Window w, std::optional<double> b_cap, const SieveTable& table,
                        WindowMethod method) {
  if (w.x < 2) throw DomainError("window_sum: requires X >= 2");
  const u64 upper = w.x + w.h;
  if (table.limit() < upper) throw RangeError("window_sum: sieve limit below X + H");

  const auto t0 = std::chrono::steady_clock::now();

  WindowReport rep;
  rep.window = w;
  rep.b_cap = b_cap;
  rep.method = method;
  rep.contract_warning = !w.contract_ok();
  rep.in_theorem_range = (w.h_exponent() > threshold_exponent()) && (w.h_exponent() < 1.0);

  const double cap = b_cap ? *b_cap : std::numeric_limits<double>::infinity();
  KahanSum logp;
  KahanSum lambda;
  if (upper >= 3) {
    const auto set = SquarefullSet::enumerate(upper - 2, cap);
    const double xd = static_cast<double>(w.x);
    for (const auto& it : set.items()) {
      // Window (X - f, X + H - f], lower endpoint clamped at 0 so that
      // f > X still contributes the primes up to X + H - f.
      const double lo = std::max(xd - static_cast<double>(it.n), 0.0);
      const double hi = static_cast<double>(upper - it.n);
      if (method == WindowMethod::prefix_sum) {
        logp.add(table.window_theta(lo, hi));
        lambda.add(table.window_psi(lo, hi));
      } else {
        logp.add(table.window_theta_direct(lo, hi));
        lambda.add(table.window_psi_direct(lo, hi));
      }
    }
  }
  rep.sum_logp = logp.value();
  rep.sum_lambda = lambda.value();
  rep.main_term =
      singular_constant() * static_cast<double>(w.h) * std::sqrt(static_cast<double>(w.x));
  rep.rel_dev = rep.sum_logp / rep.main_term - 1.0;

  const auto t1 = std::chrono::steady_clock::now();
  rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

std::vector<SweepEntry> sweep(std::span<const u64> xs, const SweepOptions& opt) {
  if (!(opt.h_exponent > 0.0) || !(opt.h_exponent < 1.0)) {
    throw DomainError("sweep: h_exponent must lie in (0, 1)");
  }

  struct Row {
    u64 x, h, upper;
  };
  std::vector<Row> rows;
  rows.reserve(xs.size());
  for (u64 x : xs) {
    const u64 h = static_cast<u64>(
        std::ceil(std::pow(static_cast<double>(x), opt.h_exponent)));
    rows.push_back({x, h, x + h});
  }

  u64 budget = opt.sieve_budget;
  if (budget == 0) {
    for (const Row& r : rows) budget = std::max(budget, r.upper);
  }
  budget = std::max<u64>(budget, 2);
  const SieveTable table = SieveTable::build(budget, opt.cache_dir);

  std::vector<SweepEntry> out;
  out.reserve(rows.size());
  for (const Row& r : rows) {
    SweepEntry entry;
    entry.x = r.x;
    if (r.upper > budget) {
      entry.error = "window X+H=" + std::to_string(r.upper) + " exceeds sieve budget " +
                    std::to_string(budget);
      out.push_back(std::move(entry));
      continue;
    }
    std::optional<double> cap;
    if (opt.b_rule == BRule::log_power) {
      const double lx = std::log(static_cast<double>(r.x));
      const double raw = std::pow(lx, 4.0 * opt.a_param);
      const double hard = std::cbrt(static_cast<double>(r.x));
      cap = std::min(raw, hard);  // beyond X^{1/3} the restriction is vacuous
    }
    entry.report = window_sum({r.x, r.h}, cap, table, opt.method);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace sflab
