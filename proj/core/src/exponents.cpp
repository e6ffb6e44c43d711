#include "sflab/exponents.hpp"

#include <cmath>
#include <limits>

#include "sflab/errors.hpp"

namespace sflab {

namespace {

// lambda <=> num/den without materializing the rounded quotient.
int cmp_rational(double lambda, long long num, long long den) {
  const double lhs = lambda * static_cast<double>(den);
  const double rhs = static_cast<double>(num);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

double phi(double lambda) {
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    throw DomainError("phi: lambda must lie in [0, 1]");
  }
  if (cmp_rational(lambda, kPhiBreak1Num, kPhiBreak1Den) <= 0) {
    return 0.6 * lambda + 0.75;
  }
  if (cmp_rational(lambda, kPhiBreak2Num, kPhiBreak2Den) <= 0) {
    return 3.0 * lambda + 2.0 * (1.0 - std::sqrt(3.0 * lambda));
  }
  return lambda + 0.5;
}

double c_alpha(double alpha) {
  if (!(alpha >= 0.5) || !(alpha <= 1.0)) {
    throw DomainError("c_alpha: alpha must lie in [1/2, 1]");
  }
  if (cmp_rational(alpha, 3, 4) >= 0) {
    return 3.0 * (1.0 - alpha) / (3.0 * alpha - 1.0);
  }
  return 3.0 * (1.0 - alpha) / (2.0 - alpha);
}

double lambda2_closed_form() { return (17.0 + 4.0 * std::sqrt(15.0)) / 49.0; }

double threshold_exponent() { return (32.0 - 4.0 * std::sqrt(15.0)) / 49.0; }

namespace {

double bisect_increasing(double (*g)(double), double lo, double hi, double tol) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double objective1(double l) { return phi(l) - 0.5 * l - 1.0; }
double objective2(double l) { return phi(l) + 0.5 * l - 1.5; }

}  // namespace

LambdaRoots solve_lambda_roots(double tol) {
  if (!(tol > 0.0)) throw DomainError("solve_lambda_roots: tol must be > 0");
  return {bisect_increasing(&objective1, 0.0, 1.0, tol),
          bisect_increasing(&objective2, 0.0, 1.0, tol)};
}

ExponentReport admissibility(double delta, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("admissibility: epsilon must be >= 0");
  ExponentReport r;
  r.delta = delta;
  r.phi_delta = phi(delta);  // domain check happens here
  r.cond1 = r.phi_delta - 0.5 * delta;
  r.cond2 = r.phi_delta + 0.5 * delta;
  r.admissible = (r.cond1 < 1.0) && (r.cond2 < 1.5);
  const auto roots = solve_lambda_roots();
  r.lambda1 = roots.lambda1;
  r.lambda2 = roots.lambda2;
  r.threshold = 1.0 - roots.lambda2;
  r.epsilon = epsilon;
  r.slack1 = (1.0 - epsilon / 10.0) - r.cond1;
  r.slack2 = (1.5 - epsilon / 10.0) - r.cond2;
  r.eta = std::numeric_limits<double>::quiet_NaN();
  r.c_factor = std::numeric_limits<double>::quiet_NaN();
  return r;
}

ExponentReport admissibility(double delta, double epsilon, double x, double c, double c1) {
  ExponentReport r = admissibility(delta, epsilon);
  r.eta = zero_free_width(x, c1);
  r.c_factor = log_saving(x, c);
  return r;
}

ErrorBudget error_budget(double x, double h, double eps1) {
  if (!(eps1 > 0.0)) throw DomainError("error_budget: eps1 must be > 0");
  if (!(x > 1.0) || !(h > 0.0)) throw DomainError("error_budget: requires X > 1 and H > 0");

  ErrorBudget b;
  b.x = x;
  b.h = h;
  b.eps1 = eps1;
  b.contract_warning = (h < 4.0) || (h > x);
  const double delta = std::log(x / h) / std::log(x);
  b.delta = delta;

  const double ph = phi(std::min(std::max(delta, 0.0), 1.0));
  b.main_exponent = 1.5 - delta;

  // T = X^{1+eps1} H^{-1} = X^{delta+eps1}; every bound below is written as
  // an X-exponent with H = X^{1-delta}.
  b.entries.push_back({"main", b.main_exponent});
  b.entries.push_back({"r1_r2", (1.0 - delta) - 0.5 + ph - 0.5 * delta + eps1});
  b.entries.push_back({"r3_density", ph - 0.5 * delta + 3.0 * eps1});
  b.entries.push_back({"r3_zero_free", 0.5 * (1.0 - delta) + 0.5 + 2.0 * eps1});
  b.entries.push_back({"t_term", delta + eps1});
  b.entries.push_back({"x32_t_inv", 1.5 - delta - eps1});

  b.all_below_main = true;
  for (const auto& e : b.entries) {
    if (e.label == "main") continue;
    if (!(e.exponent < b.main_exponent)) b.all_below_main = false;
  }
  return b;
}

double zero_free_width(double x, double c1) {
  if (!(x >= 16.0)) throw DomainError("zero_free_width: requires X >= 16");
  if (!(c1 > 0.0)) throw DomainError("zero_free_width: requires c1 > 0");
  const double lx = std::log(x);
  return c1 * std::pow(lx, -2.0 / 3.0) * std::pow(std::log(lx), -1.0 / 3.0);
}

double log_saving(double x, double c) {
  if (!(x >= 16.0)) throw DomainError("log_saving: requires X >= 16");
  if (!(c > 0.0)) throw DomainError("log_saving: requires c > 0");
  const double lx = std::log(x);
  return std::exp(c * std::cbrt(lx / std::log(lx)));
}

}  // namespace sflab
