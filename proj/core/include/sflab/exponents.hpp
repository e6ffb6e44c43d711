#pragma once

#include <string>
#include <vector>

namespace sflab {

// Breakpoints of phi, kept as exact rationals; branch dispatch compares
// lambda * den against num so no rounded breakpoint constant is involved.
inline constexpr long long kPhiBreak1Num = 25, kPhiBreak1Den = 48;
inline constexpr long long kPhiBreak2Num = 3, kPhiBreak2Den = 4;

// Zero-density exponent curve:
//   (3/5) l + 3/4            0    <= l <= 25/48
//   3 l + 2 (1 - sqrt(3 l))  25/48 <= l <= 3/4
//   l + 1/2                  3/4  <= l <= 1
// Continuous at both breakpoints (17/16 and 5/4). Outside [0,1]: domain error.
double phi(double lambda);

// Ingham-Huxley zero-density exponent:
//   3(1-a)/(3a-1)  3/4 <= a <= 1
//   3(1-a)/(2-a)   1/2 <= a <= 3/4
// Outside [1/2,1]: domain error.
double c_alpha(double alpha);

// Closed forms: lambda2 = (17 + 4 sqrt(15))/49, threshold = 1 - lambda2
// = (32 - 4 sqrt(15))/49.
double lambda2_closed_form();
double threshold_exponent();

struct LambdaRoots {
  double lambda1;  // root of phi(l) - l/2 = 1   (exactly 1)
  double lambda2;  // root of phi(l) + l/2 = 3/2
};

// Bisection on [0,1]; both objectives are strictly increasing (slopes at
// least 1/10 and 11/10), so the bracketed roots are unique.
LambdaRoots solve_lambda_roots(double tol = 1e-14);

struct ExponentReport {
  double delta = 0.0;
  double phi_delta = 0.0;
  double cond1 = 0.0;  // phi(delta) - delta/2
  double cond2 = 0.0;  // phi(delta) + delta/2
  bool admissible = false;  // cond1 < 1 and cond2 < 3/2
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double threshold = 0.0;
  double epsilon = 0.0;
  double slack1 = 0.0;  // (1 - eps/10) - cond1
  double slack2 = 0.0;  // (3/2 - eps/10) - cond2
  // Diagnostic context, NaN unless an X was supplied.
  double eta = 0.0;
  double c_factor = 0.0;
};

ExponentReport admissibility(double delta, double epsilon);
// Same report with eta and C(X)^{-1} evaluated at x (constants c, c1 are
// diagnostic-only and default to 1).
ExponentReport admissibility(double delta, double epsilon, double x, double c, double c1);

struct BudgetEntry {
  std::string label;
  double exponent;  // X-exponent of the term
};

struct ErrorBudget {
  double x = 0.0;
  double h = 0.0;
  double eps1 = 0.0;
  double delta = 0.0;
  double main_exponent = 0.0;  // 3/2 - delta
  std::vector<BudgetEntry> entries;
  bool all_below_main = false;
  bool contract_warning = false;  // H outside [4, X]
};

// X-exponents of the main term and of every error term, with a flag that
// records whether each error exponent stays strictly below the main one.
ErrorBudget error_budget(double x, double h, double eps1);

// eta(X) = c1 (log X)^{-2/3} (log log X)^{-1/3}. X < 16 is a domain error.
double zero_free_width(double x, double c1);

// C(X)^{-1} = exp(c (log X / log log X)^{1/3}). X < 16 is a domain error.
double log_saving(double x, double c);

}  // namespace sflab
