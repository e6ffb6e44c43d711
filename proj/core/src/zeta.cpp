#include "sflab/zeta.hpp"

#include <cmath>

#include "sflab/arith.hpp"
#include "sflab/errors.hpp"
#include "sflab/kahan.hpp"

namespace sflab {

namespace {

// B_2, B_4, ..., B_12. B_12 only feeds the remainder bound.
constexpr double kBernoulli[6] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};

constexpr int kCutoff = 50;

}  // namespace

ZetaValue zeta(double s) {
  if (s <= 1.0) throw DomainError("zeta: pole at s = 1; requires s >= 1.1");
  if (s < 1.1) throw DomainError("zeta: s below desk range (s >= 1.1)");

  KahanSum head;
  for (int n = 1; n <= kCutoff; ++n) head.add(std::pow(static_cast<double>(n), -s));

  const double N = kCutoff;
  double value = head.value() + std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s);

  // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1},
  // assembled incrementally: term_k = term_{k-1} * (s+2k-3)(s+2k-2)/((2k-1)2k N^2).
  double coeff = s * std::pow(N, -s - 1.0);  // k = 1 rising factorial times N power
  double fact = 2.0;                         // (2k)!-ish running denominator
  double corr = 0.0;
  for (int k = 1; k <= 5; ++k) {
    corr += kBernoulli[k - 1] / fact * coeff;
    coeff *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) / (N * N);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  value += corr;

  // First omitted term bounds the Euler-Maclaurin remainder.
  const double bound = std::abs(kBernoulli[5] / fact * coeff);
  return {s, value, bound};
}

double singular_constant() { return zeta(1.5).value / zeta(3.0).value; }

double mobius_dirichlet_partial(double x, double s) {
  if (x < 1.0) throw DomainError("mobius_dirichlet_partial: requires x >= 1");
  if (s <= 1.0) throw DomainError("mobius_dirichlet_partial: requires s > 1");
  const u64 n_max = static_cast<u64>(std::floor(x));
  const auto flags = squarefree_flags(n_max);
  KahanSum acc;
  for (u64 n = 1; n <= n_max; ++n) {
    if (flags[n]) acc.add(std::pow(static_cast<double>(n), -s));
  }
  return acc.value();
}

}  // namespace sflab
