#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "sflab/sieve.hpp"

namespace sflab {

// Ordered positive imaginary parts of nontrivial zeta zeros. All zeros are
// taken on the critical line (tables list gamma only); beta enters the
// diagnostics as 1/2, never as an assumption being tested.
struct ZeroTable {
  std::vector<double> gammas;     // strictly increasing, positive
  std::uint64_t source_digest = 0;  // FNV-1a over the raw file bytes

  std::size_t count() const { return gammas.size(); }
  double max_gamma() const { return gammas.empty() ? 0.0 : gammas.back(); }
  // Zeros with gamma <= t.
  std::size_t count_leq(double t) const;
};

// Parses an ASCII zero table: one decimal gamma per line, '#' comments,
// strictly ascending. The first zero must lie within 1e-4 of 14.1347
// (guards against malformed files). Parse errors carry the line number.
ZeroTable load_zeros(const std::filesystem::path& path,
                     std::optional<std::size_t> limit = std::nullopt);

// Truncated explicit formula x - sum_{0 < gamma <= t} 2 Re(x^rho / rho),
// rho = 1/2 + i gamma. Conjugate zeros are paired, so the value is exactly
// real; the dropped O(X T^{-1} log^2 X) term is what callers measure.
// t = 0 returns x. t beyond the table coverage is a range error.
double psi_truncated(double x, double t, const ZeroTable& zeros);

// S_alpha(X+H) - S_alpha(X) with cutoff X on both sides, by direct
// summation over the b-capped square-full numbers.
std::complex<double> s_alpha_diff(u64 x, u64 h, double b_cap, std::complex<double> alpha);

// Same with alpha = rho = 1/2 + i gamma.
std::complex<double> s_rho_diff(u64 x, u64 h, double b_cap, double rho_gamma);

struct TruncationDiag {
  double x = 0.0;
  double h = 0.0;
  double t = 0.0;
  double b_cap = 0.0;
  double r1 = 0.0;  // |sum of Gamma-ratio terms|
  double r2 = 0.0;  // |sum of ((X+H)^rho - X^rho)/(2 rho)| * B
  double r3 = 0.0;  // sqrt(H) * #{gamma <= T}
  std::vector<std::pair<double, double>> psi_err_sample;  // (x, psi_trunc(x) - psi(x))
};

// Magnitudes of the three zero sums truncated at T, plus a 16-point sample
// of psi_trunc - psi across [X, X+H]. Summation is ascending in gamma with
// compensated accumulation; identical inputs give bit-identical output.
TruncationDiag truncation_diag(u64 x, u64 h, double b_cap, double t, const ZeroTable& zeros,
                               const SieveTable& table);

// log Gamma(z) for Re(z) > 0: Stirling with Bernoulli corrections, small
// arguments lifted by the recurrence. Accurate to ~1e-12 in the desk range.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace sflab
