#include "sflab/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "sflab/errors.hpp"
#include "sflab/kahan.hpp"
#include "sflab/squarefull.hpp"

namespace sflab {

std::size_t ZeroTable::count_leq(double t) const {
  return static_cast<std::size_t>(std::upper_bound(gammas.begin(), gammas.end(), t) -
                                  gammas.begin());
}

ZeroTable load_zeros(const std::filesystem::path& path, std::optional<std::size_t> limit) {
  std::ifstream in(path);
  if (!in) throw IoError("load_zeros: cannot open " + path.string());

  ZeroTable table;
  std::uint64_t digest = 1469598103934665603ull;  // FNV-1a offset basis
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (unsigned char c : line) {
      digest ^= c;
      digest *= 1099511628211ull;
    }
    digest ^= static_cast<unsigned char>('\n');
    digest *= 1099511628211ull;

    const auto hash = line.find('#');
    std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);

    double g = 0.0;
    std::size_t consumed = 0;
    try {
      g = std::stod(body, &consumed);
    } catch (const std::exception&) {
      throw ParseError("load_zeros: non-numeric value at line " + std::to_string(lineno));
    }
    if (consumed != body.size() || !std::isfinite(g)) {
      throw ParseError("load_zeros: non-numeric value at line " + std::to_string(lineno));
    }
    if (!table.gammas.empty() && g <= table.gammas.back()) {
      throw ParseError("load_zeros: non-ascending value at line " + std::to_string(lineno));
    }
    if (g <= 0.0) {
      throw ParseError("load_zeros: gamma must be positive at line " + std::to_string(lineno));
    }
    table.gammas.push_back(g);
    if (limit && table.gammas.size() >= *limit) break;
  }

  if (!table.gammas.empty() && std::abs(table.gammas.front() - 14.1347) > 1e-4) {
    throw ParseError("load_zeros: first zero " + std::to_string(table.gammas.front()) +
                     " outside the 14.1347 +- 1e-4 guard window");
  }
  table.source_digest = digest;
  return table;
}

double psi_truncated(double x, double t, const ZeroTable& zeros) {
  if (!(x >= 2.0)) throw DomainError("psi_truncated: requires x >= 2");
  if (!(t >= 0.0)) throw DomainError("psi_truncated: requires T >= 0");
  if (t > zeros.max_gamma()) {
    throw RangeError("psi_truncated: T exceeds zero table coverage (max gamma = " +
                     std::to_string(zeros.max_gamma()) + ")");
  }
  const double sqrt_x = std::sqrt(x);
  const double log_x = std::log(x);
  KahanSum acc;
  for (double g : zeros.gammas) {
    if (g > t) break;
    // 2 Re(x^rho / rho) with rho = 1/2 + i gamma
    const std::complex<double> rho(0.5, g);
    const std::complex<double> term =
        sqrt_x * std::exp(std::complex<double>(0.0, g * log_x)) / rho;
    acc.add(2.0 * term.real());
  }
  return x - acc.value();
}

std::complex<double> s_alpha_diff(u64 x, u64 h, double b_cap, std::complex<double> alpha) {
  const double xd = static_cast<double>(x);
  const double qd = static_cast<double>(x + h);
  return s_complex(qd, xd, b_cap, alpha) - s_complex(xd, xd, b_cap, alpha);
}

std::complex<double> s_rho_diff(u64 x, u64 h, double b_cap, double rho_gamma) {
  return s_alpha_diff(x, h, b_cap, std::complex<double>(0.5, rho_gamma));
}

namespace {

// Stirling series for log Gamma, Bernoulli terms through B_12. Arguments
// with |z| < 10 are lifted by log Gamma(z) = log Gamma(z + n) - sum log(z + k).
constexpr double kStirlingCoef[6] = {
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0 && z.imag() == 0.0) {
    throw DomainError("log_gamma: requires Re(z) > 0 or nonreal z");
  }
  std::complex<double> shift(0.0, 0.0);
  while (std::abs(z) < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const std::complex<double> lz = std::log(z);
  std::complex<double> res = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * std::numbers::pi);
  std::complex<double> zpow = 1.0 / z;
  const std::complex<double> z2 = z * z;
  for (double c : kStirlingCoef) {
    res += c * zpow;
    zpow /= z2;
  }
  return res - shift;
}

TruncationDiag truncation_diag(u64 x, u64 h, double b_cap, double t, const ZeroTable& zeros,
                               const SieveTable& table) {
  if (x < 2) throw DomainError("truncation_diag: requires X >= 2");
  if (!(t >= 0.0)) throw DomainError("truncation_diag: requires T >= 0");
  if (t > zeros.max_gamma()) {
    throw RangeError("truncation_diag: T exceeds zero table coverage (max gamma = " +
                     std::to_string(zeros.max_gamma()) + ")");
  }
  if (table.limit() < x + h) throw RangeError("truncation_diag: sieve limit below X + H");

  TruncationDiag d;
  d.x = static_cast<double>(x);
  d.h = static_cast<double>(h);
  d.t = t;
  d.b_cap = b_cap;

  const double log_x = std::log(d.x);
  const double log_q = std::log(d.x + d.h);
  const double lg_half = 0.5 * std::log(std::numbers::pi);  // log Gamma(1/2)

  KahanSum r1;  // conjugate pairs summed as 2 Re(...)
  KahanSum r2;
  std::size_t zero_count = 0;
  for (double g : zeros.gammas) {
    if (g > t) break;
    ++zero_count;
    const std::complex<double> rho(0.5, g);
    // Gamma(rho) Gamma(1/2) / Gamma(rho + 3/2) via log Gamma
    const std::complex<double> ratio =
        std::exp(log_gamma(rho) + lg_half - log_gamma(rho + 1.5));
    // (X+H)^{rho+1/2} - X^{rho+1/2}; rho + 1/2 = 1 + i gamma
    const std::complex<double> pow_q =
        (d.x + d.h) * std::exp(std::complex<double>(0.0, g * log_q));
    const std::complex<double> pow_x = d.x * std::exp(std::complex<double>(0.0, g * log_x));
    r1.add(2.0 * (ratio * (pow_q - pow_x)).real());

    const std::complex<double> sq =
        std::sqrt(d.x + d.h) * std::exp(std::complex<double>(0.0, g * log_q));
    const std::complex<double> sx = std::sqrt(d.x) * std::exp(std::complex<double>(0.0, g * log_x));
    r2.add(2.0 * ((sq - sx) / (2.0 * rho)).real());
  }
  d.r1 = std::abs(r1.value());
  d.r2 = std::abs(r2.value()) * b_cap;
  // beta = 1/2 makes each positive zero contribute H^{1/2} |gamma|^0.
  d.r3 = std::sqrt(d.h) * static_cast<double>(zero_count);

  d.psi_err_sample.reserve(16);
  for (int j = 0; j < 16; ++j) {
    const double xs = d.x + d.h * (static_cast<double>(j) / 15.0);
    d.psi_err_sample.emplace_back(xs, psi_truncated(xs, t, zeros) - table.psi(xs));
  }
  return d;
}

}  // namespace sflab
