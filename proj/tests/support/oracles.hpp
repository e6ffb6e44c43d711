#pragma once

// Independent oracles for the test suites. Everything here recomputes the
// quantity under test by a different route than the library (trial division,
// brute-force exponent checks, long-double series), so agreement is evidence
// rather than tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// Plain trial-division prime enumeration (no sieve shared with the library).
inline std::vector<u64> trial_division_primes(u64 limit) {
  std::vector<u64> primes;
  for (u64 n = 2; n <= limit; ++n) {
    bool prime = true;
    for (u64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  return primes;
}

inline bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Brute-force exponent check: n is square-full iff every prime factor
// divides it at least twice.
inline bool is_squarefull_brute(u64 n) {
  if (n == 0) return false;
  if (n == 1) return true;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e < 2) return false;
    }
  }
  return n == 1;  // a leftover prime would have exponent 1
}

inline int mobius_brute(u64 n) {
  int k = 0;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++k;
    }
  }
  if (n > 1) ++k;
  return (k % 2 == 0) ? 1 : -1;
}

// theta(x) by direct summation over trial-division primes.
inline double theta_direct(double x, const std::vector<u64>& primes) {
  long double s = 0.0L;
  for (u64 p : primes) {
    if (static_cast<double>(p) > x) break;
    s += std::log(static_cast<long double>(p));
  }
  return static_cast<double>(s);
}

// psi(x) by direct Lambda summation (prime-power detection by brute force).
inline double psi_direct(double x) {
  long double s = 0.0L;
  const u64 xi = static_cast<u64>(std::floor(x));
  for (u64 n = 2; n <= xi; ++n) {
    u64 m = n;
    u64 p = 0;
    for (u64 d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        p = d;
        while (m % d == 0) m /= d;
        break;
      }
    }
    if (p == 0) {
      s += std::log(static_cast<long double>(n));  // n prime
    } else if (m == 1) {
      s += std::log(static_cast<long double>(p));  // n = p^k
    }
  }
  return static_cast<double>(s);
}

// Riemann zeta in long double by Euler-Maclaurin with a higher truncation
// point and more Bernoulli terms than the shipped evaluator.
inline long double zeta_highprec(long double s) {
  constexpr int N = 200;
  constexpr long double bern[8] = {1.0L / 6.0L,     -1.0L / 30.0L,   1.0L / 42.0L,
                                   -1.0L / 30.0L,   5.0L / 66.0L,    -691.0L / 2730.0L,
                                   7.0L / 6.0L,     -3617.0L / 510.0L};
  long double head = 0.0L;
  for (int n = N; n >= 1; --n) head += std::pow(static_cast<long double>(n), -s);
  long double v = head + std::pow(static_cast<long double>(N), 1.0L - s) / (s - 1.0L) -
                  0.5L * std::pow(static_cast<long double>(N), -s);
  long double coeff = s * std::pow(static_cast<long double>(N), -s - 1.0L);
  long double fact = 2.0L;
  for (int k = 1; k <= 8; ++k) {
    v += bern[k - 1] / fact * coeff;
    coeff *= (s + 2.0L * k - 1.0L) * (s + 2.0L * k) / (static_cast<long double>(N) * N);
    fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
  }
  return v;
}

// Term-by-term S_alpha(Q) in long double complex arithmetic over an
// explicitly enumerated f list.
inline std::complex<long double> s_alpha_direct(long double q,
                                                const std::vector<u64>& fs,
                                                std::complex<long double> alpha) {
  std::complex<long double> acc(0.0L, 0.0L);
  for (u64 f : fs) {
    const long double d = q - static_cast<long double>(f);
    if (d <= 0.0L) continue;
    acc += std::exp(alpha * std::log(d));
  }
  return acc / alpha;
}

}  // namespace oracle
