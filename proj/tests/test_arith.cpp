#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sflab/arith.hpp"
#include "sflab/errors.hpp"
#include "support/oracles.hpp"

using namespace sflab;

TEST_CASE("integer roots are exact") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(3) == 1);
  CHECK(isqrt(4) == 2);
  CHECK(isqrt(u64(1) << 62) == (u64(1) << 31));
  CHECK(icbrt(26) == 2);
  CHECK(icbrt(27) == 3);
  CHECK(ikth_root(1024, 10) == 2);
  CHECK(ikth_root(1023, 10) == 1);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = rng() >> (rng() % 32);
    const u64 r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) > n / (r + 1));
    for (unsigned k = 3; k <= 6; ++k) {
      const u64 rk = ikth_root(n, k);
      CHECK(ipow_sat(rk, k) <= n);
      CHECK(ipow_sat(rk + 1, k) > n);
    }
  }
}

TEST_CASE("mobius agrees with brute force and sums to [n=1] over divisors") {
  CHECK_THROWS_AS(mobius(0), DomainError);
  CHECK(mobius(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(30) == -1);  // three distinct prime factors
  for (u64 n = 1; n <= 3000; ++n) CHECK(mobius(n) == oracle::mobius_brute(n));

  // sum_{d | n} mu(d) = [n = 1]
  for (u64 n = 1; n <= 500; ++n) {
    int s = 0;
    for (u64 d = 1; d <= n; ++d) {
      if (n % d == 0) s += mobius(d);
    }
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("von Mangoldt") {
  CHECK_THROWS_AS(von_mangoldt(0), DomainError);
  CHECK(von_mangoldt(1) == 0.0);
  CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(von_mangoldt(6) == 0.0);
  CHECK(von_mangoldt(7919) == doctest::Approx(std::log(7919.0)).epsilon(1e-15));
  CHECK(oracle::is_prime_trial(7919));
  for (u64 n = 1; n <= 2000; ++n) {
    const double v = von_mangoldt(n);
    if (v > 0.0) {
      // n must be a prime power
      auto fac = factorize(n);
      CHECK(fac.size() == 1);
    }
  }
}

TEST_CASE("deterministic primality matches trial division") {
  for (u64 n = 0; n <= 20000; ++n) CHECK(is_prime_u64(n) == oracle::is_prime_trial(n));
  CHECK(is_prime_u64(2147483647ull));          // 2^31 - 1
  CHECK_FALSE(is_prime_u64(3215031751ull));    // strong pseudoprime to 2,3,5,7
}

TEST_CASE("squarefree flags sieve matches the pointwise test") {
  const auto flags = squarefree_flags(5000);
  for (u64 n = 1; n <= 5000; ++n) {
    CHECK(static_cast<bool>(flags[n]) == (oracle::mobius_brute(n) != 0));
  }
}
