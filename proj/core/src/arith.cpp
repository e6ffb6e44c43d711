#include "sflab/arith.hpp"

#include <cmath>
#include <limits>

#include "sflab/errors.hpp"

namespace sflab {

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

u64 ipow_sat(u64 r, unsigned k) {
  u64 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r != 0 && acc > std::numeric_limits<u64>::max() / r) {
      return std::numeric_limits<u64>::max();
    }
    acc *= r;
  }
  return acc;
}

u64 ikth_root(u64 n, unsigned k) {
  if (k == 0) throw DomainError("ikth_root: k must be >= 1");
  if (k == 1 || n <= 1) return n;
  if (k == 2) return isqrt(n);
  u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 1 && ipow_sat(r, k) > n) --r;
  while (ipow_sat(r + 1, k) <= n) ++r;
  return r;
}

u64 icbrt(u64 n) { return ikth_root(n, 3); }

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  std::vector<std::pair<u64, int>> out;
  for (u64 p : {2ull, 3ull}) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  // 5, 7, 11, 13, ... (6k +- 1 wheel)
  for (u64 p = 5; p <= n / p; p += (p % 6 == 5) ? 2 : 4) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n)) {
    (void)p;
    if (e >= 2) return false;
  }
  return true;
}

int mobius(u64 n) {
  if (n == 0) throw DomainError("mobius: n must be >= 1");
  int k = 0;
  for (const auto& [p, e] : factorize(n)) {
    (void)p;
    if (e >= 2) return 0;
    ++k;
  }
  return (k % 2 == 0) ? 1 : -1;
}

double von_mangoldt(u64 n) {
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  auto fac = factorize(n);
  if (fac.size() != 1) return 0.0;
  return std::log(static_cast<double>(fac.front().first));
}

std::vector<std::uint8_t> squarefree_flags(u64 limit) {
  std::vector<std::uint8_t> flags(limit + 1, 1);
  flags[0] = 0;
  for (u64 p = 2; p * p <= limit; ++p) {
    const u64 p2 = p * p;
    for (u64 m = p2; m <= limit; m += p2) flags[m] = 0;
  }
  return flags;
}

}  // namespace sflab
