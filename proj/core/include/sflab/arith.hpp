#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sflab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Exact floor roots. Floating-point seeds are corrected with integer
// comparisons, so results are exact for the full u64 range.
u64 isqrt(u64 n);
u64 icbrt(u64 n);
// Largest r with r^k <= n; k >= 1.
u64 ikth_root(u64 n, unsigned k);

// r^k, saturating at UINT64_MAX on overflow (safe for comparisons).
u64 ipow_sat(u64 r, unsigned k);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// Trial-division factorization, (prime, exponent) pairs in ascending order.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_squarefree(u64 n);

// Moebius function. n = 0 is a domain error.
int mobius(u64 n);

// von Mangoldt function: log p if n = p^k, else 0. n = 0 is a domain error.
double von_mangoldt(u64 n);

// flags[n] = 1 iff n is square-free, for 0 <= n <= limit (flags[0] = 0).
std::vector<std::uint8_t> squarefree_flags(u64 limit);

}  // namespace sflab
