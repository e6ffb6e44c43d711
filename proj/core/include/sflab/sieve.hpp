#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sflab/arith.hpp"

namespace sflab {

// Integers per segment of the segmented sieve. 2^20 keeps the working set
// inside L2 and memory flat regardless of the limit.
inline constexpr u64 kSieveSegmentSize = u64{1} << 20;

// Primes up to `limit` plus prefix sums of log p.
//
// log_prefix[i] = sum_{j < i} log(primes[j]); log_prefix[0] = 0 and the
// last entry equals theta(limit). Prefix sums are accumulated with
// compensated summation so window queries hold ~12 significant digits
// even over 10^7 primes.
//
// A completed table is immutable; all queries are const and reentrant.
class SieveTable {
 public:
  // Builds the table, optionally loading from / writing to a cache
  // directory. Cache write failures are non-fatal (a warning is recorded
  // in cache_warning()). Accepts 2 <= limit <= 2^50 (memory bound),
  // domain error outside.
  static SieveTable build(u64 limit,
                          const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

  u64 limit() const { return limit_; }
  std::span<const u64> primes() const { return primes_; }
  std::span<const double> log_prefix() const { return log_prefix_; }
  bool loaded_from_cache() const { return loaded_from_cache_; }
  const std::string& cache_warning() const { return cache_warning_; }

  // Number of primes <= x.
  std::size_t count_leq(double x) const;

  bool is_prime(u64 n) const;  // binary search; requires n <= limit

  // theta(x) = sum_{p <= x} log p. Requires x <= limit (range error above).
  double theta(double x) const;

  // psi(x) = sum_{m <= x} Lambda(m) = sum_{k >= 1} theta(x^{1/k}).
  double psi(double x) const;

  // theta(b) - theta(a) via two prefix lookups. Requires a <= b <= limit.
  double window_theta(double a, double b) const;

  // Same window, but summing log p term by term (no prefix reuse). This is
  // the independent route used by the pair-enumeration window method.
  double window_theta_direct(double a, double b) const;

  // psi(b) - psi(a) via per-k prefix windows.
  double window_psi(double a, double b) const;
  double window_psi_direct(double a, double b) const;

  // Cache file layout: "SFL1" magic, u64 limit, then the raw prime list,
  // every integer little-endian. Bit-exact across runs.
  static std::filesystem::path cache_file(const std::filesystem::path& dir, u64 limit);

 private:
  SieveTable() = default;
  void finalize_prefix();

  u64 limit_ = 0;
  std::vector<u64> primes_;
  std::vector<double> log_prefix_;
  bool loaded_from_cache_ = false;
  std::string cache_warning_;
};

}  // namespace sflab
