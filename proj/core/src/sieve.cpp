#include "sflab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "sflab/errors.hpp"
#include "sflab/kahan.hpp"

namespace sflab {

namespace {

constexpr char kCacheMagic[4] = {'S', 'F', 'L', '1'};

void put_u64_le(std::string& out, u64 v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

u64 get_u64_le(const unsigned char* p) {
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

// Odd-only segmented sieve. Base primes up to sqrt(limit) come from a plain
// Eratosthenes pass.
std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);

  const u64 root = isqrt(limit);
  std::vector<std::uint8_t> small(root + 1, 1);
  for (u64 i = 2; i * i <= root; ++i) {
    if (small[i]) {
      for (u64 j = i * i; j <= root; j += i) small[j] = 0;
    }
  }
  std::vector<u64> base;
  for (u64 i = 3; i <= root; i += 2) {
    if (small[i]) base.push_back(i);
  }

  // Rough pi(x) overestimate to avoid re-allocation.
  if (limit >= 17) {
    const double x = static_cast<double>(limit);
    primes.reserve(static_cast<std::size_t>(x / (std::log(x) - 1.2)) + 16);
  }

  std::vector<std::uint8_t> seg(kSieveSegmentSize);
  for (u64 low = 3; low <= limit; low += kSieveSegmentSize) {
    const u64 high = std::min(low + kSieveSegmentSize - 1, limit);
    std::fill(seg.begin(), seg.begin() + static_cast<std::size_t>(high - low + 1), 1);
    for (u64 p : base) {
      if (p * p > high) break;
      u64 start = std::max(p * p, ((low + p - 1) / p) * p);
      if (start % 2 == 0) start += p;  // only odd multiples matter
      for (u64 m = start; m <= high; m += 2 * p) seg[static_cast<std::size_t>(m - low)] = 0;
    }
    u64 n = low + ((low % 2 == 0) ? 1 : 0);
    for (; n <= high; n += 2) {
      if (seg[static_cast<std::size_t>(n - low)]) primes.push_back(n);
    }
  }
  return primes;
}

}  // namespace

std::filesystem::path SieveTable::cache_file(const std::filesystem::path& dir, u64 limit) {
  return dir / ("primes-" + std::to_string(limit) + ".sfl1");
}

void SieveTable::finalize_prefix() {
  log_prefix_.clear();
  log_prefix_.reserve(primes_.size() + 1);
  KahanSum acc;
  log_prefix_.push_back(0.0);
  for (u64 p : primes_) {
    acc.add(std::log(static_cast<double>(p)));
    log_prefix_.push_back(acc.value());
  }
}

SieveTable SieveTable::build(u64 limit, const std::optional<std::filesystem::path>& cache_dir) {
  if (limit < 2) throw DomainError("build_sieve: limit must be >= 2");
  if (limit > (u64{1} << 50)) throw DomainError("build_sieve: limit above the 2^50 memory bound");

  SieveTable t;
  t.limit_ = limit;

  if (cache_dir) {
    const auto path = cache_file(*cache_dir, limit);
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (blob.size() >= 12 && std::memcmp(blob.data(), kCacheMagic, 4) == 0 &&
          (blob.size() - 12) % 8 == 0) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(blob.data());
        if (get_u64_le(bytes + 4) == limit) {
          const std::size_t n = (blob.size() - 12) / 8;
          t.primes_.resize(n);
          for (std::size_t i = 0; i < n; ++i) t.primes_[i] = get_u64_le(bytes + 12 + 8 * i);
          t.loaded_from_cache_ = true;
        }
      }
    }
  }

  if (!t.loaded_from_cache_) {
    t.primes_ = sieve_primes(limit);
    if (cache_dir) {
      std::string blob;
      blob.reserve(12 + 8 * t.primes_.size());
      blob.append(kCacheMagic, 4);
      put_u64_le(blob, limit);
      for (u64 p : t.primes_) put_u64_le(blob, p);
      std::error_code ec;
      std::filesystem::create_directories(*cache_dir, ec);
      const auto path = cache_file(*cache_dir, limit);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
      if (!out) {
        t.cache_warning_ = "sieve cache write failed: " + path.string();
      }
    }
  }

  t.finalize_prefix();
  return t;
}

std::size_t SieveTable::count_leq(double x) const {
  if (x < 2.0) return 0;
  // primes_ is ascending; count p <= x.
  const u64 bound = (x >= static_cast<double>(limit_)) ? limit_ : static_cast<u64>(std::floor(x));
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), bound) - primes_.begin());
}

bool SieveTable::is_prime(u64 n) const {
  if (n > limit_) throw RangeError("is_prime: n exceeds sieve limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

double SieveTable::theta(double x) const {
  if (x > static_cast<double>(limit_)) {
    throw RangeError("theta: x exceeds sieve limit " + std::to_string(limit_));
  }
  return log_prefix_[count_leq(x)];
}

double SieveTable::window_theta(double a, double b) const {
  if (a > b) throw DomainError("window_theta: requires a <= b");
  if (b > static_cast<double>(limit_)) {
    throw RangeError("window_theta: b exceeds sieve limit " + std::to_string(limit_));
  }
  return log_prefix_[count_leq(b)] - log_prefix_[count_leq(a)];
}

double SieveTable::window_theta_direct(double a, double b) const {
  if (a > b) throw DomainError("window_theta: requires a <= b");
  if (b > static_cast<double>(limit_)) {
    throw RangeError("window_theta: b exceeds sieve limit " + std::to_string(limit_));
  }
  const std::size_t lo = count_leq(a);
  const std::size_t hi = count_leq(b);
  KahanSum acc;
  for (std::size_t i = lo; i < hi; ++i) acc.add(std::log(static_cast<double>(primes_[i])));
  return acc.value();
}

double SieveTable::psi(double x) const {
  if (x > static_cast<double>(limit_)) {
    throw RangeError("psi: x exceeds sieve limit " + std::to_string(limit_));
  }
  if (x < 2.0) return 0.0;
  // theta(x^{1/k}) = theta(r) with r the largest integer satisfying r^k <= x;
  // p^k is an integer, so p^k <= x iff p^k <= floor(x).
  const u64 xi = static_cast<u64>(std::floor(x));
  KahanSum acc;
  for (unsigned k = 1;; ++k) {
    const u64 r = ikth_root(xi, k);
    if (r < 2) break;
    acc.add(theta(static_cast<double>(r)));
  }
  return acc.value();
}

double SieveTable::window_psi(double a, double b) const {
  if (a > b) throw DomainError("window_psi: requires a <= b");
  if (b > static_cast<double>(limit_)) {
    throw RangeError("window_psi: b exceeds sieve limit " + std::to_string(limit_));
  }
  if (b < 2.0) return 0.0;
  const u64 bi = static_cast<u64>(std::floor(b));
  const u64 ai = (a < 0.0) ? 0 : static_cast<u64>(std::floor(std::max(a, 0.0)));
  KahanSum acc;
  for (unsigned k = 1;; ++k) {
    const u64 rb = ikth_root(bi, k);
    if (rb < 2) break;
    const u64 ra = ikth_root(ai, k);
    acc.add(log_prefix_[count_leq(static_cast<double>(rb))] -
            log_prefix_[count_leq(static_cast<double>(ra))]);
  }
  return acc.value();
}

double SieveTable::window_psi_direct(double a, double b) const {
  if (a > b) throw DomainError("window_psi: requires a <= b");
  if (b > static_cast<double>(limit_)) {
    throw RangeError("window_psi: b exceeds sieve limit " + std::to_string(limit_));
  }
  if (b < 2.0) return 0.0;
  const u64 bi = static_cast<u64>(std::floor(b));
  const u64 ai = (a < 0.0) ? 0 : static_cast<u64>(std::floor(std::max(a, 0.0)));
  KahanSum acc;
  for (unsigned k = 1;; ++k) {
    const u64 rb = ikth_root(bi, k);
    if (rb < 2) break;
    const u64 ra = ikth_root(ai, k);
    const std::size_t lo = count_leq(static_cast<double>(ra));
    const std::size_t hi = count_leq(static_cast<double>(rb));
    for (std::size_t i = lo; i < hi; ++i) acc.add(std::log(static_cast<double>(primes_[i])));
  }
  return acc.value();
}

}  // namespace sflab
