#include "sflab/squarefull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sflab/errors.hpp"
#include "sflab/kahan.hpp"

namespace sflab {

namespace {

// a, b in 64 bits with limit <= 2^62 keeps a^2 b^3 free of overflow.
constexpr u64 kLimitCap = u64{1} << 62;

// Largest admissible b given a real-valued cap and the limit.
u64 effective_b_cap(u64 limit, const std::optional<double>& b_cap) {
  u64 bmax = icbrt(limit);
  if (b_cap) {
    if (*b_cap < 1.0) return 0;
    const double f = std::floor(*b_cap);
    if (f < static_cast<double>(bmax)) bmax = static_cast<u64>(f);
  }
  return bmax;
}

}  // namespace

SquarefullSet SquarefullSet::enumerate(u64 limit, std::optional<double> b_cap, bool include_one) {
  if (limit == 0) throw DomainError("squarefull enumerate: limit must be >= 1");
  if (limit > kLimitCap) throw DomainError("squarefull enumerate: limit exceeds 2^62");

  SquarefullSet set;
  set.limit_ = limit;
  set.b_cap_ = b_cap;

  const u64 bmax = effective_b_cap(limit, b_cap);
  for (u64 b = 1; b <= bmax; ++b) {
    if (!is_squarefree(b)) continue;
    const u64 b3 = b * b * b;
    const u64 amax = isqrt(limit / b3);
    for (u64 a = 1; a <= amax; ++a) {
      set.items_.push_back({a * a * b3, a, b});
    }
  }
  std::sort(set.items_.begin(), set.items_.end(),
            [](const SquarefullItem& l, const SquarefullItem& r) { return l.n < r.n; });
  if (!include_one && !set.items_.empty() && set.items_.front().n == 1) {
    set.items_.erase(set.items_.begin());
  }
  return set;
}

std::size_t SquarefullSet::count_leq(u64 x) const {
  return static_cast<std::size_t>(
      std::upper_bound(items_.begin(), items_.end(), x,
                       [](u64 v, const SquarefullItem& it) { return v < it.n; }) -
      items_.begin());
}

std::optional<SquarefullItem> decompose(u64 n) {
  if (n == 0) throw DomainError("decompose: n must be >= 1");
  u64 a = 1, b = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e < 2) return std::nullopt;
    if (e % 2 == 1) {
      b *= p;                                    // odd exponent: p goes into b^3
      for (int i = 0; i < (e - 3) / 2; ++i) a *= p;
    } else {
      for (int i = 0; i < e / 2; ++i) a *= p;
    }
  }
  return SquarefullItem{n, a, b};
}

namespace {

// Count a with n_lo <= a^2 b^3 <= n_hi, exact in integers.
u64 count_a_between(u64 b3, u64 n_lo, u64 n_hi) {
  const u64 hi = isqrt(n_hi / b3);
  if (n_lo <= b3) return hi;  // a >= 1 always reaches n_lo
  // smallest a with a^2 >= ceil(n_lo / b3)
  const u64 q = (n_lo + b3 - 1) / b3;
  u64 lo = isqrt(q);
  if (lo * lo < q) ++lo;
  return (hi >= lo) ? hi - lo + 1 : 0;
}

}  // namespace

u64 count_in_interval(double x, double h, std::optional<double> b_cap) {
  if (h < 0.0) throw DomainError("count_in_interval: h must be >= 0");
  if (x < 0.0) x = 0.0;
  // Integer window: n > x and n <= x + h.
  const double upper = x + h;
  if (upper < 1.0) return 0;
  const u64 n_hi = static_cast<u64>(std::floor(upper));
  const u64 n_lo = static_cast<u64>(std::floor(x)) + 1;
  if (n_hi < n_lo) return 0;
  if (n_hi > kLimitCap) throw DomainError("count_in_interval: window exceeds 2^62");

  const u64 bmax = effective_b_cap(n_hi, b_cap);
  u64 count = 0;
  for (u64 b = 1; b <= bmax; ++b) {
    if (!is_squarefree(b)) continue;
    count += count_a_between(b * b * b, n_lo, n_hi);
  }
  return count;
}

double s_weighted(double q, double x_cutoff, double b_cap) {
  if (!(q >= x_cutoff) || !(x_cutoff >= 1.0)) {
    throw DomainError("s_weighted: requires Q >= X_cutoff >= 1");
  }
  const u64 cutoff = static_cast<u64>(std::floor(x_cutoff));
  const auto set = SquarefullSet::enumerate(cutoff, b_cap);

  const bool integral_q = (q == std::floor(q)) && q <= static_cast<double>(kLimitCap);
  if (integral_q) {
    const u64 qi = static_cast<u64>(q);
    u128 acc = 0;
    for (const auto& it : set.items()) acc += static_cast<u128>(qi - it.n);
    return static_cast<double>(acc);
  }
  // Non-integral Q: count * Q - sum f, each part exact.
  u128 fsum = 0;
  for (const auto& it : set.items()) fsum += it.n;
  return static_cast<double>(set.size()) * q - static_cast<double>(fsum);
}

std::complex<double> s_complex(double q, double x_cutoff, double b_cap,
                               std::complex<double> alpha) {
  if (alpha == std::complex<double>(0.0, 0.0)) {
    throw DomainError("s_complex: alpha must be nonzero");
  }
  if (alpha == std::complex<double>(1.0, 0.0)) {
    return {s_weighted(q, x_cutoff, b_cap), 0.0};
  }
  if (!(q >= x_cutoff) || !(x_cutoff >= 1.0)) {
    throw DomainError("s_complex: requires Q >= X_cutoff >= 1");
  }
  const u64 cutoff = static_cast<u64>(std::floor(x_cutoff));
  const auto set = SquarefullSet::enumerate(cutoff, b_cap);

  if (alpha.imag() == 0.0) {
    const double ar = alpha.real();
    KahanSum acc;
    for (const auto& it : set.items()) {
      const double d = q - static_cast<double>(it.n);
      if (d < 0.0) throw DomainError("s_complex: Q below largest used f");
      if (d == 0.0) continue;
      acc.add(std::pow(d, ar));
    }
    return std::complex<double>(acc.value(), 0.0) / ar;
  }

  KahanComplexSum acc;
  for (const auto& it : set.items()) {
    const double d = q - static_cast<double>(it.n);
    if (d < 0.0) throw DomainError("s_complex: Q below largest used f");
    if (d == 0.0) continue;  // (Q - f)^alpha -> 0 along Re(alpha) > 0
    acc.add(std::exp(alpha * std::log(d)));
  }
  return acc.value() / alpha;
}

}  // namespace sflab
