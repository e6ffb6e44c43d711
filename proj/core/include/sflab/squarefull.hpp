#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "sflab/arith.hpp"

namespace sflab {

// A square-full number n = a^2 b^3 with b square-free. For every n that is
// square-full this pair is unique (b is the product of the primes of odd
// exponent in n). 1 is square-full (a = b = 1, the divisibility condition
// is vacuous).
struct SquarefullItem {
  u64 n;
  u64 a;
  u64 b;

  friend bool operator==(const SquarefullItem&, const SquarefullItem&) = default;
};

// Ascending enumeration of square-full numbers up to a limit, optionally
// restricted to b <= b_cap. Immutable after construction.
class SquarefullSet {
 public:
  // Exactly { a^2 b^3 <= limit : b square-free, b <= b_cap if set }.
  // include_one = false drops n = 1 (sensitivity checks only).
  static SquarefullSet enumerate(u64 limit, std::optional<double> b_cap = std::nullopt,
                                 bool include_one = true);

  u64 limit() const { return limit_; }
  const std::optional<double>& b_cap() const { return b_cap_; }
  std::span<const SquarefullItem> items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  // Members <= x.
  std::size_t count_leq(u64 x) const;

 private:
  u64 limit_ = 0;
  std::optional<double> b_cap_;
  std::vector<SquarefullItem> items_;
};

// The unique (a, b) decomposition if n is square-full, nullopt otherwise.
// n = 0 is a domain error.
std::optional<SquarefullItem> decompose(u64 n);

// Exact count of square-full members (with optional b-cap) in (x, x + h].
u64 count_in_interval(double x, double h, std::optional<double> b_cap = std::nullopt);

// S(Q) = sum_{f <= x_cutoff} (Q - f) over the b-capped square-full f.
// For integral Q the sum is accumulated in 128-bit integers and converted
// once at the end. Q below the largest used f is a domain error.
double s_weighted(double q, double x_cutoff, double b_cap);

// S_alpha(Q) = (1/alpha) sum_{f <= x_cutoff} (Q - f)^alpha, terms with
// Q - f = 0 contributing 0. alpha = 0 is a domain error. alpha = 1 routes
// through s_weighted so S(Q) = S_1(Q) holds exactly.
std::complex<double> s_complex(double q, double x_cutoff, double b_cap,
                               std::complex<double> alpha);

}  // namespace sflab
