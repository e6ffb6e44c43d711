#pragma once

#include <cmath>
#include <complex>

namespace sflab {

// Neumaier-compensated accumulator. The compensation term also catches the
// case where an addend exceeds the running sum, which plain Kahan loses.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  KahanSum& operator+=(double v) {
    add(v);
    return *this;
  }

  double value() const { return sum + comp; }
};

// Componentwise compensated accumulation for oscillatory zero sums.
struct KahanComplexSum {
  KahanSum re;
  KahanSum im;

  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }

  KahanComplexSum& operator+=(std::complex<double> v) {
    add(v);
    return *this;
  }

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace sflab
