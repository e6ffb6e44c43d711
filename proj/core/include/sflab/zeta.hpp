#pragma once

namespace sflab {

struct ZetaValue {
  double s;
  double value;
  double abs_error_bound;
};

// Riemann zeta for real s >= 1.1 (desk range) by Euler-Maclaurin:
// truncation point N = 50 with Bernoulli corrections through B_10, which
// drives the remainder below 1e-13 over the whole accepted range.
// s < 1.1 is a domain error (the pole sits at s = 1).
ZetaValue zeta(double s);

// zeta(3/2)/zeta(3), the density constant of square-full numbers.
double singular_constant();

// sum_{n <= x} mu(n)^2 n^{-s}, exact square-free test via a sieve up to x.
double mobius_dirichlet_partial(double x, double s);

}  // namespace sflab
