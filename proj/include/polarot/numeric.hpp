#pragma once

#include <cstddef>
#include <vector>

namespace ot {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Hermite rule in the physicists' convention:
//   integral e^{-x^2} f(x) dx  ~=  sum w_i f(x_i).
Quadrature gauss_hermite(std::size_t n);

// Standard normal quantile, |error| < 1e-13 over (0,1).
double norm_quantile(double p);

// Regularized incomplete beta I_x(a,b) by continued fraction.
double betainc_reg(double a, double b, double x);

// ln(1 + e^t), stable for large |t|.
double log1pexp(double t);

}  // namespace ot
