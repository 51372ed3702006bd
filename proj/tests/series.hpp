#ifndef HEATG_TESTS_SERIES_HPP
#define HEATG_TESTS_SERIES_HPP

// Truncated eigenfunction expansions of the heat kernels and their s-derivatives.

#include <cmath>
#include <vector>

#include "heatg/specfun.hpp"

namespace series {

/// sum_{n<=N} e^{-lambda_n t} u_n(x) u_n(y), or its t-derivative when `derivative`.
inline double heat_kernel(const heatg::BasisId& basis, int N, double x, double y, double t,
                          bool derivative = false) {
  std::vector<double> ux(N + 1), uy(N + 1);
  heatg::basis_functions(basis, N, x, ux);
  heatg::basis_functions(basis, N, y, uy);
  double sum = 0.0;
  for (int n = N; n >= 0; --n) {
    const double lam = basis.eigenvalue(n);
    const double term = std::exp(-lam * t) * ux[n] * uy[n];
    sum += derivative ? -lam * term : term;
  }
  return sum;
}

inline double hermite(int N, double x, double y, double t) {
  return heat_kernel(heatg::BasisId::hermite(), N, x, y, t);
}

inline double laguerre(int N, double x, double y, double t, double alpha) {
  return heat_kernel(heatg::BasisId::laguerre(alpha), N, x, y, t);
}

}  // namespace series

#endif  // HEATG_TESTS_SERIES_HPP
