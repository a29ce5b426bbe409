#pragma once

#include <span>
#include <vector>

#include "kac/util.hpp"

namespace kac {

/// Scaled Hermite basis e_n of L^2(R): eigenfunctions of the harmonic
/// oscillator H = -d^2/dv^2 + v^2/4, He_n = (n+1/2)e_n, with
/// e_0(v) = (2*pi)^{-1/4} exp(-v^2/4) and the ladder identities
///   A+ e_n = sqrt(n+1) e_{n+1},   A- e_n = sqrt(n) e_{n-1},
///   v e_n  = sqrt(n+1) e_{n+1} + sqrt(n) e_{n-1},
///   d/dv   = (A- - A+)/2.

/// Evaluate e_0..e_{n_max} at v by the three-term recurrence on the
/// Gaussian-carrying functions themselves (uniformly bounded, no overflow).
std::vector<double> hermite_e_all(int n_max, double v);
double hermite_e(int n, double v);

/// Gauss-Hermite quadrature adapted to the scaled basis: nodes v_m and
/// weights w_m such that sum_m w_m e_n(v_m) e_m(v_m) = delta_{nm} exactly up
/// to polynomial degree 2*n_quad - 1.
struct HermiteGrid {
  int n_modes = 0;              // N_v, number of retained modes
  int n_quad = 0;               // quadrature size (N_v + padding)
  std::vector<double> nodes;    // v_m, symmetric about 0
  std::vector<double> weights;  // positive
  std::vector<double> basis;    // E[n*n_quad + m] = e_n(v_m), n < n_quad
  double ortho_residual = 0.0;  // achieved max |sum w E E' - delta|

  double e(int n, int m) const { return basis[static_cast<size_t>(n) * n_quad + m]; }
};

/// Builds the grid; throws std::invalid_argument for n_modes < 2 and
/// numerical_error if the discrete orthonormality residual exceeds 1e-8.
HermiteGrid build_grid(int n_modes, int padding = 8);

enum class Ladder { plus, minus };

struct BandedResult {
  std::vector<cplx> coeffs;
  double truncated_norm2 = 0.0;  // |outflow|^2 dropped past the top mode
};

/// A+/A- on coefficient vectors; ladder-plus drops the top-mode outflow and
/// records it.
BandedResult apply_ladder(std::span<const cplx> coeffs, Ladder which);

/// Multiplication by v (= ladder plus + ladder minus).
BandedResult apply_v_multiplication(std::span<const cplx> coeffs);

/// d/dv = (A- - A+)/2.
BandedResult apply_dv(std::span<const cplx> coeffs);

/// H^r: coefficient n scaled by (n+1/2)^r.
std::vector<cplx> apply_h_power(std::span<const cplx> coeffs, double r);

/// Quadrature transforms between node values and coefficients.
/// forward: c_n = sum_m w_m E[n][m] f(v_m), n < n_out (default grid.n_modes).
std::vector<cplx> hermite_forward(const HermiteGrid& grid, std::span<const cplx> values,
                                  int n_out = -1);
std::vector<cplx> hermite_inverse(const HermiteGrid& grid, std::span<const cplx> coeffs);

/// ||v^k d_v^l e_n||_{L^2}, computed by banded operator composition on a
/// grid padded by k+l modes. Satisfies the bound 2^k sqrt((k+l+n)!/n!).
double moment_norm_e_n(int n, int k, int l);

}  // namespace kac
