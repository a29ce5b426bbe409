#pragma once

#include <span>
#include <vector>

#include "kac/kernel.hpp"
#include "kac/util.hpp"

namespace kac {

struct UniformGrid1d {
  double min = 0.0;
  double step = 0.0;
  int n = 0;
  double at(int i) const { return min + step * i; }
};

struct BobylevOptions {
  double u_split = 0.02;   // below this u the bracket is summed as a moment series
  int moment_terms = 24;   // even-moment series length for the sin-slot factor
  int deriv_terms = 8;     // Taylor order for the cos-slot shift
  double quad_step = 1.0 / 32.0;  // tanh-sinh step h
  double quad_range = 3.8;        // tanh-sinh |t| range
  double quad_tol = 1e-9;         // convergence requirement (h vs 2h), relative
  double resolution_tol = 1e-8;   // required decay of samples at grid edges
};

/// Fourier transform of the collision bilinear form K(g, f),
///   F K(g,f)(xi) = int beta(theta) [ geven^(xi sin theta) f^(xi cos theta)
///                                    - g^(0) f^(xi) ] dtheta,
/// evaluated by the same substituted u = sin(theta/2) quadrature as the
/// eigenvalue integrals. Inputs and output are Fourier samples on xi_grid
/// (convention f^(xi) = int e^{-iv xi} f(v) dv); arbitrary frequencies are
/// taken from the exact trigonometric interpolant of the conjugate
/// v-samples, and the grazing-angle cancellation is summed in stable form.
/// Throws numerical_error when the samples do not resolve the functions
/// (insufficient decay at either grid edge) or the quadrature fails to
/// converge.
std::vector<cplx> bobylev_apply(const UniformGrid1d& xi_grid, std::span<const cplx> g_hat,
                                std::span<const cplx> f_hat, const CrossSectionParams& cs,
                                const BobylevOptions& opts = {});

/// Independent oracle for Gamma(e_k, e_l) = alpha_{k,l} e_{k+l}: evaluates
/// mu^{-1/2} K(mu^{1/2} e_k, mu^{1/2} e_l) through the Bobylev formula and
/// projects onto e_{k+l}. Never touches the Hermite-side alpha integrals.
double gamma_coefficient_oracle(int k, int l, const CrossSectionParams& cs,
                                const BobylevOptions& opts = {});

}  // namespace kac
