#include "kac/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kac {

namespace {

constexpr double kE0Norm = 0.63161877774606470;  // (2*pi)^{-1/4}

// Orthonormal Hermite functions phi_n (weight e^{-x^2} basis of the
// physicists' convention), phi_0 = pi^{-1/4} exp(-x^2/2). Used only to
// locate Gauss-Hermite nodes; values stay O(1) for any n.
void phi_pair(int n, double x, double& phi_n, double& phi_nm1) {
  double p0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  if (n == 0) {
    phi_n = p0;
    phi_nm1 = 0.0;
    return;
  }
  double pm1 = 0.0, p = p0;
  for (int j = 0; j < n; ++j) {
    double pn = x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * pm1;
    pm1 = p;
    p = pn;
  }
  phi_n = p;
  phi_nm1 = pm1;
}

// Nodes and weights of N-point Gauss-Hermite for weight e^{-x^2}, the
// weights premultiplied by e^{x^2} (i.e. w_m = 2/(2N phi_{N-1}(x_m)^2)),
// which is the form needed for bases that carry their own Gaussian.
void gauss_hermite_bare(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    // initial guesses, largest root first (Stroud/NR style)
    if (i == 0)
      z = std::sqrt(double(2 * n + 1)) - 1.85575 * std::pow(double(2 * n + 1), -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(double(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[n - 1];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[n - 2];
    else
      z = 2.0 * z - x[n - i + 1];

    double pn = 0.0, pnm1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      phi_pair(n, z, pn, pnm1);
      double deriv = std::sqrt(2.0 * n) * pnm1 - z * pn;
      double dz = pn / deriv;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    phi_pair(n, z, pn, pnm1);
    x[n - 1 - i] = z;
    x[i] = -z;
    double wi = 1.0 / (n * pnm1 * pnm1);  // = e^{x^2} * (GH weight)
    w[n - 1 - i] = wi;
    w[i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

std::vector<double> hermite_e_all(int n_max, double v) {
  std::vector<double> e(n_max + 1);
  e[0] = kE0Norm * std::exp(-0.25 * v * v);
  if (n_max >= 1) e[1] = v * e[0];
  for (int n = 1; n < n_max; ++n)
    e[n + 1] = (v * e[n] - std::sqrt(double(n)) * e[n - 1]) / std::sqrt(double(n + 1));
  return e;
}

double hermite_e(int n, double v) { return hermite_e_all(n, v)[n]; }

HermiteGrid build_grid(int n_modes, int padding) {
  if (n_modes < 2) throw std::invalid_argument("build_grid: n_modes must be >= 2");
  if (padding < 0) throw std::invalid_argument("build_grid: negative padding");

  HermiteGrid g;
  g.n_modes = n_modes;
  g.n_quad = n_modes + padding;

  std::vector<double> x, w;
  gauss_hermite_bare(g.n_quad, x, w);

  // e_n carries exp(-v^2/4); substituting v = sqrt(2) x turns the L^2 inner
  // product into the bare-weight Gauss-Hermite sum, so nodes scale by
  // sqrt(2) and weights by sqrt(2) e^{x^2}.
  g.nodes.resize(g.n_quad);
  g.weights.resize(g.n_quad);
  for (int m = 0; m < g.n_quad; ++m) {
    g.nodes[m] = std::numbers::sqrt2 * x[m];
    g.weights[m] = std::numbers::sqrt2 * w[m];
  }

  g.basis.resize(static_cast<size_t>(g.n_quad) * g.n_quad);
  for (int m = 0; m < g.n_quad; ++m) {
    auto col = hermite_e_all(g.n_quad - 1, g.nodes[m]);
    for (int n = 0; n < g.n_quad; ++n) g.basis[static_cast<size_t>(n) * g.n_quad + m] = col[n];
  }

  double res = 0.0;
  for (int n = 0; n < n_modes; ++n)
    for (int k = n; k < n_modes; ++k) {
      double acc = 0.0;
      for (int m = 0; m < g.n_quad; ++m) acc += g.weights[m] * g.e(n, m) * g.e(k, m);
      res = std::max(res, std::abs(acc - (n == k ? 1.0 : 0.0)));
    }
  g.ortho_residual = res;
  if (res > 1e-8)
    throw numerical_error("build_grid: discrete orthonormality residual " + std::to_string(res));
  return g;
}

BandedResult apply_ladder(std::span<const cplx> coeffs, Ladder which) {
  const int n = static_cast<int>(coeffs.size());
  BandedResult r;
  r.coeffs.assign(n, cplx{0.0, 0.0});
  if (which == Ladder::plus) {
    for (int k = 0; k + 1 < n; ++k) r.coeffs[k + 1] = std::sqrt(double(k + 1)) * coeffs[k];
    if (n > 0) r.truncated_norm2 = double(n) * std::norm(coeffs[n - 1]);
  } else {
    for (int k = 1; k < n; ++k) r.coeffs[k - 1] = std::sqrt(double(k)) * coeffs[k];
  }
  return r;
}

BandedResult apply_v_multiplication(std::span<const cplx> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  BandedResult r;
  r.coeffs.assign(n, cplx{0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    if (k + 1 < n) r.coeffs[k + 1] += std::sqrt(double(k + 1)) * coeffs[k];
    if (k >= 1) r.coeffs[k - 1] += std::sqrt(double(k)) * coeffs[k];
  }
  if (n > 0) r.truncated_norm2 = double(n) * std::norm(coeffs[n - 1]);
  return r;
}

BandedResult apply_dv(std::span<const cplx> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  BandedResult r;
  r.coeffs.assign(n, cplx{0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    if (k >= 1) r.coeffs[k - 1] += 0.5 * std::sqrt(double(k)) * coeffs[k];
    if (k + 1 < n) r.coeffs[k + 1] -= 0.5 * std::sqrt(double(k + 1)) * coeffs[k];
  }
  if (n > 0) r.truncated_norm2 = 0.25 * double(n) * std::norm(coeffs[n - 1]);
  return r;
}

std::vector<cplx> apply_h_power(std::span<const cplx> coeffs, double r) {
  std::vector<cplx> out(coeffs.begin(), coeffs.end());
  for (size_t n = 0; n < out.size(); ++n) out[n] *= std::pow(double(n) + 0.5, r);
  return out;
}

std::vector<cplx> hermite_forward(const HermiteGrid& grid, std::span<const cplx> values,
                                  int n_out) {
  if (static_cast<int>(values.size()) != grid.n_quad)
    throw std::invalid_argument("hermite_forward: length mismatch");
  if (n_out < 0) n_out = grid.n_modes;
  std::vector<cplx> c(n_out, cplx{0.0, 0.0});
  for (int n = 0; n < n_out; ++n) {
    cplx acc{0.0, 0.0};
    for (int m = 0; m < grid.n_quad; ++m) acc += grid.weights[m] * grid.e(n, m) * values[m];
    c[n] = acc;
  }
  return c;
}

std::vector<cplx> hermite_inverse(const HermiteGrid& grid, std::span<const cplx> coeffs) {
  if (static_cast<int>(coeffs.size()) > grid.n_quad)
    throw std::invalid_argument("hermite_inverse: too many coefficients");
  std::vector<cplx> v(grid.n_quad, cplx{0.0, 0.0});
  for (int n = 0; n < static_cast<int>(coeffs.size()); ++n)
    for (int m = 0; m < grid.n_quad; ++m) v[m] += coeffs[n] * grid.e(n, m);
  return v;
}

double moment_norm_e_n(int n, int k, int l) {
  if (n < 0 || k < 0 || l < 0) throw std::invalid_argument("moment_norm_e_n: negative index");
  const int size = n + k + l + 1;
  std::vector<cplx> u(size, cplx{0.0, 0.0});
  u[n] = 1.0;
  for (int i = 0; i < l; ++i) {
    auto r = apply_dv(u);
    if (r.truncated_norm2 > 0.0) throw numerical_error("moment_norm_e_n: padding overflow");
    u = std::move(r.coeffs);
  }
  for (int i = 0; i < k; ++i) {
    auto r = apply_v_multiplication(u);
    if (r.truncated_norm2 > 0.0) throw numerical_error("moment_norm_e_n: padding overflow");
    u = std::move(r.coeffs);
  }
  double s = 0.0;
  for (const auto& c : u) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace kac
