#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kac/util.hpp"

namespace kac {

/// Non-cutoff cross section beta(theta) = |cos(theta/2)| / |sin(theta/2)|^{1+2s}
/// on |theta| <= pi/4, singularity exponent s in (0,1).
struct CrossSectionParams {
  double s = 0.5;
  static constexpr double theta_max = 0.78539816339744831;  // pi/4, fixed

  void validate() const {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("cross section: s must be in (0,1)");
  }
};

double beta(double theta, const CrossSectionParams& cs);

struct QuadReport {
  double value = 0.0;
  double abs_error = 0.0;  // quadrature error estimate
  double rel_error = 0.0;
};

/// Angular integral of beta(theta) * F against the even part of F,
///   I = int_{-pi/4}^{pi/4} beta(theta) F(theta) dtheta
///     = 4 int_0^{sin(pi/8)} u^{-1-2s} G(u) du,      u = sin(theta/2),
/// where G(u) = F(theta(u)) expressed through cos(theta) = 1 - 2u^2 and
/// sin(theta) = 2u sqrt(1-u^2). G must be evaluated in a cancellation-stable
/// form; the factor u^{-1-2s} is folded in here via exp/log.
double beta_integral(const CrossSectionParams& cs, const std::function<double(double)>& g_of_u,
                     QuadReport* report = nullptr);

/// Eigenvalues of the linearized operator (lambda_0 = 0 by convention):
///   lambda_{2k+1} = int beta (1 - cos^{2k+1}),
///   lambda_{2k}   = int beta (1 - cos^{2k} - sin^{2k}),  k >= 1.
/// Relative accuracy 1e-9 (or 1e-12 absolute near zero) or numerical_error.
double eigenvalue(int k, const CrossSectionParams& cs, QuadReport* report = nullptr);

/// Large-k equivalent (2^{1+s}/s) Gamma(1-s) k^s.
double asymptotic_lambda(int k, const CrossSectionParams& cs);

/// Structure constants of the nonlinear term, Gamma(e_k, e_l) = alpha_{k,l} e_{k+l}:
///   alpha_{2n,m} = sqrt(C(2n+m,2n)) int beta sin^{2n} cos^m   (n >= 1),
///   alpha_{0,m}  = int beta (cos^m - 1),   alpha_{0,0} = alpha_{odd,m} = 0.
double alpha(int k, int l, const CrossSectionParams& cs, QuadReport* report = nullptr);

/// mu~_{n,m} = (1+m/n)^s (1+n/(m+1))^{1/4} of the alpha_{2n,m} bound.
double mu_tilde(int n, int m, double s);

/// Cached eigenvalues and trilinear coefficients.
struct KernelTables {
  double s = 0.5;
  std::vector<double> lambdas;  // lambda_n, n = 0..n_lambda-1
  int k_max = 0;                // alphas stored for even k <= k_max
  int l_max = 0;                // and l <= l_max
  std::vector<double> alphas;   // [(k/2) * (l_max+1) + l]
  double quadrature_tol = 0.0;  // worst achieved relative error

  double lambda(int n) const { return lambdas.at(n); }
  double alpha_at(int k, int l) const {
    if (k % 2 != 0) return 0.0;
    return alphas.at(static_cast<size_t>(k / 2) * (l_max + 1) + l);
  }
};

/// Entries are independent quadratures; construction parallelizes over them.
KernelTables build_tables(const CrossSectionParams& cs, int n_lambda, int k_max, int l_max);

/// CSV cache (header carries s, tolerance and index bounds).
void save_tables_csv(const KernelTables& t, const std::string& path);
std::optional<KernelTables> load_tables_csv(const std::string& path);

}  // namespace kac
