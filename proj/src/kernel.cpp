#include "kac/kernel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace kac {

namespace {
const double kUMax = std::sin(0.5 * CrossSectionParams::theta_max);  // sin(pi/8)


// 1 - cos^m(theta) without cancellation: cos(theta) = 1 - 2u^2 is close to 1
// for small u, so go through log1p/expm1.
double one_minus_cos_pow(int m, double u) {
  return -std::expm1(double(m) * std::log1p(-2.0 * u * u));
}

// sin^m(theta) = (2u)^m (1-u^2)^{m/2}, m even; underflow to 0 is fine.
double sin_pow_even(int m, double u) {
  if (u <= 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(double(m) * std::log(2.0 * u) + 0.5 * double(m) * std::log1p(-u * u));
}

double cos_pow(int m, double u) { return std::exp(double(m) * std::log1p(-2.0 * u * u)); }
}  // namespace

double beta(double theta, const CrossSectionParams& cs) {
  cs.validate();
  if (theta == 0.0) throw std::domain_error("beta: non-integrable singularity at theta = 0");
  if (std::abs(theta) > CrossSectionParams::theta_max + 1e-15)
    throw std::domain_error("beta: |theta| exceeds pi/4");
  double h = 0.5 * theta;
  return std::abs(std::cos(h)) / std::pow(std::abs(std::sin(h)), 1.0 + 2.0 * cs.s);
}

double beta_integral(const CrossSectionParams& cs, const std::function<double(double)>& g_of_u,
                     QuadReport* report) {
  cs.validate();
  const double s = cs.s;
  auto integrand = [&](double u) -> double {
    double g = g_of_u(u);
    if (g == 0.0) return 0.0;
    // fold u^{-1-2s} in log space so near-endpoint evaluations cannot
    // overflow before the (integrable) product is formed
    double mag = std::exp((-1.0 - 2.0 * s) * std::log(u) + std::log(std::abs(g)));
    return std::copysign(4.0 * mag, g);
  };
  // integrands are C^inf on (0, u_max] with one algebraic endpoint
  // singularity; tanh-sinh handles it without splitting. High eigenvalue
  // indices put a sharp layer at u ~ n^{-1/2}, hence the generous depth.
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double err = 0.0, l1 = 0.0;
  double val = integrator.integrate(integrand, 0.0, kUMax, 1e-12, &err, &l1);
  (void)l1;
  if (report) {
    report->value = val;
    report->abs_error = err;  // last-level correction, absolute
    report->rel_error = std::abs(val) > 0 ? err / std::abs(val) : 0.0;
  }
  return val;
}

double eigenvalue(int k, const CrossSectionParams& cs, QuadReport* report) {
  if (k < 1) throw std::invalid_argument("eigenvalue: k must be >= 1");
  QuadReport rep;
  double val;
  if (k % 2 == 1) {
    val = beta_integral(cs, [k](double u) { return one_minus_cos_pow(k, u); }, &rep);
  } else {
    val = beta_integral(
        cs, [k](double u) { return one_minus_cos_pow(k, u) - sin_pow_even(k, u); }, &rep);
  }
  if (rep.abs_error > std::max(1e-9 * std::abs(val), 1e-12))
    throw numerical_error("eigenvalue: quadrature reached only abs error " +
                          std::to_string(rep.abs_error) + " for k=" + std::to_string(k));
  if (report) *report = rep;
  return val;
}

double asymptotic_lambda(int k, const CrossSectionParams& cs) {
  cs.validate();
  if (k < 1) throw std::invalid_argument("asymptotic_lambda: k must be >= 1");
  return std::pow(2.0, 1.0 + cs.s) / cs.s * std::tgamma(1.0 - cs.s) * std::pow(double(k), cs.s);
}

double alpha(int k, int l, const CrossSectionParams& cs, QuadReport* report) {
  if (k < 0 || l < 0) throw std::invalid_argument("alpha: negative index");
  cs.validate();
  if (k % 2 == 1) {
    if (report) *report = QuadReport{};
    return 0.0;
  }
  if (k == 0 && l == 0) {
    if (report) *report = QuadReport{};
    return 0.0;
  }
  QuadReport rep;
  double val;
  if (k == 0) {
    val = beta_integral(cs, [l](double u) { return -one_minus_cos_pow(l, u); }, &rep);
  } else {
    // sqrt of binomial C(k+l, k) via log-Gamma; k+l can be large
    double logbin =
        std::lgamma(double(k + l + 1)) - std::lgamma(double(k + 1)) - std::lgamma(double(l + 1));
    double root = std::exp(0.5 * logbin);
    val = root *
          beta_integral(cs, [k, l](double u) { return sin_pow_even(k, u) * cos_pow(l, u); }, &rep);
    rep.value = val;
    rep.abs_error *= root;
  }
  if (rep.abs_error > std::max(1e-8 * std::abs(val), 1e-12))
    throw numerical_error("alpha: quadrature reached only abs error " +
                          std::to_string(rep.abs_error));
  if (report) *report = rep;
  return val;
}

double mu_tilde(int n, int m, double s) {
  if (n < 1 || m < 0) throw std::invalid_argument("mu_tilde: requires n >= 1, m >= 0");
  return std::pow(1.0 + double(m) / n, s) * std::pow(1.0 + double(n) / (m + 1), 0.25);
}

KernelTables build_tables(const CrossSectionParams& cs, int n_lambda, int k_max, int l_max) {
  cs.validate();
  if (n_lambda < 1 || k_max < 0 || l_max < 0) throw std::invalid_argument("build_tables: sizes");
  KernelTables t;
  t.s = cs.s;
  t.k_max = k_max;
  t.l_max = l_max;
  t.lambdas.assign(n_lambda, 0.0);
  const int kn = k_max / 2 + 1;
  t.alphas.assign(static_cast<size_t>(kn) * (l_max + 1), 0.0);

  // relative where the entry has size, absolute below a 1e-4 floor (the
  // zero entries lambda_2, alpha_{0,0} would otherwise dominate the metric)
  auto achieved = [](const QuadReport& rep) {
    return rep.abs_error / std::max(std::abs(rep.value), 1e-4);
  };
  std::vector<double> tol_lambda(n_lambda, 0.0), tol_alpha(t.alphas.size(), 0.0);
  parallel_for(1, n_lambda, [&](std::int64_t n) {
    QuadReport rep;
    t.lambdas[n] = eigenvalue(static_cast<int>(n), cs, &rep);
    tol_lambda[n] = achieved(rep);
  });
  parallel_for(0, static_cast<std::int64_t>(kn) * (l_max + 1), [&](std::int64_t idx) {
    int k = 2 * static_cast<int>(idx / (l_max + 1));
    int l = static_cast<int>(idx % (l_max + 1));
    QuadReport rep;
    t.alphas[idx] = alpha(k, l, cs, &rep);
    tol_alpha[idx] = achieved(rep);
  });
  double worst = 0.0;
  for (double e : tol_lambda) worst = std::max(worst, e);
  for (double e : tol_alpha) worst = std::max(worst, e);
  t.quadrature_tol = worst;
  return t;
}

void save_tables_csv(const KernelTables& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_tables_csv: cannot open " + path);
  out.precision(17);
  out << "# kac kernel tables\n";
  out << "s," << t.s << "\n";
  out << "quadrature_tol," << t.quadrature_tol << "\n";
  out << "n_lambda," << t.lambdas.size() << "\n";
  out << "k_max," << t.k_max << "\n";
  out << "l_max," << t.l_max << "\n";
  out << "kind,i,j,value\n";
  for (size_t n = 0; n < t.lambdas.size(); ++n) out << "lambda," << n << ",0," << t.lambdas[n] << "\n";
  for (int k = 0; k <= t.k_max; k += 2)
    for (int l = 0; l <= t.l_max; ++l)
      out << "alpha," << k << "," << l << "," << t.alpha_at(k, l) << "\n";
}

std::optional<KernelTables> load_tables_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  KernelTables t;
  std::string line;
  size_t n_lambda = 0;
  auto tail_after = [](const std::string& s) { return s.substr(s.find(',') + 1); };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("s,", 0) == 0)
      t.s = std::stod(tail_after(line));
    else if (line.rfind("quadrature_tol,", 0) == 0)
      t.quadrature_tol = std::stod(tail_after(line));
    else if (line.rfind("n_lambda,", 0) == 0)
      n_lambda = std::stoul(tail_after(line));
    else if (line.rfind("k_max,", 0) == 0)
      t.k_max = std::stoi(tail_after(line));
    else if (line.rfind("l_max,", 0) == 0)
      t.l_max = std::stoi(tail_after(line));
    else if (line.rfind("kind,", 0) == 0)
      break;
  }
  t.lambdas.assign(n_lambda, 0.0);
  t.alphas.assign(static_cast<size_t>(t.k_max / 2 + 1) * (t.l_max + 1), 0.0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string kind, i_s, j_s, v_s;
    std::getline(ss, kind, ',');
    std::getline(ss, i_s, ',');
    std::getline(ss, j_s, ',');
    std::getline(ss, v_s, ',');
    if (kind == "lambda")
      t.lambdas.at(std::stoul(i_s)) = std::stod(v_s);
    else if (kind == "alpha") {
      int k = std::stoi(i_s), l = std::stoi(j_s);
      t.alphas.at(static_cast<size_t>(k / 2) * (t.l_max + 1) + l) = std::stod(v_s);
    }
  }
  return t;
}

}  // namespace kac
