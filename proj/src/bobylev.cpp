#include "kac/bobylev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kac/hermite.hpp"

namespace kac {

namespace {

struct QuadNode {
  double u;       // abscissa in (0, u_max)
  double weight;  // includes h and the du/dt factor, not the 4 u^{-1-2s}
};

// Fixed-level tanh-sinh nodes for (0, u_max); fixed abscissas let callers
// batch the per-node work. Node k = 0, +-1, ... at t = k h.
std::vector<QuadNode> tanh_sinh_nodes(double u_max, double h, double t_range) {
  std::vector<QuadNode> nodes;
  const double half_pi = 0.5 * std::numbers::pi;
  for (double t = -t_range; t <= t_range + 1e-12; t += h) {
    double y = half_pi * std::sinh(t);
    // u = u_max/2 (1 + tanh y), kept denormal-safe near the left endpoint
    double e2y = std::exp(2.0 * std::min(y, 0.0));
    double u = y >= 0 ? 0.5 * u_max * (1.0 + std::tanh(y)) : u_max * e2y / (1.0 + e2y);
    double sech = 1.0 / std::cosh(y);
    double w = h * 0.5 * u_max * half_pi * std::cosh(t) * sech * sech;
    if (u <= 0.0 || u >= u_max || w <= 0.0) continue;
    nodes.push_back({u, w});
  }
  return nodes;
}

// Periodic v-space representation conjugate to a uniform xi grid.
struct VRep {
  double v0 = 0.0, dv = 0.0;
  std::vector<cplx> vals;
};

VRep to_v_samples(const UniformGrid1d& xi, std::span<const cplx> hat) {
  const int m = xi.n;
  VRep r;
  r.dv = 2.0 * std::numbers::pi / (m * xi.step);
  r.v0 = -0.5 * m * r.dv;
  r.vals.assign(m, cplx{0, 0});
  const double scale = xi.step / (2.0 * std::numbers::pi);
  for (int i = 0; i < m; ++i) {
    double v = r.v0 + i * r.dv;
    cplx acc{0, 0};
    cplx ph = std::polar(1.0, v * xi.min);
    const cplx stepph = std::polar(1.0, v * xi.step);
    for (int j = 0; j < m; ++j) {
      acc += hat[j] * ph;
      ph *= stepph;
    }
    r.vals[i] = scale * acc;
  }
  return r;
}

// f^(x) = dv sum_m f(v_m) e^{-i v_m x}: exact value of the trigonometric
// interpolant at arbitrary frequency x.
cplx hat_at(const VRep& f, double x) {
  cplx acc{0, 0};
  cplx ph = std::polar(1.0, -f.v0 * x);
  const cplx stepph = std::polar(1.0, -f.dv * x);
  for (const auto& val : f.vals) {
    acc += val * ph;
    ph *= stepph;
  }
  return acc * f.dv;
}

VRep even_part(const VRep& f) {
  VRep e = f;
  const int m = static_cast<int>(f.vals.size());
  for (int i = 0; i < m; ++i) {
    int j = i == 0 ? 0 : m - i;  // v_j = -v_i (periodic identification)
    e.vals[i] = 0.5 * (f.vals[i] + f.vals[j]);
  }
  return e;
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

struct BilinearCore {
  const CrossSectionParams& cs;
  const BobylevOptions& opts;
  VRep a;  // sin-slot, already the even part
  VRep b;  // cos-slot
  std::vector<QuadNode> nodes;
  std::vector<double> a_moments;  // dv sum a(v) v^r, even r
  cplx a_hat0;

  BilinearCore(const CrossSectionParams& cs_, const BobylevOptions& o, VRep a_even, VRep b_)
      : cs(cs_), opts(o), a(std::move(a_even)), b(std::move(b_)) {
    const double u_max = std::sin(0.5 * CrossSectionParams::theta_max);
    nodes = tanh_sinh_nodes(u_max, opts.quad_step, opts.quad_range);
    a_moments.assign(opts.moment_terms + 1, 0.0);
    for (size_t i = 0; i < a.vals.size(); ++i) {
      double v = a.v0 + i * a.dv;
      double p = 1.0;
      for (int r = 0; r <= opts.moment_terms; ++r) {
        a_moments[r] += std::real(a.vals[i]) * p * a.dv;
        p *= v;
      }
    }
    a_hat0 = hat_at(a, 0.0);
  }

  // a^(w) - a^(0) for the even sin-slot function, summed without forming
  // the difference of two O(1) quantities. Two routes: the even-moment
  // series near w = 0, else the sin^2 form on the v samples.
  double d1(double w) const {
    if (std::abs(w) < 0.7) {
      double acc = 0.0, wr = w * w, w2 = w * w;
      double fact = 2.0;  // r!
      double sign = -1.0;
      for (int r = 2; r <= opts.moment_terms; r += 2) {
        acc += sign * a_moments[r] * wr / fact;
        sign = -sign;
        wr *= w2;
        fact *= double(r + 1) * double(r + 2);
      }
      return acc;
    }
    double acc = 0.0;
    for (size_t i = 0; i < a.vals.size(); ++i) {
      double v = a.v0 + i * a.dv;
      double sh = std::sin(0.5 * v * w);
      acc += std::real(a.vals[i]) * (-2.0 * sh * sh);
    }
    return acc * a.dv;
  }

  // b^(xi c) - b^(xi) with c = 1 - 2u^2, via e^{i phi} - 1 on the samples.
  cplx d2(double xi, double u) const {
    double rho = 2.0 * u * u;
    cplx acc{0, 0};
    cplx ph = std::polar(1.0, -b.v0 * xi);
    const cplx stepph = std::polar(1.0, -b.dv * xi);
    for (size_t i = 0; i < b.vals.size(); ++i) {
      double v = b.v0 + i * b.dv;
      double phi = v * xi * rho;
      double sh = std::sin(0.5 * phi);
      cplx eim1{-2.0 * sh * sh, std::sin(phi)};
      acc += b.vals[i] * ph * eim1;
      ph *= stepph;
    }
    return acc * b.dv;
  }

  // F K(a,b)(xi) by the substituted quadrature. Returns the sums at step h
  // and 2h for a convergence estimate.
  std::pair<cplx, cplx> transform_at(double xi) const {
    const double s = cs.s;
    const cplx b_xi = hat_at(b, xi);
    cplx acc{0, 0}, acc_coarse{0, 0};
    for (size_t q = 0; q < nodes.size(); ++q) {
      double u = nodes[q].u;
      double s2 = 2.0 * u * std::sqrt(1.0 - u * u);
      cplx bracket;
      if (u <= opts.u_split) {
        // grazing angles: both factors differ from their xi-values by
        // O(u^2); sum the differences, never the near-equal totals
        cplx d2v = d2(xi, u);
        bracket = d1(xi * s2) * (b_xi + d2v) + a_hat0 * d2v;
      } else {
        double c = 1.0 - 2.0 * u * u;
        bracket = d1(xi * s2) * hat_at(b, xi * c) + a_hat0 * (hat_at(b, xi * c) - b_xi);
      }
      cplx term = nodes[q].weight * 4.0 * std::pow(u, -1.0 - 2.0 * s) * bracket;
      acc += term;
      if (q % 2 == 0) acc_coarse += 2.0 * term;  // nodes at even k = step 2h
    }
    return {acc, acc_coarse};
  }
};

}  // namespace

std::vector<cplx> bobylev_apply(const UniformGrid1d& xi_grid, std::span<const cplx> g_hat,
                                std::span<const cplx> f_hat, const CrossSectionParams& cs,
                                const BobylevOptions& opts) {
  cs.validate();
  if (static_cast<int>(g_hat.size()) != xi_grid.n || static_cast<int>(f_hat.size()) != xi_grid.n)
    throw std::invalid_argument("bobylev_apply: sample count mismatch");

  // resolution: the samples must have decayed at the xi edges, and the
  // reconstructed v-samples at the v edges, else values in between are not
  // determined by the input
  double gmax = max_abs(g_hat), fmax = max_abs(f_hat);
  double scale = std::max(gmax, fmax);
  auto edge = [&](std::span<const cplx> h) {
    return std::max(std::abs(h.front()), std::abs(h.back()));
  };
  if (scale > 0 && (edge(g_hat) > opts.resolution_tol * scale ||
                    edge(f_hat) > opts.resolution_tol * scale))
    throw numerical_error("bobylev_apply: xi samples not decayed at grid edge");

  VRep gv = to_v_samples(xi_grid, g_hat);
  VRep fv = to_v_samples(xi_grid, f_hat);
  double vscale = std::max(max_abs(gv.vals), max_abs(fv.vals));
  if (vscale > 0 && (std::abs(gv.vals.front()) > opts.resolution_tol * vscale ||
                     std::abs(fv.vals.front()) > opts.resolution_tol * vscale))
    throw numerical_error("bobylev_apply: functions not resolved (v window too small)");

  BilinearCore core(cs, opts, even_part(gv), std::move(fv));
  std::vector<cplx> out(xi_grid.n);
  std::vector<double> errs(xi_grid.n, 0.0);
  parallel_for(0, xi_grid.n, [&](std::int64_t j) {
    auto [fine, coarse] = core.transform_at(xi_grid.at(static_cast<int>(j)));
    out[j] = fine;
    errs[j] = std::abs(fine - coarse);
  });
  // convergence measured against the input scale: the output may be
  // structurally zero (e.g. K(mu,mu))
  double ref = std::max({max_abs(out), gmax * fmax, 1e-30});
  for (double e : errs)
    if (e > opts.quad_tol * ref)
      throw numerical_error("bobylev_apply: quadrature not converged (err " + std::to_string(e) +
                            ")");
  return out;
}

double gamma_coefficient_oracle(int k, int l, const CrossSectionParams& cs,
                                const BobylevOptions& opts) {
  if (k < 0 || l < 0) throw std::invalid_argument("gamma_coefficient_oracle: negative index");
  cs.validate();
  if (k % 2 == 1) return 0.0;  // odd sin-slot index: even part vanishes

  // xi grid wide enough for the Gaussian-poly transforms of mu^{1/2} e_n
  const int m = 256;
  const double xi_max = 16.0;
  UniformGrid1d xi{-xi_max, 2.0 * xi_max / m, m};

  VRep a, b;
  a.dv = 2.0 * std::numbers::pi / (m * xi.step);
  a.v0 = -0.5 * m * a.dv;
  a.vals.assign(m, cplx{0, 0});
  b = a;
  const double mu_norm = std::pow(2.0 * std::numbers::pi, -0.25);  // mu^{1/2} = e_0
  for (int i = 0; i < m; ++i) {
    double v = a.v0 + i * a.dv;
    auto e = hermite_e_all(std::max(k, l), v);
    double sqrt_mu = mu_norm * std::exp(-0.25 * v * v);
    a.vals[i] = sqrt_mu * e[k];
    b.vals[i] = sqrt_mu * e[l];
  }

  BilinearCore core(cs, opts, even_part(a), std::move(b));
  std::vector<cplx> khat(m);
  std::vector<double> errs(m, 0.0);
  parallel_for(0, m, [&](std::int64_t j) {
    auto [fine, coarse] = core.transform_at(xi.at(static_cast<int>(j)));
    khat[j] = fine;
    errs[j] = std::abs(fine - coarse);
  });
  double kscale = std::max({max_abs(khat), 1.0});
  for (double e : errs)
    if (e > opts.quad_tol * kscale)
      throw numerical_error("gamma_coefficient_oracle: quadrature not converged");

  // K(v) on the v grid, then alpha = int K(v) e_{k+l}(v) / mu^{1/2}(v) dv.
  // Since mu^{1/2} = e_0, the ratio e_n/e_0 is the Gaussian-stripped
  // polynomial P_n with P_0 = 1, P_{n+1} = (v P_n - sqrt(n) P_{n-1})/sqrt(n+1).
  const int n_out = k + l;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    double v = a.v0 + i * a.dv;
    cplx kv{0, 0};
    cplx ph = std::polar(1.0, v * xi.min);
    const cplx stepph = std::polar(1.0, v * xi.step);
    for (int j = 0; j < m; ++j) {
      kv += khat[j] * ph;
      ph *= stepph;
    }
    kv *= xi.step / (2.0 * std::numbers::pi);
    double p = 1.0, pm1 = 0.0;
    for (int n = 0; n < n_out; ++n) {
      double pn = (v * p - std::sqrt(double(n)) * pm1) / std::sqrt(double(n + 1));
      pm1 = p;
      p = pn;
    }
    acc += std::real(kv) * p * a.dv;
  }
  return acc;
}

}  // namespace kac
