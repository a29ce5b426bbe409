#include "kac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kac {

namespace {

std::mutex g_plan_mutex;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plans made with FFTW_ESTIMATE do not touch the arrays and can be reused
// with fftw_execute_dft on any properly aligned buffers.
PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<cplx> fft_forward(std::span<const cplx> x) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> in(x.begin(), x.end()), out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = plans_for(n).fwd;
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<cplx> fft_inverse(std::span<const cplx> x) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> in(x.begin(), x.end()), out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = plans_for(n).bwd;
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  for (auto& c : out) c /= double(n);
  return out;
}

}  // namespace kac
