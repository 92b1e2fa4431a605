#include "clayer/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace clayer {
namespace {

// ============================================================================
// Process-wide plan cache. Plans are created with FFTW_ESTIMATE|FFTW_UNALIGNED
// and executed through the new-array interface, so one plan per (nx, ny)
// serves every buffer. The cache mutex keeps plan creation race-free.
// ============================================================================

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  PlanPair get(int nx, int ny) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(nx, ny);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    // Batched layout: ny transforms of length nx, x-stride ny, unit distance
    // between consecutive y-rows.
    std::vector<fftw_complex> scratch_in(static_cast<size_t>(nx) * ny);
    std::vector<fftw_complex> scratch_out(static_cast<size_t>(nx) * ny);
    int n[1] = {nx};
    PlanPair p;
    p.fwd = fftw_plan_many_dft(1, n, ny, scratch_in.data(), nullptr, ny, 1, scratch_out.data(),
                               nullptr, ny, 1, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_many_dft(1, n, ny, scratch_in.data(), nullptr, ny, 1, scratch_out.data(),
                               nullptr, ny, 1, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fourier: plan creation failed");
    cache_[key] = p;
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::pair<int, int>, PlanPair> cache_;
};

}  // namespace

Fourier::Fourier(const Grid& g) : grid_(g) {
  PlanCache::instance().get(g.nx, g.ny);
}

void Fourier::forward(const PhysField& in, SpecField& out) const {
  if (in.nx != grid_.nx || in.ny != grid_.ny) throw std::invalid_argument("fourier: dimension mismatch");
  if (out.nx != grid_.nx || out.ny != grid_.ny) out = SpecField(grid_);

  std::vector<std::complex<double>> buf(in.a.size());
  for (size_t i = 0; i < in.a.size(); ++i) buf[i] = in.a[i];

  PlanPair p = PlanCache::instance().get(grid_.nx, grid_.ny);
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(out.c.data()));
  const double scale = 1.0 / grid_.nx;
  for (auto& z : out.c) z *= scale;
}

void Fourier::backward(const SpecField& in, PhysField& out) const {
  if (in.nx != grid_.nx || in.ny != grid_.ny) throw std::invalid_argument("fourier: dimension mismatch");
  if (out.nx != grid_.nx || out.ny != grid_.ny) out = PhysField(grid_);

  std::vector<std::complex<double>> buf(in.c.size());
  PlanPair p = PlanCache::instance().get(grid_.nx, grid_.ny);
  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.c.data())),
                   reinterpret_cast<fftw_complex*>(buf.data()));
  for (size_t i = 0; i < buf.size(); ++i) out.a[i] = buf[i].real();
}

}  // namespace clayer
