#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace vbgk::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  PlanPair() = default;
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

// The FFTW planner is not re-entrant, so plan creation is serialized.
// FFTW_ESTIMATE keeps the chosen algorithm (and hence the rounding) fixed
// from run to run.
const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto plans = std::make_unique<PlanPair>();
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->forward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
  plans->backward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
  return *cache.emplace(n, std::move(plans)).first->second;
}

void execute(fftw_plan plan, std::vector<std::complex<double>>& data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void fft2d_forward(int n, std::vector<std::complex<double>>& data) {
  execute(plans_for(n).forward, data);
}

void fft2d_backward(int n, std::vector<std::complex<double>>& data) {
  execute(plans_for(n).backward, data);
}

}  // namespace vbgk::detail
