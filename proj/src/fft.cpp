#include "nhlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nhlab {

namespace {
// FFTW planning is not thread safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Fft: length must be positive");
  std::lock_guard lock(planner_mutex());
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  forwardPlan_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  inversePlan_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forwardPlan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inversePlan_));
  fftw_free(buffer_);
}

void Fft::run(void* plan, std::span<std::complex<double>> data) {
  if (static_cast<int>(data.size()) != n_) throw std::invalid_argument("Fft: length mismatch");
  std::copy(data.begin(), data.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(plan));
  std::copy(buffer_, buffer_ + n_, data.begin());
}

void Fft::forward(std::span<std::complex<double>> data) { run(forwardPlan_, data); }

void Fft::inverse(std::span<std::complex<double>> data) {
  run(inversePlan_, data);
  const double scale = 1.0 / n_;
  for (auto& v : data) v *= scale;
}

Fft& Fft::local(int n) {
  thread_local std::map<int, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

}  // namespace nhlab
