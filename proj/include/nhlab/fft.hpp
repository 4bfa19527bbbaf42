#pragma once

#include <complex>
#include <span>

namespace nhlab {

/// Unnormalized complex DFT of a fixed length backed by FFTW.
/// forward: X_k = sum_j x_j e^{-2 pi i jk/N}; inverse applies 1/N.
/// Instances are not shared across threads; use Fft::local(n).
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }
  void forward(std::span<std::complex<double>> data);
  void inverse(std::span<std::complex<double>> data);

  /// Per-thread cached transform of length n.
  static Fft& local(int n);

 private:
  void run(void* plan, std::span<std::complex<double>> data);

  int n_;
  std::complex<double>* buffer_;
  void* forwardPlan_;
  void* inversePlan_;
};

}  // namespace nhlab
