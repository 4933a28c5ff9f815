#pragma once

#include <complex>
#include <span>

namespace alas {

/// Real-input FFT of a fixed power-of-two size, backed by FFTW.
///
/// Each instance owns its plans and aligned buffers, so one instance per
/// thread is safe. Plan creation is serialized internally.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&& other) noexcept;
  RealFft& operator=(RealFft&& other) noexcept;

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  /// Time-domain buffer of length size().
  std::span<double> time() { return {time_, static_cast<std::size_t>(size_)}; }
  /// Half spectrum of length num_bins().
  std::span<std::complex<double>> freq() {
    return {freq_, static_cast<std::size_t>(num_bins())};
  }

  /// time() -> freq(), unnormalized.
  void forward();
  /// freq() -> time(), unnormalized (the result is size() times the inverse DFT).
  /// Clobbers freq().
  void inverse();

 private:
  void release() noexcept;

  int size_ = 0;
  double* time_ = nullptr;
  std::complex<double>* freq_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace alas
