#include "alas/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <string>
#include <utility>

#include "alas/error.hpp"

namespace alas {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0)
    throw Error("fft size must be a power of two >= 2, got " + std::to_string(size));
  time_ = fftw_alloc_real(static_cast<std::size_t>(size));
  freq_ = reinterpret_cast<std::complex<double>*>(
      fftw_alloc_complex(static_cast<std::size_t>(num_bins())));
  auto* freq = reinterpret_cast<fftw_complex*>(freq_);
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(size, time_, freq, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, freq, time_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : size_(std::exchange(other.size_, 0)),
      time_(std::exchange(other.time_, nullptr)),
      freq_(std::exchange(other.freq_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  if (this != &other) {
    release();
    size_ = std::exchange(other.size_, 0);
    time_ = std::exchange(other.time_, nullptr);
    freq_ = std::exchange(other.freq_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealFft::release() noexcept {
  if (forward_plan_ != nullptr || inverse_plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  }
  forward_plan_ = inverse_plan_ = nullptr;
  if (time_ != nullptr) fftw_free(time_);
  if (freq_ != nullptr) fftw_free(freq_);
  time_ = nullptr;
  freq_ = nullptr;
}

void RealFft::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void RealFft::inverse() { fftw_execute(static_cast<fftw_plan>(inverse_plan_)); }

}  // namespace alas
