#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace alas {

/// Mono PCM samples in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;
};

/// Dense row-major matrix. Rows are frames, columns are frequency bins
/// (or samples, for framed signals).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// N frames x K bins of natural-log amplitudes.
using LasMatrix = Matrix;

/// Length-K nonnegative amplitude spectrum of one frame.
struct SpectrumFrame {
  std::vector<double> bins;
};

/// Per-frame acoustic features. `energy` is the 0th warped cepstral
/// coefficient; `mcep` holds coefficients 1..order.
struct AcousticFrame {
  double f0 = 0.0;
  bool voiced = false;
  double energy = 0.0;
  std::vector<double> mcep;
};

struct FeatureTrack {
  std::vector<AcousticFrame> frames;
  int frame_shift = 80;
  int sample_rate = 16000;
};

}  // namespace alas
