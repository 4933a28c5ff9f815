#include <doctest.h>

#include <cmath>

#include "alas/dsp.hpp"
#include "alas/features.hpp"
#include "alas/recovery.hpp"
#include "alas/reference.hpp"
#include "alas/refine.hpp"
#include "alas/synthetic.hpp"
#include "oracles.hpp"

using namespace alas;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("extract_las: FFT kernel agrees with the direct DFT") {
  const AnalysisParams p;
  const auto u = synthetic::vowel({.duration_s = 0.25, .f0_start_hz = 170, .f0_end_hz = 190});
  const LasMatrix fast = extract_las(u.wave, p);
  const LasMatrix slow = reference::extract_las(u.wave, p);
  REQUIRE(fast.rows() == slow.rows());
  REQUIRE(fast.cols() == slow.cols());
  // Compare amplitudes relative to the frame peak; deep log values are noise-dominated.
  for (std::size_t n = 0; n < fast.rows(); ++n) {
    double peak = 0.0;
    for (double v : slow.row(n)) peak = std::max(peak, std::exp(v));
    for (std::size_t k = 0; k < fast.cols(); ++k)
      CHECK(std::abs(std::exp(fast(n, k)) - std::exp(slow(n, k))) <= 1e-9 * peak);
  }
  CHECK(extract_las(u.wave, p) == fast);
}

TEST_CASE("recover_alas: parallel and serial reference agree") {
  const AnalysisParams p;
  const auto u = synthetic::vowel({.duration_s = 0.3, .f0_start_hz = 210, .f0_end_hz = 140});
  const FeatureTrack track = extract_features(u.wave, p);
  const LasMatrix fast = recover_alas(track, p);
  const LasMatrix slow = reference::recover_alas(track, p);
  REQUIRE(fast.rows() == slow.rows());
  for (std::size_t n = 0; n < fast.rows(); ++n) {
    double peak = 0.0;
    for (double v : slow.row(n)) peak = std::max(peak, std::exp(v));
    for (std::size_t k = 0; k < fast.cols(); ++k)
      CHECK(std::abs(std::exp(fast(n, k)) - std::exp(slow(n, k))) <= 1e-10 * peak);
  }
  for (int rep = 0; rep < 3; ++rep) CHECK(recover_alas(track, p) == fast);
}

TEST_CASE("apply_refiner: parallel and serial reference agree") {
  test::Rng rng(4);
  const LasMatrix a = test::random_matrix(300, 257, rng, -20, 2);
  RefinerModel m = RefinerModel::identity(257, 3);
  for (std::size_t k = 0; k < 257; ++k) {
    m.gain[k] = rng.uniform(0.5, 1.5);
    m.bias[k] = rng.uniform(-1, 1);
  }
  for (int r : {0, 1, 3}) {
    m.context_radius = r;
    const LasMatrix fast = apply_refiner(m, a);
    CHECK(max_abs_diff(fast, reference::apply_refiner(m.gain, m.bias, r, a)) < 1e-12);
    CHECK(apply_refiner(m, a) == fast);
  }
}
