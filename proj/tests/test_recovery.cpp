#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alas/dsp.hpp"
#include "alas/error.hpp"
#include "alas/features.hpp"
#include "alas/recovery.hpp"
#include "alas/reference.hpp"
#include "alas/synthetic.hpp"
#include "oracles.hpp"

using namespace alas;

namespace {

AcousticFrame make_frame(double f0, std::vector<double> cep) {
  AcousticFrame f;
  f.f0 = f0;
  f.voiced = f0 > 0.0;
  f.energy = cep.at(0);
  f.mcep.assign(cep.begin() + 1, cep.end());
  return f;
}

}  // namespace

TEST_CASE("excitation_spectrum: 200 Hz comb") {
  const AnalysisParams p;
  CHECK(harmonic_spacing(200.0, p) == 6);
  const SpectrumFrame e = excitation_spectrum(200.0, p);
  REQUIRE(e.bins.size() == 257);
  int pulses = 0;
  for (std::size_t k = 0; k < e.bins.size(); ++k) {
    const bool expected = k > 0 && k % 6 == 0 && k <= 252;
    CHECK(e.bins[k] == (expected ? 1.0 : 0.0));
    pulses += e.bins[k] == 1.0;
  }
  CHECK(pulses == 42);
}

TEST_CASE("excitation_spectrum: unvoiced, Nyquist and errors") {
  const AnalysisParams p;
  const SpectrumFrame flat = excitation_spectrum(0.0, p);
  CHECK(std::all_of(flat.bins.begin(), flat.bins.end(), [](double v) { return v == 1.0; }));

  const SpectrumFrame nyq = excitation_spectrum(8000.0, p);
  CHECK(harmonic_spacing(8000.0, p) == 256);
  for (std::size_t k = 0; k < nyq.bins.size(); ++k) CHECK(nyq.bins[k] == (k == 256 ? 1.0 : 0.0));

  // half-up rounding: 15.625 Hz * 0.5 bin -> 1 bin; tiny f0 clamps to spacing 1
  CHECK(harmonic_spacing(15.625, p) == 1);
  CHECK(harmonic_spacing(46.875, p) == 2);  // 1.5 bins rounds up
  CHECK(harmonic_spacing(0.5, p) == 1);

  CHECK_THROWS_AS(excitation_spectrum(-1.0, p), Error);
  CHECK_THROWS_AS(excitation_spectrum(std::nan(""), p), Error);
}

TEST_CASE("excitation_spectrum: comb invariants over random f0") {
  const AnalysisParams p;
  test::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const double f0 = rng.uniform(20.0, 8000.0);
    const int k0 = harmonic_spacing(f0, p);
    const SpectrumFrame e = excitation_spectrum(f0, p);
    int count = 0;
    int prev = 0;
    for (int k = 0; k < 257; ++k) {
      if (e.bins[static_cast<std::size_t>(k)] == 1.0) {
        CHECK(k - prev == k0);
        prev = k;
        ++count;
      } else {
        CHECK(e.bins[static_cast<std::size_t>(k)] == 0.0);
      }
    }
    CHECK(count == 256 / k0);
  }
}

TEST_CASE("warp_cepstrum: hand-traced values") {
  const std::vector<double> m = {0.0, 1.0, 0.0};
  const auto c = warp_cepstrum(m, 0.42);
  CHECK(c[0] == doctest::Approx(-0.42).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.8236).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(0.345912).epsilon(1e-12));

  const std::vector<double> impulse = {1.0, 0.0, 0.0};
  for (double a : {-0.9, -0.42, 0.0, 0.3, 0.42, 0.9}) CHECK(warp_cepstrum(impulse, a) == impulse);

  test::Rng rng(1);
  std::vector<double> x(257);
  for (double& v : x) v = rng.normal();
  CHECK(warp_cepstrum(x, 0.0) == x);

  CHECK_THROWS_AS(warp_cepstrum(x, 1.0), Error);
  CHECK_THROWS_AS(warp_cepstrum(x, -1.0), Error);
}

TEST_CASE("warp_cepstrum agrees with the all-pass frequency mapping") {
  // sum_j c_j cos(j w) == sum_k m_k cos(k beta(w)) for the warped frequency beta.
  test::Rng rng(8);
  for (double alpha : {0.42, 0.3, -0.42}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> m(257, 0.0);
      for (int d = 0; d <= 24; ++d) m[static_cast<std::size_t>(d)] = rng.normal() * std::pow(0.7, d);
      const auto c = warp_cepstrum(m, alpha);
      for (int i = 0; i <= 64; ++i) {
        const double w = std::numbers::pi * i / 64.0;
        const double lhs = test::cosine_series(c, w);
        const double rhs = test::cosine_series(m, test::warped_frequency(w, alpha));
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("warp_cepstrum: linearity and involution") {
  test::Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(257, 0.0), y(257, 0.0);
    for (std::size_t i = 0; i < 257; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
    }
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    std::vector<double> mix(257);
    for (std::size_t i = 0; i < 257; ++i) mix[i] = a * x[i] + b * y[i];
    const auto wx = warp_cepstrum(x, 0.42), wy = warp_cepstrum(y, 0.42), wm = warp_cepstrum(mix, 0.42);
    for (std::size_t i = 0; i < 257; ++i) CHECK(std::abs(wm[i] - (a * wx[i] + b * wy[i])) < 1e-9);

    // Involution holds for zero-padded low-order cepstra (the only inputs the
    // pipeline produces); content near the end of the vector is stretched past
    // it and lost.
    std::vector<double> low(257, 0.0);
    std::copy_n(x.begin(), 41, low.begin());
    const auto there = warp_cepstrum(low, 0.42);
    const auto back = warp_cepstrum(there, -0.42);
    const auto other_way = warp_cepstrum(warp_cepstrum(low, -0.42), 0.42);
    for (std::size_t i = 0; i < 257; ++i) {
      CHECK(std::abs(back[i] - low[i]) < 1e-6);
      CHECK(std::abs(other_way[i] - low[i]) < 1e-6);
    }
  }
}

TEST_CASE("filter_spectrum") {
  const AnalysisParams p;
  const SpectrumFrame ones = filter_spectrum(std::vector<double>(41, 0.0), p);
  for (double v : ones.bins) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<double> dc(41, 0.0);
  dc[0] = -1.7;
  for (double v : filter_spectrum(dc, p).bins) CHECK(v == doctest::Approx(std::exp(-1.7)).epsilon(1e-12));

  test::Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto m = test::smooth_mcep(rng, 40);
    const SpectrumFrame v = filter_spectrum(m, p);
    for (double b : v.bins) {
      CHECK(b > 0.0);
      CHECK(std::isfinite(b));
    }
    // The mirrored cepstrum is real and even, so its transform is real.
    std::vector<double> padded(257, 0.0);
    std::copy(m.begin(), m.end(), padded.begin());
    const auto full = mirror_full_spectrum(warp_cepstrum(padded, p.warp_alpha), p.fft_size);
    const auto spec = test::naive_dft(full);
    double max_imag = 0.0;
    for (const auto& z : spec) max_imag = std::max(max_imag, std::abs(z.imag()));
    CHECK(max_imag < 1e-9);
    for (std::size_t k = 0; k < 257; ++k) CHECK(std::log(v.bins[k]) == doctest::Approx(spec[k].real()).epsilon(1e-9));
  }

  CHECK_THROWS_AS(filter_spectrum(std::vector<double>(258, 0.0), p), Error);
  CHECK_THROWS_AS(filter_spectrum(std::vector<double>{}, p), Error);
}

TEST_CASE("combine_source_filter") {
  const AnalysisParams p;
  test::Rng rng(6);
  const SpectrumFrame v = filter_spectrum(test::smooth_mcep(rng, 40), p);
  const SpectrumFrame ones{std::vector<double>(257, 1.0)};
  CHECK(combine_source_filter(ones, v).bins == v.bins);
  const SpectrumFrame zeros{std::vector<double>(257, 0.0)};
  for (double b : combine_source_filter(zeros, v).bins) CHECK(b == 0.0);

  const SpectrumFrame comb = excitation_spectrum(180.0, p);
  const SpectrumFrame s = combine_source_filter(comb, v);
  for (std::size_t k = 0; k < 257; ++k) CHECK((s.bins[k] != 0.0) == (comb.bins[k] != 0.0));

  CHECK_THROWS_AS(combine_source_filter(SpectrumFrame{{1.0, 2.0}}, v), Error);
}

TEST_CASE("window_spectrum") {
  const AnalysisParams p;
  const WindowSpectrum w = window_spectrum(p);
  REQUIRE(w.centered.size() == 512);
  CHECK(w.centered[256] == doctest::Approx(160.0).epsilon(1e-12));
  CHECK(w.at_offset(0) == w.centered[256]);
  CHECK(*std::max_element(w.centered.begin(), w.centered.end()) == w.centered[256]);
  for (int d = 1; d < 256; ++d) CHECK(std::abs(w.at_offset(d) - w.at_offset(-d)) < 1e-9);

  // Compare with a direct DFT of the zero-phase window.
  const auto spec = test::naive_dft(zero_phase_window(p));
  for (int k = 0; k < 512; ++k) {
    CHECK(std::abs(spec[static_cast<std::size_t>(k)].imag()) < 1e-9);
    const int offset = k <= 256 ? k : k - 512;
    CHECK(w.at_offset(offset) == doctest::Approx(spec[static_cast<std::size_t>(k)].real()).epsilon(1e-9));
  }

  // With FN = 2L the periodic Hann transform vanishes at every even offset >= 4.
  AnalysisParams q;
  q.frame_len = 256;
  const WindowSpectrum wq = window_spectrum(q);
  const double peak = wq.at_offset(0);
  CHECK(peak == doctest::Approx(128.0));
  CHECK(std::abs(wq.at_offset(2)) > 0.1 * peak);
  for (int d = 4; d < 256; d += 2) {
    CHECK(std::abs(wq.at_offset(d)) <= 1e-6 * peak);
    CHECK(std::abs(wq.at_offset(-d)) <= 1e-6 * peak);
  }
}

TEST_CASE("recover_alas_frame: flat unvoiced frame is log of the window sum") {
  const AnalysisParams p;
  const WindowSpectrum w = window_spectrum(p);
  double sum_w = 0.0;
  for (double v : w.centered) sum_w += v;
  const auto alas = recover_alas_frame(make_frame(0.0, std::vector<double>(41, 0.0)), p);
  // Constant S = 1 on the whole circle, so the convolution is sum(W) = FN * w[L/2].
  CHECK(sum_w == doctest::Approx(512.0).epsilon(1e-12));
  for (double v : alas) CHECK(v == doctest::Approx(std::log(sum_w)).epsilon(1e-6));
}

TEST_CASE("recover_alas_frame: voiced flat frame peaks at the harmonics") {
  const AnalysisParams p;
  for (double f0 : {120.0, 200.0, 310.0}) {
    const auto alas = recover_alas_frame(make_frame(f0, std::vector<double>(41, 0.0)), p);
    const int k0 = harmonic_spacing(f0, p);
    for (int k = 2 * k0; k + k0 < 257; k += k0) {
      const auto i = static_cast<std::size_t>(k);
      CHECK(alas[i] > alas[i - 1]);
      CHECK(alas[i] > alas[i + 1]);
      CHECK(alas[i] == doctest::Approx(*std::max_element(alas.begin() + k - k0 / 2, alas.begin() + k + k0 / 2 + 1)));
    }
  }
}

TEST_CASE("recover_alas_frame: scaling V by g shifts ALAS by log g") {
  const AnalysisParams p;
  test::Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    auto cep = test::smooth_mcep(rng, 40);
    const double f0 = rng.uniform(80, 400);
    const double g = rng.uniform(0.1, 10.0);
    const auto base = recover_alas_frame(make_frame(f0, cep), p);
    cep[0] += std::log(g);
    const auto scaled = recover_alas_frame(make_frame(f0, cep), p);
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (base[k] <= std::log(p.log_floor) + 1e-9) continue;
      CHECK(std::abs(scaled[k] - base[k] - std::log(g)) < 1e-9);
    }
  }
}

TEST_CASE("recover_alas_frame: FFT route matches the literal convolution") {
  const AnalysisParams p;
  const WindowSpectrum w = window_spectrum(p);
  test::Rng rng(10);
  for (int t = 0; t < 6; ++t) {
    const double f0 = t % 3 == 0 ? 0.0 : rng.uniform(60, 450);
    const AcousticFrame f = make_frame(f0, test::smooth_mcep(rng, 40));
    const auto fast = recover_alas_frame(f, p);
    const auto slow = reference::recover_alas_frame(f, w, p);
    const double peak = std::exp(*std::max_element(slow.begin(), slow.end()));
    for (std::size_t k = 0; k < fast.size(); ++k)
      CHECK(std::abs(std::exp(fast[k]) - std::exp(slow[k])) <= 1e-10 * peak);
  }
}

TEST_CASE("recover_alas_frame: bounded below and finite") {
  const AnalysisParams p;
  test::Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const double f0 = t % 4 == 0 ? 0.0 : rng.uniform(50, 500);
    const auto alas = recover_alas_frame(make_frame(f0, test::smooth_mcep(rng, 40)), p);
    for (double v : alas) {
      CHECK(std::isfinite(v));
      CHECK(v >= std::log(p.log_floor));
    }
  }
}

TEST_CASE("recover_alas: row mapping and geometry checks") {
  const AnalysisParams p;
  test::Rng rng(13);
  FeatureTrack track;
  for (int n = 0; n < 7; ++n)
    track.frames.push_back(make_frame(n % 3 == 0 ? 0.0 : rng.uniform(80, 300), test::smooth_mcep(rng, 40)));

  FeatureTrack single;
  single.frames = {track.frames[1]};
  const LasMatrix one = recover_alas(single, p);
  REQUIRE(one.rows() == 1);
  const auto direct = recover_alas_frame(track.frames[1], p);
  CHECK(std::equal(direct.begin(), direct.end(), one.row(0).begin()));

  const LasMatrix all = recover_alas(track, p);
  FeatureTrack permuted = track;
  const std::vector<std::size_t> order = {3, 0, 6, 1, 5, 2, 4};
  for (std::size_t i = 0; i < order.size(); ++i) permuted.frames[i] = track.frames[order[i]];
  const LasMatrix shuffled = recover_alas(permuted, p);
  for (std::size_t i = 0; i < order.size(); ++i)
    CHECK(std::equal(shuffled.row(i).begin(), shuffled.row(i).end(), all.row(order[i]).begin()));

  // Bit-identical on repeat.
  CHECK(recover_alas(track, p) == all);

  FeatureTrack wrong_rate = track;
  wrong_rate.sample_rate = 22050;
  CHECK_THROWS_AS(recover_alas(wrong_rate, p), Error);
  CHECK_THROWS_AS(recover_alas(FeatureTrack{}, p), Error);
}

TEST_CASE("recover_alas: synthetic vowel ALAS correlates with natural LAS") {
  const AnalysisParams p;
  const auto u = synthetic::vowel({.f0_start_hz = 130, .f0_end_hz = 220, .vibrato_hz = 4, .vibrato_depth_hz = 5});
  const LasMatrix las = extract_las(u.wave, p);
  const FeatureTrack track = extract_features(u.wave, las, p);
  const LasMatrix alas = recover_alas(track, p);
  double sum = 0.0;
  int count = 0;
  for (std::size_t n = 0; n < las.rows(); ++n) {
    if (!track.frames[n].voiced) continue;
    sum += test::pearson(alas.row(n), las.row(n));
    ++count;
  }
  REQUIRE(count > 0);
  CHECK(sum / count >= 0.8);
}
