#include "alas/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

#include "alas/error.hpp"
#include "binary_io.hpp"

namespace alas {

namespace detail {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path.string());
}

}  // namespace detail

namespace {

constexpr std::uint32_t kFormatVersion = 1;

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw Error(std::string(what) + " does not fit the file header");
  return static_cast<std::uint32_t>(v);
}

FrameGeometry read_geometry(detail::ByteReader& r) {
  const std::uint32_t shift = r.u32("frame shift");
  const std::uint32_t rate = r.u32("sample rate");
  if (shift == 0 || rate == 0 || shift > 1u << 24 || rate > 1u << 24)
    throw FormatError(r.source() + ": invalid frame shift or sample rate in header");
  return {static_cast<int>(shift), static_cast<int>(rate)};
}

void check_payload(const detail::ByteReader& r, std::size_t rows, std::size_t cols) {
  const std::size_t expected = rows * cols * 4;
  if (r.remaining() != expected)
    throw FormatError(r.source() + ": header declares " + std::to_string(rows) + " frames x " +
                      std::to_string(cols) + " values (" + std::to_string(expected) +
                      " bytes) but payload has " + std::to_string(r.remaining()) + " bytes");
}

float finite_f32(detail::ByteReader& r, const char* what) {
  const float v = r.f32(what);
  if (!std::isfinite(v)) throw FormatError(r.source() + ": non-finite " + what + " value");
  return v;
}

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  detail::ByteReader r(detail::read_file(path), path.string());
  if (r.remaining() < 12 || r.tag(4, "RIFF tag") != "RIFF")
    throw FormatError(path.string() + ": not a RIFF file");
  r.u32("RIFF size");
  if (r.tag(4, "WAVE tag") != "WAVE") throw FormatError(path.string() + ": not a WAVE file");

  bool have_fmt = false;
  Waveform wave;
  while (r.remaining() >= 8) {
    const std::string id = r.tag(4, "chunk id");
    const std::uint32_t size = r.u32("chunk size");
    if (id == "fmt ") {
      if (size < 16) throw FormatError(path.string() + ": fmt chunk too short");
      const std::uint16_t format = r.u16("audio format");
      const std::uint16_t channels = r.u16("channel count");
      const std::uint32_t rate = r.u32("sample rate");
      r.u32("byte rate");
      r.u16("block align");
      const std::uint16_t bits = r.u16("bits per sample");
      r.skip(size - 16 + (size & 1u), "fmt chunk");
      if (format != 1)
        throw FormatError(path.string() + ": unsupported encoding (format tag " +
                          std::to_string(format) + "), PCM16 required");
      if (channels != 1)
        throw FormatError(path.string() + ": mono required, file has " +
                          std::to_string(channels) + " channels");
      if (bits != 16)
        throw FormatError(path.string() + ": unsupported encoding (" + std::to_string(bits) +
                          "-bit), PCM16 required");
      if (rate == 0 || rate > 1u << 24) throw FormatError(path.string() + ": invalid sample rate");
      wave.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError(path.string() + ": data chunk before fmt chunk");
      if (size > r.remaining()) throw FormatError(path.string() + ": truncated data chunk");
      if (size % 2 != 0) throw FormatError(path.string() + ": odd PCM16 data size");
      wave.samples.resize(size / 2);
      for (double& s : wave.samples)
        s = static_cast<std::int16_t>(r.u16("sample")) / 32768.0;
      return wave;
    } else {
      r.skip(size + (size & 1u), "chunk");
    }
  }
  throw FormatError(path.string() + (have_fmt ? ": missing data chunk" : ": missing fmt chunk"));
}

void write_wav(const std::filesystem::path& path, const Waveform& wave) {
  if (wave.sample_rate <= 0) throw Error("write_wav: sample rate must be positive");
  const std::uint32_t data_bytes = checked_u32(wave.samples.size() * 2, "sample count");
  detail::ByteWriter w;
  w.reserve(44 + data_bytes);
  w.magic("RIFF");
  w.u32(36 + data_bytes);
  w.magic("WAVE");
  w.magic("fmt ");
  w.u32(16);
  w.u16(1);
  w.u16(1);
  w.u32(static_cast<std::uint32_t>(wave.sample_rate));
  w.u32(static_cast<std::uint32_t>(wave.sample_rate) * 2);
  w.u16(2);
  w.u16(16);
  w.magic("data");
  w.u32(data_bytes);
  for (double s : wave.samples) {
    if (!std::isfinite(s)) throw Error("write_wav: non-finite sample");
    const double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    w.u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  detail::write_file(path, w.bytes());
}

void write_features(const std::filesystem::path& path, const FeatureTrack& track) {
  if (track.frame_shift <= 0 || track.sample_rate <= 0)
    throw Error("write_features: invalid track geometry");
  detail::ByteWriter w;
  w.magic("AFTK");
  w.u32(kFormatVersion);
  w.u32(checked_u32(track.frames.size(), "frame count"));
  w.u32(kFeatureDims);
  w.u32(static_cast<std::uint32_t>(track.frame_shift));
  w.u32(static_cast<std::uint32_t>(track.sample_rate));
  for (std::size_t n = 0; n < track.frames.size(); ++n) {
    const AcousticFrame& f = track.frames[n];
    if (f.mcep.size() != static_cast<std::size_t>(kFeatureDims - 3))
      throw Error("write_features: frame " + std::to_string(n) + " has " +
                  std::to_string(f.mcep.size()) + " mel-cepstra, format requires " +
                  std::to_string(kFeatureDims - 3));
    if ((f.f0 > 0.0) != f.voiced)
      throw Error("write_features: frame " + std::to_string(n) +
                  " violates f0 == 0 <=> unvoiced");
    w.f32(static_cast<float>(f.f0));
    w.f32(f.voiced ? 1.0f : 0.0f);
    w.f32(static_cast<float>(f.energy));
    for (double c : f.mcep) w.f32(static_cast<float>(c));
  }
  detail::write_file(path, w.bytes());
}

FeatureTrack read_features(const std::filesystem::path& path) {
  detail::ByteReader r(detail::read_file(path), path.string());
  r.expect_magic("AFTK");
  const std::uint32_t version = r.u32("version");
  if (version != kFormatVersion)
    throw FormatError(path.string() + ": unsupported AFTK version " + std::to_string(version));
  const std::uint32_t n_frames = r.u32("frame count");
  const std::uint32_t dims = r.u32("dims");
  if (dims != static_cast<std::uint32_t>(kFeatureDims))
    throw FormatError(path.string() + ": dims is " + std::to_string(dims) + ", expected " +
                      std::to_string(kFeatureDims));
  const FrameGeometry geom = read_geometry(r);
  check_payload(r, n_frames, dims);

  FeatureTrack track;
  track.frame_shift = geom.frame_shift;
  track.sample_rate = geom.sample_rate;
  track.frames.resize(n_frames);
  for (std::size_t n = 0; n < n_frames; ++n) {
    AcousticFrame& f = track.frames[n];
    f.f0 = finite_f32(r, "f0");
    const float vuv = finite_f32(r, "vuv");
    if (vuv != 0.0f && vuv != 1.0f)
      throw FormatError(path.string() + ": vuv flag must be 0 or 1 at frame " + std::to_string(n));
    f.voiced = vuv == 1.0f;
    if ((f.f0 > 0.0) != f.voiced || f.f0 < 0.0)
      throw FormatError(path.string() + ": frame " + std::to_string(n) +
                        " violates f0 == 0 <=> unvoiced");
    f.energy = finite_f32(r, "energy");
    f.mcep.resize(static_cast<std::size_t>(kFeatureDims - 3));
    for (double& c : f.mcep) c = finite_f32(r, "mcep");
  }
  return track;
}

void write_las(const std::filesystem::path& path, const LasMatrix& las, FrameGeometry geometry) {
  if (geometry.frame_shift <= 0 || geometry.sample_rate <= 0)
    throw Error("write_las: invalid geometry");
  detail::ByteWriter w;
  w.reserve(24 + las.data().size() * 4);
  w.magic("LASK");
  w.u32(kFormatVersion);
  w.u32(checked_u32(las.rows(), "frame count"));
  w.u32(checked_u32(las.cols(), "bin count"));
  w.u32(static_cast<std::uint32_t>(geometry.frame_shift));
  w.u32(static_cast<std::uint32_t>(geometry.sample_rate));
  for (double v : las.data()) {
    if (!std::isfinite(v)) throw Error("write_las: non-finite value");
    w.f32(static_cast<float>(v));
  }
  detail::write_file(path, w.bytes());
}

LasFile read_las(const std::filesystem::path& path) {
  detail::ByteReader r(detail::read_file(path), path.string());
  r.expect_magic("LASK");
  const std::uint32_t version = r.u32("version");
  if (version != kFormatVersion)
    throw FormatError(path.string() + ": unsupported LASK version " + std::to_string(version));
  const std::uint32_t n_frames = r.u32("frame count");
  const std::uint32_t n_bins = r.u32("bin count");
  if (n_bins == 0) throw FormatError(path.string() + ": zero bins");
  LasFile file;
  file.geometry = read_geometry(r);
  check_payload(r, n_frames, n_bins);
  file.las = LasMatrix(n_frames, n_bins);
  for (double& v : file.las.data()) v = finite_f32(r, "LAS");
  return file;
}

void emit_spectrogram_image(const LasMatrix& las, const std::filesystem::path& path) {
  if (las.empty()) throw Error("emit_spectrogram_image: empty matrix");
  const auto [lo_it, hi_it] = std::minmax_element(las.data().begin(), las.data().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  const std::size_t width = las.rows();
  const std::size_t height = las.cols();

  std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t bin = height - 1 - y;
    for (std::size_t x = 0; x < width; ++x) {
      const double norm = range > 0.0 ? (las(x, bin) - lo) / range : 0.5;
      bytes.push_back(static_cast<std::uint8_t>(std::lround(norm * 255.0)));
    }
  }
  detail::write_file(path, bytes);
}

GrayImage read_pgm(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = detail::read_file(path);
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
    if (t.empty()) throw FormatError(path.string() + ": truncated PGM header");
    return t;
  };
  if (token() != "P5") throw FormatError(path.string() + ": bad magic, expected \"P5\"");
  GrayImage img;
  try {
    img.width = std::stoi(token());
    img.height = std::stoi(token());
    if (std::stoi(token()) != 255) throw FormatError(path.string() + ": maxval must be 255");
  } catch (const std::logic_error&) {
    throw FormatError(path.string() + ": malformed PGM header");
  }
  ++pos;  // single whitespace after maxval
  const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (img.width <= 0 || img.height <= 0 || bytes.size() - std::min(pos, bytes.size()) != n)
    throw FormatError(path.string() + ": PGM payload size mismatch");
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

std::vector<std::pair<std::filesystem::path, std::filesystem::path>> read_pair_manifest(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const bool blank = std::all_of(line.begin(), line.end(),
                                   [](unsigned char c) { return std::isspace(c) != 0; });
    if (blank || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected \"<alas path><TAB><las path>\"");
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  if (pairs.empty()) throw FormatError(path.string() + ": manifest lists no pairs");
  return pairs;
}

}  // namespace alas
