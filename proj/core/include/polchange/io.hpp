#pragma once

// File formats: PCMR v1 covariance rasters, PVM v1 p-value maps, PGM/PNG
// renderings and masks, `.wsample.json` samples, JSON configs and results.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polchange/detector.hpp"
#include "polchange/experiments.hpp"

namespace polchange {

inline constexpr std::uint16_t kPcmrVersion = 1;
inline constexpr std::uint16_t kPvmVersion = 1;
inline constexpr std::size_t kPcmrHeaderBytes = 24;
inline constexpr std::size_t kPvmHeaderBytes = 24;

// PCMR v1: "PCMR", u16 version, u32 rows, u32 cols, u16 p, f64 nominal looks,
// then rows*cols*p*p complex128 (re, im) little-endian, pixels and matrix
// entries row-major. Pixels pass the ingest symmetrization rule;
// NonHermitianPixel names the first offending (row, col).
CovRaster read_raster(std::istream& in);
CovRaster read_raster(const std::filesystem::path& path);
void write_raster(const CovRaster& raster, std::ostream& out);
void write_raster(const CovRaster& raster, const std::filesystem::path& path);

// PVM v1: "PVM1", u32 rows, u32 cols, 4 zero bytes, u64 reserved (offset 16),
// then rows*cols f64 LE.
PValueMap read_pvm(std::istream& in);
PValueMap read_pvm(const std::filesystem::path& path);
void write_pvm(const PValueMap& map, std::ostream& out);
void write_pvm(const PValueMap& map, const std::filesystem::path& path);

// Binary 8-bit PGM (P5). Reading also accepts ASCII P2 with maxval <= 255.
struct GrayImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> pixels;
};
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

// Masks as PGM: 0 = no change, 255 = change; any nonzero reads as change.
ChangeMask read_mask(const std::filesystem::path& path);
void write_mask(const ChangeMask& mask, const std::filesystem::path& path);

// True when the library was built with libpng.
bool png_supported() noexcept;
// 8-bit RGB PNG. Throws IoError when PNG support is absent.
void write_png_rgb(std::size_t rows, std::size_t cols, const std::vector<Rgb>& pixels,
                   const std::filesystem::path& path);

// Renders a p-value map: grey levels of quantize() for .pgm, the colour ramp
// for .png.
void render_pvalue_map(const PValueMap& map, const std::filesystem::path& path,
                       double cut = kDefaultChangeThreshold);

// `.wsample.json`: {"p": 3, "looks": 4, "matrices": [[[re, im], ...], ...]}
// with each matrix given as p*p row-major [re, im] pairs. "looks" is optional.
struct SampleFile {
  MatrixSample sample;
  std::optional<double> looks;
};
SampleFile parse_sample_json(const std::string& text);
std::string sample_to_json(const MatrixSample& sample, std::optional<double> looks);

// A sample from either format: `.json` files are parsed as wsample, anything
// else as PCMR with all pixels taken in row-major order and the header looks
// as the hint.
SampleFile read_sample(const std::filesystem::path& path);
void write_sample(const SampleFile& file, const std::filesystem::path& path);

// Named parameter presets; currently "flevoland-b1" (L = 4).
WishartParams preset(const std::string& name);

// Experiment configs in snake_case JSON. Common keys: methods, replications,
// seed, threads, looks_mode ("fixed:L" | "estimate"), renyi_beta,
// kl_normalization, kronecker ("transposed" | "literal"). Size and power
// configs take theta as {"preset": name} or {"sigma": [[re, im], ...],
// "looks": L} (default flevoland-b1); their looks_mode defaults to the true
// L. Unknown keys are rejected.
SizeExperimentConfig parse_size_config(const std::string& text);
PowerExperimentConfig parse_power_config(const std::string& text);
SameTargetConfig parse_same_target_config(const std::string& text);

// Parses "fixed:L" or "estimate".
LooksMode parse_looks_mode(const std::string& text);

std::string to_json(const TestResult& result);
std::string to_json(const MLEstimate& estimate);
std::string to_json(const DetectionMetrics& metrics);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace polchange
