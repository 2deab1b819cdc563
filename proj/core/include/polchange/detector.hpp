#pragma once

// Sliding-window change detection between two co-registered covariance
// rasters, thresholding, and agreement metrics against a reference mask.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polchange/hypotests.hpp"

namespace polchange {

// Row-major grid of p x p covariance matrices.
class CovRaster {
 public:
  CovRaster(std::size_t rows, std::size_t cols, double nominal_looks,
            std::vector<HermitianMatrix> pixels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t dim() const noexcept { return pixels_.front().dim(); }
  double nominal_looks() const noexcept { return nominal_looks_; }
  const HermitianMatrix& at(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }
  const std::vector<HermitianMatrix>& pixels() const noexcept { return pixels_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  double nominal_looks_;
  std::vector<HermitianMatrix> pixels_;
};

struct PValueMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major, each in [0, 1]
  // Frame of width `border` carries `border_value`.
  std::size_t border = 0;
  double border_value = 1.0;
  // Windows whose estimation or test failed; stored as p-value 1.
  std::size_t failed_windows = 0;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct ChangeMask {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> change;  // 1 = change

  bool at(std::size_t r, std::size_t c) const { return change[r * cols + c] != 0; }
  std::size_t count() const;
  ChangeMask transposed() const;
};

struct DetectOptions {
  Method method = Method::LR;
  std::size_t window = 3;
  // Unset: known looks equal to the nominal looks of the first raster.
  std::optional<LooksMode> looks;
  double renyi_beta = kDefaultRenyiOrder;
  double kl_normalization = 1.0;
  KroneckerConvention convention = KroneckerConvention::Transposed;
  double border_value = 1.0;
  unsigned threads = 0;
};

inline constexpr double kDefaultChangeThreshold = 1e-4;

// Per-pixel p-values of the chosen test between the w x w windows of the two
// dates. Throws GeometryMismatch when the rasters differ in shape or p,
// InvalidArgument for an even window or one with fewer than two pixels.
PValueMap detect(const CovRaster& before, const CovRaster& after, const DetectOptions& options);

// change iff p-value <= cut; cut in (0, 1].
ChangeMask threshold(const PValueMap& map, double cut = kDefaultChangeThreshold);

struct DetectionMetrics {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  // FA = (FP + FN) / pixels the detector calls unchanged.
  double fa = 0.0;
  // DR = TP / pixels the detector calls changed.
  double dr = 0.0;
  double kappa = 0.0;
  // False when the denominator was zero; the metric is then NaN.
  bool fa_defined = true;
  bool dr_defined = true;
  bool kappa_defined = true;
  bool paper_literal = false;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
};

// Conventional reading: FP = detector change where the reference has none.
// paper_literal swaps the FP and FN labels.
DetectionMetrics score(const ChangeMask& mask, const ChangeMask& reference,
                       bool paper_literal = false);

// 256-level rendering. Level 0 (black) for p > cut; p <= cut maps to levels
// 1..255 on a log scale from cut down to `floor`.
std::vector<std::uint8_t> quantize(const PValueMap& map, double cut = kDefaultChangeThreshold,
                                   double floor = 1e-20);

struct Rgb {
  std::uint8_t r, g, b;
};

// Colour of a quantized level: black at 0, red at 1 through dark blue at 255.
Rgb ramp_colour(std::uint8_t level);

// Co-registered pair from theta where the after-image columns c >= cols/2
// are scaled by `contrast` (distributed as W(contrast Sigma, L)). The
// reference marks those columns as change when contrast != 1.
struct SyntheticScene {
  CovRaster before;
  CovRaster after;
  ChangeMask reference;
};
SyntheticScene make_half_changed_scene(const WishartParams& theta, std::size_t rows,
                                       std::size_t cols, double contrast, RngSeed seed);

}  // namespace polchange
