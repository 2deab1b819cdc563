#include "polchange/detector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "polchange/error.hpp"

namespace polchange {

CovRaster::CovRaster(std::size_t rows, std::size_t cols, double nominal_looks,
                     std::vector<HermitianMatrix> pixels)
    : rows_(rows), cols_(cols), nominal_looks_(nominal_looks), pixels_(std::move(pixels)) {
  if (rows_ == 0 || cols_ == 0) fail(ErrorCode::InvalidArgument, "raster must be nonempty");
  if (pixels_.size() != rows_ * cols_) {
    fail(ErrorCode::DimensionMismatch, "raster has " + std::to_string(pixels_.size()) +
                                           " pixels, expected " + std::to_string(rows_ * cols_));
  }
  const std::size_t p = pixels_.front().dim();
  for (const auto& m : pixels_) {
    if (m.dim() != p) fail(ErrorCode::DimensionMismatch, "raster pixels differ in dimension");
  }
  if (!(nominal_looks_ > static_cast<double>(p) - 1.0)) {
    fail(ErrorCode::DomainError, "nominal looks must exceed p - 1");
  }
}

std::size_t ChangeMask::count() const {
  return static_cast<std::size_t>(std::count_if(change.begin(), change.end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

ChangeMask ChangeMask::transposed() const {
  ChangeMask t{cols, rows, std::vector<std::uint8_t>(change.size())};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) t.change[c * rows + r] = change[r * cols + c];
  }
  return t;
}

namespace {

MatrixSample window_sample(const CovRaster& raster, std::size_t r, std::size_t c,
                           std::size_t half) {
  std::vector<HermitianMatrix> obs;
  obs.reserve((2 * half + 1) * (2 * half + 1));
  for (std::size_t i = r - half; i <= r + half; ++i) {
    for (std::size_t j = c - half; j <= c + half; ++j) obs.push_back(raster.at(i, j));
  }
  return MatrixSample(std::move(obs));
}

}  // namespace

PValueMap detect(const CovRaster& before, const CovRaster& after, const DetectOptions& options) {
  if (before.rows() != after.rows() || before.cols() != after.cols() ||
      before.dim() != after.dim()) {
    fail(ErrorCode::GeometryMismatch, "rasters differ in geometry: " +
                                          std::to_string(before.rows()) + "x" +
                                          std::to_string(before.cols()) + " vs " +
                                          std::to_string(after.rows()) + "x" +
                                          std::to_string(after.cols()));
  }
  if (options.window % 2 == 0 || options.window * options.window < 2) {
    fail(ErrorCode::InvalidArgument, "window must be odd with at least two pixels");
  }
  if (!(options.border_value >= 0.0 && options.border_value <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "border value must lie in [0, 1]");
  }

  TestOptions test;
  test.looks = options.looks.value_or(LooksMode::known(before.nominal_looks()));
  test.renyi_beta = options.renyi_beta;
  test.kl_normalization = options.kl_normalization;
  test.convention = options.convention;

  const std::size_t half = options.window / 2;
  PValueMap map;
  map.rows = before.rows();
  map.cols = before.cols();
  map.border = half;
  map.border_value = options.border_value;
  map.values.assign(map.rows * map.cols, options.border_value);
  if (map.rows <= 2 * half || map.cols <= 2 * half) return map;

  std::atomic<std::size_t> failures{0};
  const std::size_t inner_rows = map.rows - 2 * half;
  detail::parallel_for(inner_rows, options.threads, [&](std::size_t k) {
    const std::size_t r = k + half;
    for (std::size_t c = half; c + half < map.cols; ++c) {
      double pv = 1.0;
      try {
        pv = run_test(options.method, window_sample(before, r, c, half),
                      window_sample(after, r, c, half), test)
                 .p_value;
      } catch (const Error&) {
        failures.fetch_add(1, std::memory_order_relaxed);
      }
      map.values[r * map.cols + c] = pv;
    }
  });
  map.failed_windows = failures.load();
  return map;
}

ChangeMask threshold(const PValueMap& map, double cut) {
  if (!(cut > 0.0 && cut <= 1.0)) fail(ErrorCode::InvalidArgument, "cut must lie in (0, 1]");
  ChangeMask mask{map.rows, map.cols, std::vector<std::uint8_t>(map.values.size())};
  for (std::size_t i = 0; i < map.values.size(); ++i) mask.change[i] = map.values[i] <= cut;
  return mask;
}

DetectionMetrics score(const ChangeMask& mask, const ChangeMask& reference, bool paper_literal) {
  if (mask.rows != reference.rows || mask.cols != reference.cols ||
      mask.change.size() != reference.change.size()) {
    fail(ErrorCode::GeometryMismatch, "mask and reference differ in geometry");
  }
  DetectionMetrics m;
  m.paper_literal = paper_literal;
  for (std::size_t i = 0; i < mask.change.size(); ++i) {
    const bool said = mask.change[i] != 0;
    const bool truth = reference.change[i] != 0;
    if (said && truth) ++m.tp;
    else if (!said && !truth) ++m.tn;
    else if (said) ++m.fp;
    else ++m.fn;
  }
  const std::size_t detector_changed = m.tp + m.fp;
  const std::size_t detector_unchanged = m.tn + m.fn;
  if (paper_literal) std::swap(m.fp, m.fn);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.fa_defined = detector_unchanged > 0;
  m.fa = m.fa_defined ? static_cast<double>(m.fp + m.fn) / static_cast<double>(detector_unchanged)
                      : nan;
  m.dr_defined = detector_changed > 0;
  m.dr = m.dr_defined ? static_cast<double>(m.tp) / static_cast<double>(detector_changed) : nan;

  const double total = static_cast<double>(m.total());
  const double ptp = m.tp / total;
  const double ptn = m.tn / total;
  const double pfp = m.fp / total;
  const double pfn = m.fn / total;
  const double a = 1.0 - pfp - pfn;
  const double b = (ptp + pfp) * (ptp + pfn) + (ptn + pfp) * (ptn + pfn);
  m.kappa_defined = b < 1.0;
  m.kappa = m.kappa_defined ? (a - b) / (1.0 - b) : nan;
  return m;
}

std::vector<std::uint8_t> quantize(const PValueMap& map, double cut, double floor) {
  if (!(cut > 0.0 && cut <= 1.0) || !(floor > 0.0 && floor < cut)) {
    fail(ErrorCode::InvalidArgument, "quantize needs 0 < floor < cut <= 1");
  }
  const double span = std::log10(cut / floor);
  std::vector<std::uint8_t> levels(map.values.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double pv = map.values[i];
    if (pv > cut) {
      levels[i] = 0;
      continue;
    }
    const double t = pv <= floor ? 1.0 : std::log10(cut / pv) / span;
    levels[i] = static_cast<std::uint8_t>(1 + std::lround(std::clamp(t, 0.0, 1.0) * 254.0));
  }
  return levels;
}

Rgb ramp_colour(std::uint8_t level) {
  if (level == 0) return {0, 0, 0};
  const double t = (level - 1) / 254.0;
  // Red (255, 0, 0) to dark blue (0, 0, 139).
  return {static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - t))), 0,
          static_cast<std::uint8_t>(std::lround(139.0 * t))};
}

SyntheticScene make_half_changed_scene(const WishartParams& theta, std::size_t rows,
                                       std::size_t cols, double contrast, RngSeed seed) {
  if (rows == 0 || cols == 0) fail(ErrorCode::InvalidArgument, "scene must be nonempty");
  if (!(contrast > 0.0)) fail(ErrorCode::InvalidArgument, "contrast must be positive");
  const std::size_t n = rows * cols;
  const MatrixSample first = sample(theta, n, derive(seed, 0));
  const MatrixSample second = sample(theta, n, derive(seed, 1));
  std::vector<HermitianMatrix> before(first.observations().begin(), first.observations().end());
  std::vector<HermitianMatrix> after;
  after.reserve(n);
  ChangeMask reference{rows, cols, std::vector<std::uint8_t>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const bool changed = k % cols >= cols / 2;
    after.push_back(changed ? second[k].scaled(contrast) : second[k]);
    reference.change[k] = changed && contrast != 1.0;
  }
  return SyntheticScene{CovRaster(rows, cols, theta.looks(), std::move(before)),
                        CovRaster(rows, cols, theta.looks(), std::move(after)),
                        std::move(reference)};
}

}  // namespace polchange
