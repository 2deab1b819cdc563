#include "polchange/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "polchange/error.hpp"

#ifdef POLCHANGE_HAVE_PNG
#include <png.h>
#endif

namespace polchange {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Little-endian byte packing.

class ByteWriter {
 public:
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char* s, std::size_t n) { bytes_.insert(bytes_.end(), s, s + n); }
  const std::vector<char>& bytes() const noexcept { return bytes_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::vector<char> bytes_;
};

class ByteReader {
 public:
  ByteReader(const char* data, std::size_t size) : data_(data), size_(size) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }

 private:
  std::uint64_t get(int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  const char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::vector<char> slurp(std::istream& in) {
  return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ostream& out, const std::string& what) {
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failed: " + what);
}

void check_size(std::size_t expected, std::size_t actual, const char* what) {
  if (actual < expected) {
    fail(ErrorCode::TruncatedPayload, std::string(what) + " truncated: expected " +
                                          std::to_string(expected) + " bytes, got " +
                                          std::to_string(actual));
  }
}

// ---------------------------------------------------------------------------
// JSON helpers.

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return entries;
}

HermitianMatrix matrix_from_json(const json& entries, std::size_t p) {
  if (!entries.is_array() || entries.size() != p * p) {
    fail(ErrorCode::InvalidArgument, "matrix must have p*p = " + std::to_string(p * p) +
                                         " [re, im] entries");
  }
  ComplexMatrix m(p, p);
  for (std::size_t k = 0; k < p * p; ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      fail(ErrorCode::InvalidArgument, "matrix entry must be [re, im]");
    }
    m(k / p, k % p) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return HermitianMatrix::ingest(m);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("invalid JSON: ") + e.what());
  }
}

// Maps nlohmann type/key errors onto InvalidArgument.
template <typename Fn>
auto with_json_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("invalid JSON content: ") + e.what());
  }
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::InvalidArgument, std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(ErrorCode::InvalidArgument, "config must be a JSON object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(ErrorCode::InvalidArgument, "unknown config key '" + item.key() + "'");
  }
}

WishartParams theta_from_json(const json& obj) {
  if (!obj.contains("theta")) return preset("flevoland-b1");
  const json& t = obj.at("theta");
  reject_unknown_keys(t, {"preset", "sigma", "looks"});
  if (t.contains("preset")) {
    if (t.contains("sigma")) fail(ErrorCode::InvalidArgument, "theta: give preset or sigma, not both");
    WishartParams base = preset(t.at("preset").get<std::string>());
    if (t.contains("looks")) return WishartParams(base.sigma(), t.at("looks").get<double>());
    return base;
  }
  if (!t.contains("sigma") || !t.contains("looks")) {
    fail(ErrorCode::InvalidArgument, "theta needs preset, or sigma and looks");
  }
  const json& s = t.at("sigma");
  const auto p = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(s.size()))));
  return WishartParams(matrix_from_json(s, p), t.at("looks").get<double>());
}

std::vector<Method> methods_from_json(const json& obj) {
  if (!obj.contains("methods")) return HarnessOptions{}.methods;
  std::vector<Method> out;
  for (const auto& m : obj.at("methods")) {
    const auto parsed = parse_method(m.get<std::string>());
    if (!parsed) fail(ErrorCode::InvalidArgument, "unknown method '" + m.get<std::string>() + "'");
    out.push_back(*parsed);
  }
  return out;
}

HarnessOptions harness_from_json(const json& obj, LooksMode default_looks) {
  HarnessOptions h;
  h.methods = methods_from_json(obj);
  h.replications = get_or<std::size_t>(obj, "replications", kDefaultReplications);
  h.seed = RngSeed{get_or<std::uint64_t>(obj, "seed", 42)};
  h.threads = get_or<unsigned>(obj, "threads", 0);
  h.test.looks = obj.contains("looks_mode")
                     ? parse_looks_mode(obj.at("looks_mode").get<std::string>())
                     : default_looks;
  h.test.renyi_beta = get_or<double>(obj, "renyi_beta", kDefaultRenyiOrder);
  h.test.kl_normalization = get_or<double>(obj, "kl_normalization", 1.0);
  const auto conv = get_or<std::string>(obj, "kronecker", "transposed");
  if (conv == "transposed") h.test.convention = KroneckerConvention::Transposed;
  else if (conv == "literal") h.test.convention = KroneckerConvention::Literal;
  else fail(ErrorCode::InvalidArgument, "kronecker must be 'transposed' or 'literal'");
  return h;
}

json looks_mode_json(const LooksMode& mode) {
  if (mode.is_known()) return {{"kind", "known"}, {"looks", mode.value()}};
  return {{"kind", "estimated"}};
}

#ifdef POLCHANGE_HAVE_PNG
struct PngWriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteGuard() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};
#endif

}  // namespace

// ---------------------------------------------------------------------------
// PCMR

CovRaster read_raster(std::istream& in) {
  const std::vector<char> bytes = slurp(in);
  check_size(kPcmrHeaderBytes, bytes.size(), "PCMR header");
  if (std::memcmp(bytes.data(), "PCMR", 4) != 0) fail(ErrorCode::BadMagic, "not a PCMR file");
  ByteReader r(bytes.data() + 4, bytes.size() - 4);
  const std::uint16_t version = r.u16();
  if (version != kPcmrVersion) {
    fail(ErrorCode::BadMagic, "unsupported PCMR version " + std::to_string(version));
  }
  const std::size_t rows = r.u32();
  const std::size_t cols = r.u32();
  const std::size_t p = r.u16();
  const double looks = r.f64();
  if (rows == 0 || cols == 0 || p == 0) fail(ErrorCode::BadMagic, "PCMR header has a zero extent");

  const std::size_t expected = kPcmrHeaderBytes + rows * cols * p * p * 16;
  check_size(expected, bytes.size(), "PCMR payload");

  ByteReader payload(bytes.data() + kPcmrHeaderBytes, expected - kPcmrHeaderBytes);
  std::vector<HermitianMatrix> pixels;
  pixels.reserve(rows * cols);
  ComplexMatrix m(p, p);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        const double re = payload.f64();
        const double im = payload.f64();
        m(i, j) = Complex(re, im);
      }
    }
    try {
      pixels.push_back(HermitianMatrix::ingest(m));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotHermitian) throw;
      fail(ErrorCode::NonHermitianPixel, "pixel (" + std::to_string(k / cols) + ", " +
                                             std::to_string(k % cols) + ") " + e.what());
    }
  }
  return CovRaster(rows, cols, looks, std::move(pixels));
}

CovRaster read_raster(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_raster(in);
}

void write_raster(const CovRaster& raster, std::ostream& out) {
  const std::size_t p = raster.dim();
  if (raster.rows() > std::numeric_limits<std::uint32_t>::max() ||
      raster.cols() > std::numeric_limits<std::uint32_t>::max() ||
      p > std::numeric_limits<std::uint16_t>::max()) {
    fail(ErrorCode::InvalidArgument, "raster too large for PCMR v1");
  }
  ByteWriter w;
  w.raw("PCMR", 4);
  w.u16(kPcmrVersion);
  w.u32(static_cast<std::uint32_t>(raster.rows()));
  w.u32(static_cast<std::uint32_t>(raster.cols()));
  w.u16(static_cast<std::uint16_t>(p));
  w.f64(raster.nominal_looks());
  for (const auto& px : raster.pixels()) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        w.f64(px(i, j).real());
        w.f64(px(i, j).imag());
      }
    }
  }
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  finish_write(out, "PCMR raster");
}

void write_raster(const CovRaster& raster, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_raster(raster, out);
}

// ---------------------------------------------------------------------------
// PVM

PValueMap read_pvm(std::istream& in) {
  const std::vector<char> bytes = slurp(in);
  check_size(kPvmHeaderBytes, bytes.size(), "PVM header");
  if (std::memcmp(bytes.data(), "PVM1", 4) != 0) fail(ErrorCode::BadMagic, "not a PVM1 file");
  ByteReader r(bytes.data() + 4, bytes.size() - 4);
  PValueMap map;
  map.rows = r.u32();
  map.cols = r.u32();
  r.u32();  // padding
  r.u64();
  const std::size_t expected = kPvmHeaderBytes + map.rows * map.cols * 8;
  check_size(expected, bytes.size(), "PVM payload");
  ByteReader payload(bytes.data() + kPvmHeaderBytes, expected - kPvmHeaderBytes);
  map.values.resize(map.rows * map.cols);
  for (auto& v : map.values) v = payload.f64();
  return map;
}

PValueMap read_pvm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pvm(in);
}

void write_pvm(const PValueMap& map, std::ostream& out) {
  ByteWriter w;
  w.raw("PVM1", 4);
  w.u32(static_cast<std::uint32_t>(map.rows));
  w.u32(static_cast<std::uint32_t>(map.cols));
  w.u32(0);  // pads the reserved word to offset 16
  w.u64(0);
  for (double v : map.values) w.f64(v);
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  finish_write(out, "PVM map");
}

void write_pvm(const PValueMap& map, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_pvm(map, out);
}

// ---------------------------------------------------------------------------
// PGM / PNG

GrayImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") fail(ErrorCode::BadMagic, path.string() + " is not a PGM");
  auto next_int = [&]() -> long {
    for (;;) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string comment;
        std::getline(in, comment);
        continue;
      }
      long v = -1;
      if (!(in >> v)) fail(ErrorCode::TruncatedPayload, "PGM header truncated");
      return v;
    }
  };
  const long cols = next_int();
  const long rows = next_int();
  const long maxval = next_int();
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255) {
    fail(ErrorCode::BadMagic, "unsupported PGM geometry or maxval");
  }
  GrayImage img{static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), {}};
  img.pixels.resize(img.rows * img.cols);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    check_size(img.pixels.size(), static_cast<std::size_t>(in.gcount()), "PGM payload");
  } else {
    for (auto& px : img.pixels) px = static_cast<std::uint8_t>(next_int());
  }
  return img;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "P5\n" << image.cols << ' ' << image.rows << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  finish_write(out, path.string());
}

ChangeMask read_mask(const std::filesystem::path& path) {
  GrayImage img = read_pgm(path);
  ChangeMask mask{img.rows, img.cols, std::vector<std::uint8_t>(img.pixels.size())};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) mask.change[i] = img.pixels[i] != 0;
  return mask;
}

void write_mask(const ChangeMask& mask, const std::filesystem::path& path) {
  GrayImage img{mask.rows, mask.cols, std::vector<std::uint8_t>(mask.change.size())};
  for (std::size_t i = 0; i < mask.change.size(); ++i) img.pixels[i] = mask.change[i] ? 255 : 0;
  write_pgm(img, path);
}

bool png_supported() noexcept {
#ifdef POLCHANGE_HAVE_PNG
  return true;
#else
  return false;
#endif
}

void write_png_rgb(std::size_t rows, std::size_t cols, const std::vector<Rgb>& pixels,
                   const std::filesystem::path& path) {
#ifdef POLCHANGE_HAVE_PNG
  if (pixels.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "PNG pixel count mismatch");
  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  std::vector<png_byte> row(cols * 3);
  bool ok = false;
  {
    PngWriteGuard g;
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (g.png) g.info = png_create_info_struct(g.png);
    if (g.png && g.info && setjmp(png_jmpbuf(g.png)) == 0) {
      png_init_io(g.png, fp);
      png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows),
                   8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                   PNG_FILTER_TYPE_DEFAULT);
      png_write_info(g.png, g.info);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          const Rgb& px = pixels[r * cols + c];
          row[3 * c] = px.r;
          row[3 * c + 1] = px.g;
          row[3 * c + 2] = px.b;
        }
        png_write_row(g.png, row.data());
      }
      png_write_end(g.png, nullptr);
      ok = true;
    }
  }
  std::fclose(fp);
  if (!ok) fail(ErrorCode::IoError, "libpng failed writing " + path.string());
#else
  (void)rows;
  (void)cols;
  (void)pixels;
  fail(ErrorCode::IoError, "built without PNG support; cannot write " + path.string());
#endif
}

void render_pvalue_map(const PValueMap& map, const std::filesystem::path& path, double cut) {
  const std::vector<std::uint8_t> levels = quantize(map, cut);
  if (path.extension() == ".png") {
    std::vector<Rgb> rgb(levels.size());
    std::transform(levels.begin(), levels.end(), rgb.begin(), ramp_colour);
    write_png_rgb(map.rows, map.cols, rgb, path);
    return;
  }
  write_pgm(GrayImage{map.rows, map.cols, levels}, path);
}

// ---------------------------------------------------------------------------
// Samples

SampleFile parse_sample_json(const std::string& text) {
  return with_json_errors([&] {
    const json doc = parse_json(text);
    reject_unknown_keys(doc, {"p", "looks", "matrices"});
    if (!doc.contains("p") || !doc.contains("matrices")) {
      fail(ErrorCode::InvalidArgument, "sample JSON needs 'p' and 'matrices'");
    }
    const auto p = doc.at("p").get<std::size_t>();
    if (p == 0) fail(ErrorCode::InvalidArgument, "sample JSON: p must be positive");
    std::vector<HermitianMatrix> obs;
    for (const auto& m : doc.at("matrices")) obs.push_back(matrix_from_json(m, p));
    if (obs.empty()) fail(ErrorCode::EmptySample, "sample JSON has no matrices");
    std::optional<double> looks;
    if (doc.contains("looks") && !doc.at("looks").is_null()) looks = doc.at("looks").get<double>();
    return SampleFile{MatrixSample(std::move(obs)), looks};
  });
}

std::string sample_to_json(const MatrixSample& sample, std::optional<double> looks) {
  json doc;
  doc["p"] = sample.dim();
  if (looks) doc["looks"] = *looks;
  json mats = json::array();
  for (const auto& z : sample.observations()) mats.push_back(matrix_to_json(z.matrix()));
  doc["matrices"] = std::move(mats);
  return doc.dump(1);
}

SampleFile read_sample(const std::filesystem::path& path) {
  if (path.extension() == ".json") return parse_sample_json(read_text_file(path));
  const CovRaster raster = read_raster(path);
  return SampleFile{MatrixSample(raster.pixels()), raster.nominal_looks()};
}

void write_sample(const SampleFile& file, const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    write_text_file(path, sample_to_json(file.sample, file.looks) + "\n");
    return;
  }
  const auto& obs = file.sample.observations();
  write_raster(CovRaster(1, obs.size(), file.looks.value_or(static_cast<double>(file.sample.dim())),
                         std::vector<HermitianMatrix>(obs.begin(), obs.end())),
               path);
}

WishartParams preset(const std::string& name) {
  if (name == "flevoland-b1") return WishartParams(flevoland_b1(), 4.0);
  fail(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Configs

LooksMode parse_looks_mode(const std::string& text) {
  if (text == "estimate" || text == "estimated") return LooksMode::estimated();
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string value = text.substr(prefix.size());
    std::size_t used = 0;
    double looks = 0.0;
    try {
      looks = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !(looks > 0.0)) {
      fail(ErrorCode::InvalidArgument, "bad looks value in '" + text + "'");
    }
    return LooksMode::known(looks);
  }
  fail(ErrorCode::InvalidArgument, "looks mode must be 'fixed:L' or 'estimate', got '" + text + "'");
}

SizeExperimentConfig parse_size_config(const std::string& text) {
  return with_json_errors([&] {
    const json doc = parse_json(text);
    reject_unknown_keys(doc, {"theta", "sample_sizes", "levels", "methods", "replications", "seed",
                              "threads", "looks_mode", "renyi_beta", "kl_normalization",
                              "kronecker"});
    const WishartParams theta = theta_from_json(doc);
    SizeExperimentConfig cfg{theta, {}, {}, harness_from_json(doc, LooksMode::known(theta.looks()))};
    cfg.sample_sizes = get_or<std::vector<std::size_t>>(doc, "sample_sizes", {50});
    cfg.levels = get_or<std::vector<double>>(doc, "levels", {0.01, 0.05, 0.10});
    return cfg;
  });
}

PowerExperimentConfig parse_power_config(const std::string& text) {
  return with_json_errors([&] {
    const json doc = parse_json(text);
    reject_unknown_keys(doc, {"theta", "contrasts", "sample_sizes", "level", "methods",
                              "replications", "seed", "threads", "looks_mode", "renyi_beta",
                              "kl_normalization", "kronecker"});
    const WishartParams theta = theta_from_json(doc);
    PowerExperimentConfig cfg{theta, {}, {}, 0.01,
                              harness_from_json(doc, LooksMode::known(theta.looks()))};
    cfg.contrasts = get_or<std::vector<double>>(doc, "contrasts", {0.2, 0.3, 0.4});
    cfg.sample_sizes = get_or<std::vector<std::size_t>>(doc, "sample_sizes", {50});
    cfg.level = get_or<double>(doc, "level", 0.01);
    return cfg;
  });
}

SameTargetConfig parse_same_target_config(const std::string& text) {
  return with_json_errors([&] {
    const json doc = parse_json(text);
    reject_unknown_keys(doc, {"sample_sizes", "levels", "cross_region", "methods", "replications",
                              "seed", "threads", "looks_mode", "renyi_beta", "kl_normalization",
                              "kronecker"});
    SameTargetConfig cfg;
    cfg.options = harness_from_json(doc, LooksMode::estimated());
    cfg.sample_sizes = get_or<std::vector<std::size_t>>(doc, "sample_sizes", {9});
    cfg.levels = get_or<std::vector<double>>(doc, "levels", {0.01, 0.05, 0.10});
    cfg.cross_region = get_or<bool>(doc, "cross_region", false);
    return cfg;
  });
}

// ---------------------------------------------------------------------------
// Results

std::string to_json(const TestResult& result) {
  json doc;
  doc["method"] = std::string(to_string(result.method));
  if (result.method == Method::Renyi) doc["renyi_beta"] = result.renyi_beta;
  doc["statistic"] = result.statistic;
  doc["df"] = result.df;
  doc["p_value"] = result.p_value;
  doc["looks_mode"] = looks_mode_json(result.looks_mode);
  return doc.dump(2);
}

std::string to_json(const MLEstimate& estimate) {
  json doc;
  doc["p"] = estimate.params.dim();
  doc["sample_size"] = estimate.sample_size;
  doc["looks"] = estimate.params.looks();
  doc["looks_estimated"] = estimate.mean_logdet.has_value();
  doc["sigma"] = matrix_to_json(estimate.params.sigma().matrix());
  doc["logdet_sigma"] = logdet(estimate.params.sigma());
  if (estimate.mean_logdet) doc["mean_logdet"] = *estimate.mean_logdet;
  return doc.dump(2);
}

std::string to_json(const DetectionMetrics& m) {
  json doc;
  doc["tp"] = m.tp;
  doc["tn"] = m.tn;
  doc["fp"] = m.fp;
  doc["fn"] = m.fn;
  doc["fa"] = nullable(m.fa);
  doc["dr"] = nullable(m.dr);
  doc["kappa"] = nullable(m.kappa);
  doc["fa_defined"] = m.fa_defined;
  doc["dr_defined"] = m.dr_defined;
  doc["kappa_defined"] = m.kappa_defined;
  doc["convention"] = m.paper_literal ? "paper-literal" : "conventional";
  return doc.dump(2);
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish_write(out, path.string());
}

}  // namespace polchange
