#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "polchange/error.hpp"
#include "polchange/io.hpp"
#include "testing.hpp"

using namespace polchange;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polchange_io_test";
  fs::create_directories(dir);
  return dir / name;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

std::string raster_bytes(const CovRaster& raster) {
  std::ostringstream out(std::ios::binary);
  write_raster(raster, out);
  return out.str();
}

CovRaster random_raster(std::size_t rows, std::size_t cols, RngSeed seed) {
  const MatrixSample s = sample(testutil::b1(), rows * cols, seed);
  return CovRaster(rows, cols, 4.0,
                   std::vector<HermitianMatrix>(s.observations().begin(), s.observations().end()));
}

}  // namespace

TEST(Pcmr, RoundTripIsBitIdentical) {
  const CovRaster raster = random_raster(8, 8, RngSeed{1});
  const std::string bytes = raster_bytes(raster);
  ASSERT_EQ(bytes.size(), kPcmrHeaderBytes + 64u * 9u * 16u);
  EXPECT_EQ(bytes.substr(0, 4), "PCMR");
  std::istringstream in(bytes, std::ios::binary);
  const CovRaster back = read_raster(in);
  EXPECT_EQ(back.rows(), 8u);
  EXPECT_EQ(back.cols(), 8u);
  EXPECT_EQ(back.nominal_looks(), 4.0);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(back.pixels()[k], raster.pixels()[k]);
  EXPECT_EQ(raster_bytes(back), bytes);

  const fs::path path = temp_path("roundtrip.pcmr");
  write_raster(raster, path);
  EXPECT_EQ(raster_bytes(read_raster(path)), bytes);
}

TEST(Pcmr, TruncatedPayloadNamesByteCounts) {
  const std::string bytes = raster_bytes(random_raster(2, 2, RngSeed{2}));
  std::istringstream in(bytes.substr(0, bytes.size() - 5), std::ios::binary);
  try {
    read_raster(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncatedPayload);
    const std::string msg = e.what();
    EXPECT_NE(msg.find(std::to_string(bytes.size())), std::string::npos) << msg;
    EXPECT_NE(msg.find(std::to_string(bytes.size() - 5)), std::string::npos) << msg;
  }
  std::istringstream header(bytes.substr(0, 10), std::ios::binary);
  EXPECT_EQ(code_of([&] { read_raster(header); }), ErrorCode::TruncatedPayload);
}

TEST(Pcmr, CorruptedPixelReportsCoordinates) {
  const std::vector<HermitianMatrix> px(64, HermitianMatrix::identity(3));
  std::string bytes = raster_bytes(CovRaster(8, 8, 4.0, px));
  // Pixel (2, 5), entry (1, 0), real part.
  const std::size_t offset = kPcmrHeaderBytes + ((2 * 8 + 5) * 9 + 3) * 16;
  double v = 1e-3;
  std::memcpy(bytes.data() + offset, &v, sizeof v);
  std::istringstream in(bytes, std::ios::binary);
  try {
    read_raster(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHermitianPixel);
    EXPECT_NE(std::string(e.what()).find("(2, 5)"), std::string::npos) << e.what();
  }
}

TEST(Pcmr, BadMagicAndVersion) {
  std::string bytes = raster_bytes(random_raster(1, 1, RngSeed{3}));
  std::string wrong = bytes;
  wrong[0] = 'X';
  std::istringstream a(wrong, std::ios::binary);
  EXPECT_EQ(code_of([&] { read_raster(a); }), ErrorCode::BadMagic);
  wrong = bytes;
  wrong[4] = 2;
  std::istringstream b(wrong, std::ios::binary);
  EXPECT_EQ(code_of([&] { read_raster(b); }), ErrorCode::BadMagic);
}

TEST(Pvm, RoundTrip) {
  PValueMap map;
  map.rows = 3;
  map.cols = 2;
  map.values = {1.0, 0.5, 1e-300, 0.0, 0.25, 1.0};
  std::ostringstream out(std::ios::binary);
  write_pvm(map, out);
  const std::string bytes = out.str();
  EXPECT_EQ(bytes.size(), kPvmHeaderBytes + 6u * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "PVM1");
  std::istringstream in(bytes, std::ios::binary);
  const PValueMap back = read_pvm(in);
  EXPECT_EQ(back.rows, 3u);
  EXPECT_EQ(back.cols, 2u);
  EXPECT_EQ(back.values, map.values);
  std::istringstream cut(bytes.substr(0, bytes.size() - 1), std::ios::binary);
  EXPECT_EQ(code_of([&] { read_pvm(cut); }), ErrorCode::TruncatedPayload);
}

TEST(Pgm, RoundTripAndMasks) {
  const GrayImage img{2, 3, {0, 10, 255, 7, 8, 9}};
  const fs::path path = temp_path("img.pgm");
  write_pgm(img, path);
  const GrayImage back = read_pgm(path);
  EXPECT_EQ(back.rows, 2u);
  EXPECT_EQ(back.cols, 3u);
  EXPECT_EQ(back.pixels, img.pixels);

  const ChangeMask mask = read_mask(path);
  EXPECT_EQ(mask.change, (std::vector<std::uint8_t>{0, 1, 1, 1, 1, 1}));
  const fs::path mpath = temp_path("mask.pgm");
  write_mask(mask, mpath);
  EXPECT_EQ(read_pgm(mpath).pixels, (std::vector<std::uint8_t>{0, 255, 255, 255, 255, 255}));
}

TEST(Pgm, AsciiVariantAndBadMagic) {
  const fs::path path = temp_path("ascii.pgm");
  write_text_file(path, "P2\n# comment\n2 2\n255\n0 1\n2 255\n");
  EXPECT_EQ(read_pgm(path).pixels, (std::vector<std::uint8_t>{0, 1, 2, 255}));
  write_text_file(path, "P6\n1 1\n255\n");
  EXPECT_EQ(code_of([&] { read_pgm(path); }), ErrorCode::BadMagic);
}

TEST(Render, PgmAndPng) {
  PValueMap map;
  map.rows = 2;
  map.cols = 2;
  map.values = {1.0, 1e-5, 1e-12, 0.0};
  const fs::path pgm = temp_path("render.pgm");
  render_pvalue_map(map, pgm);
  EXPECT_EQ(read_pgm(pgm).pixels, quantize(map));
  const fs::path png = temp_path("render.png");
  if (png_supported()) {
    render_pvalue_map(map, png);
    EXPECT_GT(fs::file_size(png), 8u);
  } else {
    EXPECT_EQ(code_of([&] { render_pvalue_map(map, png); }), ErrorCode::IoError);
  }
}

TEST(SampleJson, RoundTrip) {
  const MatrixSample s = sample(testutil::b1(), 4, RngSeed{5});
  const SampleFile back = parse_sample_json(sample_to_json(s, 4.0));
  ASSERT_EQ(back.sample.size(), 4u);
  EXPECT_EQ(back.looks, 4.0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(back.sample[k], s[k]);
  EXPECT_FALSE(parse_sample_json(sample_to_json(s, std::nullopt)).looks.has_value());
}

TEST(SampleJson, Errors) {
  EXPECT_EQ(code_of([] { parse_sample_json("{"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_sample_json(R"({"p": 1, "matrices": []})"); }),
            ErrorCode::EmptySample);
  EXPECT_EQ(code_of([] { parse_sample_json(R"({"p": 2, "matrices": [[[1, 0]]]})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] {
              parse_sample_json(R"({"p": 2, "matrices": [[[1, 0], [2, 0], [3, 0], [1, 0]]]})");
            }),
            ErrorCode::NotHermitian);
}

TEST(SampleFiles, BothFormats) {
  const MatrixSample s = sample(testutil::b1(), 6, RngSeed{6});
  for (const char* name : {"s.wsample.json", "s.pcmr"}) {
    const fs::path path = temp_path(name);
    write_sample(SampleFile{s, 4.0}, path);
    const SampleFile back = read_sample(path);
    ASSERT_EQ(back.sample.size(), 6u) << name;
    EXPECT_EQ(back.looks, 4.0) << name;
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(back.sample[k], s[k]) << name;
  }
}

TEST(Presets, FlevolandB1) {
  const WishartParams b1 = preset("flevoland-b1");
  EXPECT_EQ(b1.looks(), 4.0);
  EXPECT_EQ(b1.sigma(), flevoland_b1());
  EXPECT_THROW(preset("nope"), Error);
}

TEST(Configs, SizeConfig) {
  const SizeExperimentConfig cfg = parse_size_config(R"({
    "theta": {"preset": "flevoland-b1"},
    "sample_sizes": [10, 20],
    "levels": [0.05],
    "methods": ["lr", "shannon"],
    "replications": 100,
    "seed": 7,
    "renyi_beta": 0.3
  })");
  EXPECT_EQ(cfg.sample_sizes, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(cfg.levels, std::vector<double>{0.05});
  EXPECT_EQ(cfg.options.methods, (std::vector<Method>{Method::LR, Method::Shannon}));
  EXPECT_EQ(cfg.options.replications, 100u);
  EXPECT_EQ(cfg.options.seed.value, 7u);
  EXPECT_TRUE(cfg.options.test.looks.is_known());
  EXPECT_EQ(cfg.options.test.looks.value(), 4.0);
  EXPECT_EQ(cfg.options.test.renyi_beta, 0.3);
}

TEST(Configs, PowerAndSameTarget) {
  const PowerExperimentConfig p = parse_power_config(
      R"({"contrasts": [0.2, 0.4], "sample_sizes": [50], "level": 0.01, "looks_mode": "estimate"})");
  EXPECT_EQ(p.contrasts, (std::vector<double>{0.2, 0.4}));
  EXPECT_EQ(p.level, 0.01);
  EXPECT_FALSE(p.options.test.looks.is_known());
  const SameTargetConfig s =
      parse_same_target_config(R"({"sample_sizes": [9], "cross_region": true})");
  EXPECT_TRUE(s.cross_region);
  EXPECT_FALSE(s.options.test.looks.is_known());
}

TEST(Configs, Rejections) {
  EXPECT_EQ(code_of([] { parse_size_config(R"({"sample_sizes": [10], "bogus": 1})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_size_config(R"({"sample_sizes": "ten"})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_size_config(R"({"sample_sizes": [10], "methods": ["wald"]})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_size_config("[1, 2]"); }), ErrorCode::InvalidArgument);
}

TEST(LooksModeText, Parsing) {
  EXPECT_EQ(parse_looks_mode("fixed:4").value(), 4.0);
  EXPECT_FALSE(parse_looks_mode("estimate").is_known());
  EXPECT_THROW(parse_looks_mode("fixed:"), Error);
  EXPECT_THROW(parse_looks_mode("fixed:abc"), Error);
  EXPECT_THROW(parse_looks_mode("auto"), Error);
}

TEST(JsonOutputs, Fields) {
  TestResult r;
  r.statistic = 2.5;
  r.df = 9.0;
  r.p_value = 0.98;
  r.method = Method::KL;
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("method"), "kl");
  EXPECT_EQ(j.at("df"), 9.0);

  DetectionMetrics m;
  m.dr_defined = false;
  m.dr = std::nan("");
  const auto jm = nlohmann::json::parse(to_json(m));
  EXPECT_TRUE(jm.at("dr").is_null());
}
