// polchange command-line tool.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polchange/error.hpp"
#include "polchange/io.hpp"

namespace pc = polchange;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

int exit_code(pc::ErrorCode code) {
  switch (code) {
    case pc::ErrorCode::InvalidArgument:
      return kUsage;
    case pc::ErrorCode::NotPositiveDefinite:
    case pc::ErrorCode::DomainError:
    case pc::ErrorCode::NoConvergence:
    case pc::ErrorCode::DegenerateDenominator:
      return kNumerical;
    default:
      return kData;
  }
}

// One line on stderr: "error: <Kind>: <message>".
int report(std::string_view kind, std::string message, int code) {
  for (auto& ch : message) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::cerr << "error: " << kind << ": " << message << '\n';
  return code;
}

pc::Method method_from(const std::string& name) {
  const auto m = pc::parse_method(name);
  if (!m) pc::fail(pc::ErrorCode::InvalidArgument, "unknown method '" + name + "'");
  return *m;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    pc::write_text_file(path, text);
  }
}

pc::WishartParams theta_from(const std::string& preset_name, std::optional<double> looks) {
  pc::WishartParams base = pc::preset(preset_name);
  return looks ? pc::WishartParams(base.sigma(), *looks) : base;
}

// Options shared by the Monte Carlo subcommands; unset flags keep the config
// file (or default) value.
struct HarnessFlags {
  std::string config;
  std::string output;
  std::optional<std::size_t> replications;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::vector<std::string> methods;
  std::vector<std::size_t> sample_sizes;
  std::optional<std::string> looks;
  std::optional<double> beta;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file");
    cmd->add_option("-o,--output", output, "CSV report path (default stdout)");
    cmd->add_option("-T,--replications", replications, "Monte Carlo replications (default 5500)");
    cmd->add_option("--seed", seed, "base RNG seed (default 42)");
    cmd->add_option("--threads", threads, "worker threads, 0 = auto (default 0)");
    cmd->add_option("--methods", methods, "subset of lr,kl,shannon,renyi (default all)")
        ->delimiter(',');
    cmd->add_option("-N,--sample-sizes", sample_sizes, "sample sizes N")->delimiter(',');
    cmd->add_option("--looks", looks, "fixed:L or estimate");
    cmd->add_option("--beta", beta, "Renyi order (default 0.1)");
  }

  void apply(pc::HarnessOptions& h, std::vector<std::size_t>& sizes) const {
    if (replications) h.replications = *replications;
    if (seed) h.seed = pc::RngSeed{*seed};
    if (threads) h.threads = *threads;
    if (!methods.empty()) {
      h.methods.clear();
      for (const auto& m : methods) h.methods.push_back(method_from(m));
    }
    if (!sample_sizes.empty()) sizes = sample_sizes;
    if (looks) h.test.looks = pc::parse_looks_mode(*looks);
    if (beta) h.test.renyi_beta = *beta;
  }

  std::string config_text() const { return config.empty() ? "{}" : pc::read_text_file(config); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change detection for multilook polarimetric SAR covariance data"};
  app.set_version_flag("--version", std::string("polchange ") + POLCHANGE_VERSION +
                                        "\nPCMR " + std::to_string(pc::kPcmrVersion) +
                                        "\nPVM " + std::to_string(pc::kPvmVersion));
  app.require_subcommand(1);
  app.get_formatter()->column_width(38);

  // sample ------------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "Draw Wishart observations (PCMR or .json)");
  std::string sample_preset = "flevoland-b1";
  std::optional<double> sample_looks;
  std::size_t sample_n = 100;
  std::uint64_t sample_seed = 42;
  double sample_scale = 1.0;
  std::string sample_out;
  cmd_sample->add_option("--preset", sample_preset, "parameter preset")->capture_default_str();
  cmd_sample->add_option("--looks", sample_looks, "integer looks L >= max(3, p) (default preset L)");
  cmd_sample->add_option("-n,--count", sample_n, "number of draws")->capture_default_str();
  cmd_sample->add_option("--scale", sample_scale, "multiply Sigma by this factor")
      ->capture_default_str();
  cmd_sample->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();
  cmd_sample->add_option("-o,--output", sample_out, "output file (.json = wsample, else PCMR)")
      ->required();

  // synth -------------------------------------------------------------------
  auto* cmd_synth =
      app.add_subcommand("synth", "Write a synthetic half-changed raster pair and reference mask");
  std::string synth_preset = "flevoland-b1";
  std::size_t synth_rows = 64;
  std::size_t synth_cols = 64;
  double synth_contrast = 1.4;
  std::uint64_t synth_seed = 42;
  std::string synth_prefix;
  cmd_synth->add_option("--preset", synth_preset, "parameter preset")->capture_default_str();
  cmd_synth->add_option("--rows", synth_rows, "raster rows")->capture_default_str();
  cmd_synth->add_option("--cols", synth_cols, "raster columns")->capture_default_str();
  cmd_synth->add_option("--contrast", synth_contrast, "right-half scale factor 1+k")
      ->capture_default_str();
  cmd_synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
  cmd_synth->add_option("-o,--output-prefix", synth_prefix,
                        "writes PREFIX-before.pcmr, PREFIX-after.pcmr, PREFIX-reference.pgm")
      ->required();

  // estimate ----------------------------------------------------------------
  auto* cmd_estimate = app.add_subcommand("estimate", "ML estimate of (Sigma, L) as JSON");
  std::string estimate_in;
  std::string estimate_looks = "estimate";
  cmd_estimate->add_option("sample", estimate_in, "sample file (PCMR or .json)")->required();
  cmd_estimate->add_option("--looks", estimate_looks, "fixed:L or estimate")
      ->capture_default_str();

  // test --------------------------------------------------------------------
  auto* cmd_test = app.add_subcommand("test", "Two-sample test of equal Wishart parameters");
  std::string test_a;
  std::string test_b;
  std::string test_method = "lr";
  double test_beta = pc::kDefaultRenyiOrder;
  std::string test_looks = "estimate";
  double test_alpha = 0.05;
  cmd_test->add_option("first", test_a, "first sample file")->required();
  cmd_test->add_option("second", test_b, "second sample file")->required();
  cmd_test->add_option("--method", test_method, "lr, kl, shannon or renyi")
      ->capture_default_str();
  cmd_test->add_option("--beta", test_beta, "Renyi order")->capture_default_str();
  cmd_test->add_option("--looks", test_looks, "fixed:L or estimate")->capture_default_str();
  cmd_test->add_option("--alpha", test_alpha, "level for the reject decision")
      ->capture_default_str();

  // mc-size / mc-power / same-target ------------------------------------------
  auto* cmd_size = app.add_subcommand("mc-size", "Monte Carlo empirical test size (CSV)");
  HarnessFlags size_flags;
  std::optional<std::string> size_preset;
  std::vector<double> size_levels;
  size_flags.add_to(cmd_size);
  cmd_size->add_option("--preset", size_preset, "parameter preset (default flevoland-b1)");
  cmd_size->add_option("--levels", size_levels, "nominal levels (default 0.01,0.05,0.1)")
      ->delimiter(',');

  auto* cmd_power = app.add_subcommand("mc-power", "Monte Carlo power under Sigma(1+k) (CSV)");
  HarnessFlags power_flags;
  std::optional<std::string> power_preset;
  std::vector<double> power_contrasts;
  std::optional<double> power_level;
  power_flags.add_to(cmd_power);
  cmd_power->add_option("--preset", power_preset, "parameter preset (default flevoland-b1)");
  cmd_power->add_option("-k,--contrasts", power_contrasts, "contrast factors (default 0.2,0.3,0.4)")
      ->delimiter(',');
  cmd_power->add_option("--level", power_level, "nominal level (default 0.01)");

  auto* cmd_same =
      app.add_subcommand("same-target", "Resampling size experiment on observed regions (CSV)");
  HarnessFlags same_flags;
  std::vector<std::string> same_regions;
  std::vector<double> same_levels;
  bool same_cross = false;
  same_flags.add_to(cmd_same);
  cmd_same->add_option("regions", same_regions, "region sample files")->required();
  cmd_same->add_option("--levels", same_levels, "nominal levels (default 0.01,0.05,0.1)")
      ->delimiter(',');
  cmd_same->add_flag("--cross-region", same_cross, "pair each region with the next one");

  // detect ------------------------------------------------------------------
  auto* cmd_detect = app.add_subcommand("detect", "Sliding-window change detection");
  std::string detect_before;
  std::string detect_after;
  std::string detect_method = "lr";
  std::size_t detect_window = 3;
  double detect_threshold = pc::kDefaultChangeThreshold;
  std::optional<std::string> detect_looks;
  double detect_beta = pc::kDefaultRenyiOrder;
  unsigned detect_threads = 0;
  bool detect_png = false;
  std::string detect_prefix;
  cmd_detect->add_option("before", detect_before, "first-date PCMR raster")->required();
  cmd_detect->add_option("after", detect_after, "second-date PCMR raster")->required();
  cmd_detect->add_option("--method", detect_method, "lr, kl, shannon or renyi")
      ->capture_default_str();
  cmd_detect->add_option("--window", detect_window, "odd window side w")->capture_default_str();
  cmd_detect->add_option("--threshold", detect_threshold, "change iff p-value <= threshold")
      ->capture_default_str();
  cmd_detect->add_option("--looks", detect_looks,
                         "fixed:L or estimate (default fixed at the header looks)");
  cmd_detect->add_option("--beta", detect_beta, "Renyi order")->capture_default_str();
  cmd_detect->add_option("--threads", detect_threads, "worker threads, 0 = auto")
      ->capture_default_str();
  cmd_detect->add_flag("--png", detect_png, "also render PREFIX-pvalues.png");
  cmd_detect->add_option("-o,--output-prefix", detect_prefix,
                         "writes PREFIX.pvm, PREFIX-mask.pgm, PREFIX-pvalues.pgm")
      ->required();

  // metrics -----------------------------------------------------------------
  auto* cmd_metrics = app.add_subcommand("metrics", "Score a change mask against a reference");
  std::string metrics_mask;
  std::string metrics_ref;
  bool metrics_literal = false;
  cmd_metrics->add_option("mask", metrics_mask, "detector mask (PGM)")->required();
  cmd_metrics->add_option("reference", metrics_ref, "reference mask (PGM, nonzero = change)")
      ->required();
  cmd_metrics->add_flag("--paper-literal-metrics", metrics_literal,
                        "swap the FP and FN labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("Usage", e.what(), kUsage);
  }

  try {
    if (cmd_sample->parsed()) {
      const pc::WishartParams theta = theta_from(sample_preset, sample_looks).scaled(sample_scale);
      pc::write_sample({pc::sample(theta, sample_n, pc::RngSeed{sample_seed}), theta.looks()},
                       sample_out);
    } else if (cmd_synth->parsed()) {
      const auto scene = pc::make_half_changed_scene(pc::preset(synth_preset), synth_rows,
                                                     synth_cols, synth_contrast,
                                                     pc::RngSeed{synth_seed});
      pc::write_raster(scene.before, synth_prefix + "-before.pcmr");
      pc::write_raster(scene.after, synth_prefix + "-after.pcmr");
      pc::write_mask(scene.reference, synth_prefix + "-reference.pgm");
    } else if (cmd_estimate->parsed()) {
      const pc::SampleFile file = pc::read_sample(estimate_in);
      emit(pc::to_json(pc::estimate(file.sample, pc::parse_looks_mode(estimate_looks))) + "\n",
           "-");
    } else if (cmd_test->parsed()) {
      if (!(test_alpha > 0.0 && test_alpha < 1.0)) {
        pc::fail(pc::ErrorCode::InvalidArgument, "--alpha must lie in (0, 1)");
      }
      pc::TestOptions options;
      options.looks = pc::parse_looks_mode(test_looks);
      options.renyi_beta = test_beta;
      const pc::Method method = method_from(test_method);
      const auto a = pc::read_sample(test_a);
      const auto b = pc::read_sample(test_b);
      const pc::TestResult r = pc::run_test(method, a.sample, b.sample, options);
      json doc = json::parse(pc::to_json(r));
      doc["alpha"] = test_alpha;
      doc["reject"] = pc::decide(r, test_alpha);
      emit(doc.dump(2) + "\n", "-");
    } else if (cmd_size->parsed()) {
      auto cfg = pc::parse_size_config(size_flags.config_text());
      if (size_preset) {
        cfg.theta = pc::preset(*size_preset);
        if (!size_flags.looks) cfg.options.test.looks = pc::LooksMode::known(cfg.theta.looks());
      }
      size_flags.apply(cfg.options, cfg.sample_sizes);
      if (!size_levels.empty()) cfg.levels = size_levels;
      emit(pc::to_csv(pc::run_size_experiment(cfg)), size_flags.output);
    } else if (cmd_power->parsed()) {
      auto cfg = pc::parse_power_config(power_flags.config_text());
      if (power_preset) {
        cfg.theta = pc::preset(*power_preset);
        if (!power_flags.looks) cfg.options.test.looks = pc::LooksMode::known(cfg.theta.looks());
      }
      power_flags.apply(cfg.options, cfg.sample_sizes);
      if (!power_contrasts.empty()) cfg.contrasts = power_contrasts;
      if (power_level) cfg.level = *power_level;
      emit(pc::to_csv(pc::run_power_experiment(cfg)), power_flags.output);
    } else if (cmd_same->parsed()) {
      auto cfg = pc::parse_same_target_config(same_flags.config_text());
      same_flags.apply(cfg.options, cfg.sample_sizes);
      if (!same_levels.empty()) cfg.levels = same_levels;
      if (same_cross) cfg.cross_region = true;
      std::vector<pc::MatrixSample> regions;
      for (const auto& path : same_regions) regions.push_back(pc::read_sample(path).sample);
      emit(pc::to_csv(pc::run_same_target_experiment(regions, cfg)), same_flags.output);
    } else if (cmd_detect->parsed()) {
      if (!(detect_threshold > 0.0 && detect_threshold <= 1.0)) {
        pc::fail(pc::ErrorCode::InvalidArgument, "--threshold must lie in (0, 1]");
      }
      pc::DetectOptions options;
      options.method = method_from(detect_method);
      options.window = detect_window;
      if (detect_looks) options.looks = pc::parse_looks_mode(*detect_looks);
      options.renyi_beta = detect_beta;
      options.threads = detect_threads;
      if (detect_png && !pc::png_supported()) {
        pc::fail(pc::ErrorCode::InvalidArgument, "--png requested but built without libpng");
      }
      const auto before = pc::read_raster(std::filesystem::path(detect_before));
      const auto after = pc::read_raster(std::filesystem::path(detect_after));
      const pc::PValueMap map = pc::detect(before, after, options);
      const pc::ChangeMask mask = pc::threshold(map, detect_threshold);
      pc::write_pvm(map, std::filesystem::path(detect_prefix + ".pvm"));
      pc::write_mask(mask, detect_prefix + "-mask.pgm");
      pc::render_pvalue_map(map, detect_prefix + "-pvalues.pgm", detect_threshold);
      if (detect_png) pc::render_pvalue_map(map, detect_prefix + "-pvalues.png", detect_threshold);
      json summary;
      summary["rows"] = map.rows;
      summary["cols"] = map.cols;
      summary["method"] = std::string(pc::to_string(options.method));
      summary["window"] = detect_window;
      summary["threshold"] = detect_threshold;
      summary["changed_pixels"] = mask.count();
      summary["failed_windows"] = map.failed_windows;
      emit(summary.dump(2) + "\n", "-");
    } else if (cmd_metrics->parsed()) {
      const auto mask = pc::read_mask(metrics_mask);
      const auto reference = pc::read_mask(metrics_ref);
      emit(pc::to_json(pc::score(mask, reference, metrics_literal)) + "\n", "-");
    }
  } catch (const pc::Error& e) {
    return report(pc::to_string(e.code()), e.what(), exit_code(e.code()));
  } catch (const std::exception& e) {
    return report("Internal", e.what(), kData);
  }
  return kOk;
}
