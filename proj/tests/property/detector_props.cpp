#include <gtest/gtest.h>

#include "polchange/detector.hpp"
#include "testing.hpp"

using namespace polchange;

namespace {

const Method kAll[] = {Method::LR, Method::KL, Method::Shannon, Method::Renyi};

ChangeMask random_mask(std::size_t rows, std::size_t cols, Rng& rng, double density) {
  ChangeMask m{rows, cols, std::vector<std::uint8_t>(rows * cols)};
  for (auto& v : m.change) v = rng.uniform() < density;
  return m;
}

}  // namespace

TEST(DetectorProps, IdenticalRastersGiveAllOnes) {
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const SyntheticScene s =
        make_half_changed_scene(testutil::b1(), 9 + trial, 11, 1.5, RngSeed{700 + trial});
    for (Method m : kAll) {
      for (std::size_t w : {3u, 5u}) {
        DetectOptions o;
        o.method = m;
        o.window = w;
        const PValueMap map = detect(s.after, s.after, o);
        for (double v : map.values) ASSERT_EQ(v, 1.0);
      }
    }
  }
}

TEST(DetectorProps, ValuesInUnitIntervalAndThreadIndependent) {
  const SyntheticScene s = make_half_changed_scene(testutil::b1(), 20, 20, 1.4, RngSeed{710});
  for (Method m : kAll) {
    DetectOptions o;
    o.method = m;
    o.threads = 1;
    const PValueMap a = detect(s.before, s.after, o);
    for (double v : a.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    for (unsigned threads : {2u, 5u}) {
      o.threads = threads;
      EXPECT_EQ(detect(s.before, s.after, o).values, a.values) << to_string(m);
    }
  }
}

TEST(DetectorProps, ThresholdMonotoneInCut) {
  const SyntheticScene s = make_half_changed_scene(testutil::b1(), 24, 24, 1.6, RngSeed{720});
  DetectOptions o;
  o.method = Method::Shannon;
  const PValueMap map = detect(s.before, s.after, o);
  const double cuts[] = {1e-8, 1e-4, 1e-2, 0.05, 0.5, 1.0};
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    const ChangeMask small = threshold(map, cuts[i]);
    const ChangeMask large = threshold(map, cuts[i + 1]);
    for (std::size_t k = 0; k < small.change.size(); ++k) {
      if (small.change[k]) {
        ASSERT_TRUE(large.change[k]);
      }
    }
  }
}

TEST(DetectorProps, ScoreInvariantUnderTransposition) {
  Rng rng(RngSeed{730});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng.below(20);
    const std::size_t cols = 1 + rng.below(20);
    const ChangeMask mask = random_mask(rows, cols, rng, rng.uniform());
    const ChangeMask ref = random_mask(rows, cols, rng, rng.uniform());
    const DetectionMetrics a = score(mask, ref);
    const DetectionMetrics b = score(mask.transposed(), ref.transposed());
    EXPECT_EQ(a.tp, b.tp);
    EXPECT_EQ(a.tn, b.tn);
    EXPECT_EQ(a.fp, b.fp);
    EXPECT_EQ(a.fn, b.fn);
    if (a.kappa_defined) {
      EXPECT_EQ(a.kappa, b.kappa);
    }
  }
}

TEST(DetectorProps, CountsPartitionReference) {
  Rng rng(RngSeed{740});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng.below(20);
    const std::size_t cols = 1 + rng.below(20);
    const ChangeMask mask = random_mask(rows, cols, rng, rng.uniform());
    const ChangeMask ref = random_mask(rows, cols, rng, rng.uniform());
    const DetectionMetrics m = score(mask, ref);
    EXPECT_EQ(m.total(), rows * cols);
    EXPECT_EQ(m.fp + m.tn, rows * cols - ref.count());
    EXPECT_EQ(m.fn + m.tp, ref.count());
    if (m.dr_defined) {
      EXPECT_GE(m.dr, 0.0);
      EXPECT_LE(m.dr, 1.0);
    }
    if (m.kappa_defined) {
      EXPECT_LE(m.kappa, 1.0 + 1e-15);
    }
  }
}
