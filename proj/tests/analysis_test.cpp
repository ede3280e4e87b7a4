#include <cmath>

#include <gtest/gtest.h>

#include "linsat/analysis.hpp"

using namespace linsat;

TEST(SemicircleTest, Examples) {
  EXPECT_NEAR(semicircle_ratio(0.0, 0.5), 0.5, 1e-12);
  EXPECT_NEAR(semicircle_ratio(0.25, 0.5), 0.933, 1e-3);
  EXPECT_EQ(semicircle_ratio(0.5, 0.5), 1.0);
  EXPECT_EQ(semicircle_ratio(Rational(1, 2), Rational(1, 2)), 1.0);
}

TEST(SemicircleTest, BoundaryCollapse) {
  for (int k = 1; k < 1000; ++k) {
    const double x = k / 1000.0;
    EXPECT_NEAR(semicircle_ratio(0.0, x), x, 1e-12);
  }
}

TEST(SemicircleTest, SaturationAndContinuity) {
  for (int a = 1; a < 40; ++a) {
    const Rational rq(a, 40);
    for (int k = 0; k <= 40; ++k) {
      const Rational ell(k, 40);
      if (ell >= 1 - rq) {
        EXPECT_EQ(semicircle_ratio(ell, rq), 1.0);
      }
    }
    const double r = to_double(rq);
    EXPECT_NEAR(semicircle_branch(1.0 - r, r), 1.0, 1e-9);
  }
}

TEST(SemicircleTest, SymmetricOnUnsaturatedBranch) {
  for (int a = 1; a < 20; ++a)
    for (int b = 0; b < 20; ++b) {
      const double x = a / 20.0, y = b / 20.0;
      if (y > 1.0 - x) continue;
      EXPECT_NEAR(semicircle_branch(y, x), semicircle_branch(x, y), 1e-14);
    }
}

TEST(SemicircleTest, RangeErrors) {
  EXPECT_THROW(semicircle_ratio(-0.1, 0.5), Error);
  EXPECT_THROW(semicircle_ratio(0.2, 0.0), Error);
  EXPECT_THROW(semicircle_ratio(0.2, 1.0), Error);
  EXPECT_THROW(semicircle_ratio(1.5, 0.5), Error);
  EXPECT_THROW(semicircle_ratio(std::nan(""), 0.5), Error);
}

TEST(PrangeFormulaTest, Examples) {
  EXPECT_DOUBLE_EQ(prange_expected_ratio(0.0, 0.3), 0.3);
  EXPECT_DOUBLE_EQ(prange_expected_ratio(1.0, 0.7), 1.0);
  EXPECT_NEAR(prange_expected_ratio(0.1, 0.5), 0.55, 1e-15);
  EXPECT_EQ(prange_expected_ratio(Rational(1, 10), Rational(1, 2)),
            Rational(11, 20));
  EXPECT_EQ(prange_expected_ratio(Rational(1, 10), Rational(2, 5)),
            Rational(23, 50));
  EXPECT_THROW(prange_expected_ratio(1.1, 0.5), Error);
}

TEST(SaturationThresholdTest, Examples) {
  EXPECT_EQ(saturation_threshold(Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(saturation_threshold(Rational(1, 4)), Rational(3, 4));
  for (int k = 1; k < 10; ++k) {
    const Rational rq(k, 10);
    EXPECT_EQ(saturation_threshold(rq) + rq, Rational(1));
  }
  EXPECT_DOUBLE_EQ(saturation_threshold(0.25), 0.75);
  EXPECT_THROW(saturation_threshold(Rational(0)), Error);
}

TEST(LandscapeTest, ThreePointGrid) {
  const auto curve = landscape_curve(Rational(1, 2), 3);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[0].ell_over_m, Rational(0));
  EXPECT_EQ(curve[1].ell_over_m, Rational(1, 2));
  EXPECT_EQ(curve[2].ell_over_m, Rational(1));
  EXPECT_NEAR(curve[0].alpha_dqi, 0.5, 1e-12);
  EXPECT_EQ(curve[1].alpha_dqi, 1.0);
  EXPECT_EQ(curve[2].alpha_dqi, 1.0);
  EXPECT_FALSE(curve[0].saturated);
  EXPECT_TRUE(curve[1].saturated);
  EXPECT_EQ(landscape_csv(curve),
            "ell_over_m,alpha_dqi,hardness_wall,saturated\n"
            "0,0.5,0.5,false\n"
            "0.5,1,0.5,true\n"
            "1,1,0.5,true\n");
}

TEST(LandscapeTest, MonotoneAndAboveWall) {
  for (int a = 1; a < 16; ++a) {
    const Rational rq(a, 16);
    const auto curve = landscape_curve(rq, 101);
    EXPECT_NEAR(curve.front().alpha_dqi, to_double(rq), 1e-12);
    for (std::size_t k = 0; k < curve.size(); ++k) {
      const auto& pt = curve[k];
      EXPECT_GE(pt.alpha_dqi, to_double(pt.hardness_wall) - 1e-12);
      EXPECT_LE(pt.alpha_dqi, 1.0);
      EXPECT_EQ(pt.saturated, pt.ell_over_m >= 1 - rq);
      if (pt.saturated) {
        EXPECT_EQ(pt.alpha_dqi, 1.0);
      }
      if (k > 0) {
        EXPECT_GE(pt.alpha_dqi, curve[k - 1].alpha_dqi - 1e-15);
      }
      if (k > 0 && !pt.saturated) {
        EXPECT_GT(pt.alpha_dqi, to_double(rq));  // strictly above once l/m > 0
      }
    }
  }
  EXPECT_THROW(landscape_curve(Rational(1, 2), 1), Error);
}
