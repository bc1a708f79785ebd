#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fisherbound/analysis.hpp"
#include "fisherbound/error.hpp"

using namespace fisherbound;

TEST(InformationLoss, RatioAndDecibels) {
  const auto loss = information_loss(0.5, 1.0);
  EXPECT_DOUBLE_EQ(loss.ratio, 0.5);
  EXPECT_NEAR(loss.db, -3.0102999566398121, 1e-14);
  EXPECT_DOUBLE_EQ(information_loss(2.0, 2.0).db, 0.0);
  EXPECT_THROW(information_loss(0.0, 1.0), Error);
  EXPECT_THROW(information_loss(1.0, -1.0), Error);
  EXPECT_THROW(information_loss(NAN, 1.0), Error);
}

TEST(UniformGrid, Endpoints) {
  const auto g = uniform_grid(0.0, 2.0, 81);
  ASSERT_EQ(g.size(), 81u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_DOUBLE_EQ(g[40], 1.0);
  EXPECT_THROW(uniform_grid(0.0, 1.0, 1), Error);
  EXPECT_THROW(uniform_grid(1.0, 1.0, 5), Error);
}

TEST(FindCrossover, Interpolates) {
  const std::vector<CurvePoint> a{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}};
  const std::vector<CurvePoint> b{{0.0, 0.5}, {1.0, 0.5}, {2.0, 0.5}};
  EXPECT_DOUBLE_EQ(*find_crossover(a, b), 0.5);
  const std::vector<CurvePoint> c{{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}};
  EXPECT_DOUBLE_EQ(*find_crossover(a, c), 1.0);
  const std::vector<CurvePoint> d{{0.0, 5.0}, {1.0, 5.0}, {2.0, 5.0}};
  EXPECT_FALSE(find_crossover(a, d).has_value());
}

TEST(FindCrossover, GridMismatch) {
  const std::vector<CurvePoint> a{{0.0, 0.0}, {1.0, 1.0}};
  const std::vector<CurvePoint> b{{0.0, 0.0}, {1.5, 1.0}};
  const std::vector<CurvePoint> c{{0.0, 0.0}};
  try {
    find_crossover(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
  EXPECT_THROW(find_crossover(a, c), Error);
}

TEST(Sweep, AnalyticRecords) {
  const auto grid = uniform_grid(-1.0, 1.0, 11);
  const auto records = sweep(ModelSpec::gaussian(), grid, SimConfig{}, SweepMode::Analytic);
  ASSERT_EQ(records.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(records[i].theta, grid[i]);
    EXPECT_DOUBLE_EQ(records[i].s_value, 1.0);
    EXPECT_DOUBLE_EQ(*records[i].f_exact, 1.0);
    EXPECT_DOUBLE_EQ(records[i].f_input, 1.0);
    EXPECT_DOUBLE_EQ(records[i].loss_db, 0.0);
  }
}

TEST(Sweep, ZeroBoundUsesSentinel) {
  const std::vector<double> grid{0.0, 1.0};
  const auto records = sweep(ModelSpec::squaring_gaussian(), grid, SimConfig{}, SweepMode::Analytic);
  EXPECT_EQ(records[0].s_value, 0.0);
  EXPECT_EQ(records[0].loss_db, kNegativeInfinityDb);
  EXPECT_EQ(records[0].bound_case, BoundCase::Degenerate);
  EXPECT_FALSE(records[0].f_exact.has_value());
  EXPECT_NEAR(records[1].s_value, 38.0 / 53.0, 1e-14);
  EXPECT_NEAR(records[1].beta_star, -std::sqrt(6.0) / 23.0, 1e-14);
}

TEST(Sweep, Errors) {
  const std::vector<double> bad{0.0, 0.0};
  EXPECT_THROW(sweep(ModelSpec::gaussian(), bad, SimConfig{}, SweepMode::Analytic), Error);
  EXPECT_THROW(sweep(ModelSpec::gaussian(), {}, SimConfig{}, SweepMode::Analytic), Error);
  const std::vector<double> grid{0.0, 0.5};
  try {
    sweep(ModelSpec::soft_limiter_gaussian(0.5), grid, SimConfig{}, SweepMode::Analytic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedAnalytic);
  }
  const std::vector<double> crosses_zero{-1.0, 1.0};
  try {
    sweep(ModelSpec::exponential(), crosses_zero, SimConfig{}, SweepMode::Analytic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParameterDomain);
    EXPECT_NE(std::string(e.what()).find("theta=-1"), std::string::npos);
  }
}

TEST(Sweep, MonteCarloIsDeterministic) {
  SimConfig config;
  config.n_samples = 20'000;
  const auto grid = uniform_grid(0.0, 1.0, 5);
  const auto a = sweep(ModelSpec::soft_limiter_gaussian(0.5), grid, config, SweepMode::MonteCarlo);
  const auto b = sweep(ModelSpec::soft_limiter_gaussian(0.5), grid, config, SweepMode::MonteCarlo);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].s_value, b[i].s_value);
    EXPECT_EQ(a[i].moments.dmu2(), b[i].moments.dmu2());
    EXPECT_GE(pearson_slack(a[i].moments.mu3bar(), a[i].moments.mu4bar()), -kFeasibilityTolerance);
  }
  config.n_samples = 10;
  EXPECT_THROW(sweep(ModelSpec::soft_limiter_gaussian(0.5), grid, config, SweepMode::MonteCarlo),
               Error);
}

TEST(Sweep, ReferenceFisher) {
  const std::vector<double> grid{0.5};
  const auto r = sweep(ModelSpec::gaussian(), grid, SimConfig{}, SweepMode::Analytic,
                       [](double) { return 4.0; });
  EXPECT_DOUBLE_EQ(r[0].f_input, 4.0);
  EXPECT_NEAR(r[0].loss_db, 10.0 * std::log10(0.25), 1e-14);
}

TEST(Figures, FigureOne) {
  const auto t = reproduce_figure(1, SimConfig{});
  ASSERT_EQ(t.rows.size(), 81u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"theta", "squaring_loss_db", "hard_limiter_loss_db"}));
  ASSERT_TRUE(t.crossover.has_value());
  EXPECT_GT(*t.crossover, 0.70);
  EXPECT_LT(*t.crossover, 0.80);
  EXPECT_EQ(t.rows[0][1], kNegativeInfinityDb);
  EXPECT_NEAR(t.rows[0][2], 10.0 * std::log10(2.0 / std::numbers::pi), 1e-12);
  // Squaring wins above the crossover.
  EXPECT_GT(t.rows.back()[1], t.rows.back()[2]);
}

TEST(Figures, FigureTwo) {
  const auto t = reproduce_figure(2, SimConfig{});
  ASSERT_EQ(t.rows.size(), 81u);
  ASSERT_EQ(t.columns.size(), 1 + std::size(kSoftLimiterZetas));
  EXPECT_EQ(t.columns[1], "z_zeta_1.00");
  EXPECT_NEAR(t.rows.back()[1], std::erf(1.0 / std::sqrt(2.0)), 1e-15);
}

TEST(Figures, SimulatedFigures) {
  SimConfig config;
  config.n_samples = 20'000;
  const auto three = reproduce_figure(3, config);
  EXPECT_EQ(three.rows.size(), kSoftLimiterPoints);
  EXPECT_EQ(three.columns.size(), 5u);
  const auto four = reproduce_figure(4, config);
  EXPECT_EQ(four.columns, (std::vector<std::string>{"theta", "dmu1", "dmu2"}));
  const auto five = reproduce_figure(5, config);
  EXPECT_EQ(five.columns.size(), 2 + std::size(kSoftLimiterZetas));
  EXPECT_EQ(five.columns[1], "loss_db_zeta_1.00");
  EXPECT_EQ(five.columns.back(), "hard_limiter_loss_db");
  EXPECT_FALSE(five.crossover.has_value());
  EXPECT_THROW(reproduce_figure(6, config), Error);
}
