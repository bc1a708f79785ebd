#include "fisherbound/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "fisherbound/error.hpp"

namespace fisherbound {
namespace {

SweepRecord evaluate_point(const ModelSpec& model, double theta, std::uint64_t index,
                           const SimConfig& config, SweepMode mode, const ReferenceFisher& reference) {
  const MomentPoint point = mode == SweepMode::Analytic
                                ? model_moments(model, theta)
                                : measure_moment_point(model, theta, config, index);
  const BoundResult bound = fisher_bound(point);
  const double f_input = reference ? reference(theta) : input_fisher(model, theta);
  const double loss_db =
      bound.s_value > 0.0 ? information_loss(bound.s_value, f_input).db : kNegativeInfinityDb;
  return SweepRecord{theta,          point,   bound.beta_star, bound.s_value,
                     exact_fisher(model, theta), f_input, loss_db,         bound.bound_case};
}

std::string zeta_column(double zeta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "loss_db_zeta_%.2f", zeta);
  return buf;
}

std::vector<SweepRecord> soft_limiter_sweep(double zeta, std::span<const double> grid,
                                            const SimConfig& config) {
  return sweep(ModelSpec::soft_limiter_gaussian(zeta), grid, config, SweepMode::MonteCarlo,
               [](double) { return 1.0; });
}

}  // namespace

InformationLoss information_loss(double s_z, double f_y) {
  if (!(s_z > 0.0) || !(f_y > 0.0) || !std::isfinite(s_z) || !std::isfinite(f_y)) {
    throw Error(ErrorCode::InvalidInformation, "information loss needs positive finite inputs");
  }
  const double ratio = s_z / f_y;
  return {ratio, 10.0 * std::log10(ratio)};
}

std::vector<SweepRecord> sweep(const ModelSpec& model, std::span<const double> grid,
                               const SimConfig& config, SweepMode mode,
                               const ReferenceFisher& reference) {
  model.validate();
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sweep grid must be strictly increasing");
    }
  }
  if (mode == SweepMode::Analytic && !has_analytic_moments(model.kind)) {
    throw Error(ErrorCode::UnsupportedAnalytic,
                std::string(to_string(model.kind)) + " has no analytic moments; use Monte Carlo");
  }
  if (mode == SweepMode::MonteCarlo) config.validate();

  std::vector<std::optional<SweepRecord>> slots(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  const auto run = [&](std::size_t i) {
    try {
      slots[i] = evaluate_point(model, grid[i], i, config, mode, reference);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  // Analytic points are cheap; only simulated sweeps are worth threading.
  const std::size_t workers =
      mode == SweepMode::Analytic
          ? 1
          : std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) run(i);
      });
    }
  }

  std::vector<SweepRecord> records;
  records.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (failures[i]) {
      std::ostringstream where;
      where << "sweep failed at theta=" << grid[i] << ": ";
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error& e) {
        throw Error(e.code(), where.str() + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidArgument, where.str() + e.what());
      }
    }
    records.push_back(*slots[i]);
  }
  return records;
}

std::optional<double> find_crossover(std::span<const CurvePoint> a, std::span<const CurvePoint> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::GridMismatch, "curves have different lengths");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].theta != b[i].theta) throw Error(ErrorCode::GridMismatch, "curves use different grids");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double here = a[i].value - b[i].value;
    if (here == 0.0) return a[i].theta;
    if (i + 1 == a.size()) break;
    const double next = a[i + 1].value - b[i + 1].value;
    if ((here < 0.0) != (next < 0.0) && next != 0.0) {
      return a[i].theta + (a[i + 1].theta - a[i].theta) * here / (here - next);
    }
  }
  return std::nullopt;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  if (steps < 2 || !(lo < hi)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least two steps and min < max");
  }
  std::vector<double> grid(steps);
  const double span = hi - lo;
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = lo + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  grid.back() = hi;
  return grid;
}

std::vector<CurvePoint> loss_curve(std::span<const SweepRecord> records) {
  std::vector<CurvePoint> curve;
  curve.reserve(records.size());
  for (const auto& r : records) curve.push_back({r.theta, r.loss_db});
  return curve;
}

FigureTable reproduce_figure(int figure, const SimConfig& config) {
  FigureTable table;
  switch (figure) {
    case 1: {
      const auto grid = uniform_grid(0.0, 2.0, kFigure1Points);
      const auto squaring = sweep(ModelSpec::squaring_gaussian(), grid, config, SweepMode::Analytic);
      const auto hard = sweep(ModelSpec::hard_limited_gaussian(0.0), grid, config, SweepMode::Analytic);
      table.columns = {"theta", "squaring_loss_db", "hard_limiter_loss_db"};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        table.rows.push_back({grid[i], squaring[i].loss_db, hard[i].loss_db});
      }
      table.crossover = find_crossover(loss_curve(squaring), loss_curve(hard));
      return table;
    }
    case 2: {
      const auto inputs = uniform_grid(-1.0, 1.0, 81);
      table.columns = {"y"};
      for (double zeta : kSoftLimiterZetas) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "z_zeta_%.2f", zeta);
        table.columns.emplace_back(buf);
      }
      for (double y : inputs) {
        std::vector<double> row{y};
        for (double zeta : kSoftLimiterZetas) {
          row.push_back(apply_nonlinearity(ModelSpec::soft_limiter_gaussian(zeta), y));
        }
        table.rows.push_back(std::move(row));
      }
      return table;
    }
    case 3:
    case 4: {
      const auto grid = uniform_grid(0.0, 1.0, kSoftLimiterPoints);
      const auto records = soft_limiter_sweep(0.5, grid, config);
      if (figure == 3) {
        table.columns = {"theta", "mu1", "mu2", "mu3bar", "mu4bar"};
        for (const auto& r : records) {
          table.rows.push_back(
              {r.theta, r.moments.mu1(), r.moments.mu2(), r.moments.mu3bar(), r.moments.mu4bar()});
        }
      } else {
        table.columns = {"theta", "dmu1", "dmu2"};
        for (const auto& r : records) {
          table.rows.push_back({r.theta, r.moments.dmu1(), r.moments.dmu2()});
        }
      }
      return table;
    }
    case 5: {
      const auto grid = uniform_grid(0.0, 1.0, kSoftLimiterPoints);
      table.columns = {"theta"};
      table.rows.assign(grid.size(), {});
      for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i].push_back(grid[i]);
      for (double zeta : kSoftLimiterZetas) {
        table.columns.push_back(zeta_column(zeta));
        const auto records = soft_limiter_sweep(zeta, grid, config);
        for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i].push_back(records[i].loss_db);
      }
      table.columns.emplace_back("hard_limiter_loss_db");
      const auto hard = sweep(ModelSpec::hard_limited_gaussian(0.0), grid, config, SweepMode::Analytic);
      for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i].push_back(hard[i].loss_db);
      return table;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "figures are numbered 1 to 5");
  }
}

}  // namespace fisherbound
