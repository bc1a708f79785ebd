#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fisherbound/bound.hpp"
#include "fisherbound/models.hpp"
#include "fisherbound/montecarlo.hpp"

namespace fisherbound {

/// Stand-in for -inf dB (S = 0) inside records.
inline constexpr double kNegativeInfinityDb = -999.0;

enum class SweepMode { Analytic, MonteCarlo };

struct SweepRecord {
  double theta;
  MomentPoint moments;
  double beta_star;
  double s_value;
  std::optional<double> f_exact;
  double f_input;
  double loss_db;
  BoundCase bound_case;
};

struct InformationLoss {
  double ratio;
  double db;
};

/// S_Z / F_Y and its value in dB. Both inputs must be positive.
InformationLoss information_loss(double s_z, double f_y);

/// Reference Fisher information F_Y(theta) of the system input.
using ReferenceFisher = std::function<double(double)>;

/// Evaluates the bound at every grid point. Monte-Carlo points draw from the
/// stream (config.base_seed, grid index), so records do not depend on
/// scheduling. Points run concurrently; records follow grid order. Without an
/// explicit reference, F_Y is input_fisher(model, theta).
///
/// A failing point aborts the sweep with an Error naming its theta.
std::vector<SweepRecord> sweep(const ModelSpec& model, std::span<const double> grid,
                               const SimConfig& config, SweepMode mode,
                               const ReferenceFisher& reference = {});

struct CurvePoint {
  double theta;
  double value;
};

/// First theta where a - b changes sign, linearly interpolated between the
/// bracketing grid points. Throws GridMismatch if the grids differ.
std::optional<double> find_crossover(std::span<const CurvePoint> a, std::span<const CurvePoint> b);

/// `steps` evenly spaced points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

std::vector<CurvePoint> loss_curve(std::span<const SweepRecord> records);

/// Row-major table produced by the figure pipelines.
struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::optional<double> crossover;  // set by figure 1
};

inline constexpr std::size_t kFigure1Points = 81;    // theta in [0, 2]
inline constexpr std::size_t kSoftLimiterPoints = 51;  // theta in [0, 1]
inline constexpr double kSoftLimiterZetas[] = {1.0, 0.75, 0.5, 0.25, 0.1};

/// Regenerates the data behind one of the five figures:
///   1  squaring vs hard-limiter information loss (analytic)
///   2  soft-limiter input/output curves
///   3  simulated soft-limiter moments (zeta = 0.5)
///   4  simulated soft-limiter moment derivatives (zeta = 0.5)
///   5  simulated soft-limiter information loss for each zeta, plus the
///      hard-limiter limit
FigureTable reproduce_figure(int figure, const SimConfig& config);

}  // namespace fisherbound
