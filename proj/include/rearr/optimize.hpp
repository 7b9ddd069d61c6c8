#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rearr {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizeResult {
  std::vector<double> x;
  double value = 0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::size_t rebuilds = 0;  // simplex re-initializations after collapse
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.25;
  std::size_t max_iters = 3000;
  /// Collapse: vertex spread below this (max |x_i - x_best|) and value spread
  /// below value_tol.
  double collapse_tol = 1e-9;
  double value_tol = 1e-14;
  /// Rebuild the simplex around the best vertex at most this many times.
  std::size_t max_rebuilds = 8;
};

/// Maximizes f with the Nelder-Mead simplex method. A collapsed simplex is
/// rebuilt around the best vertex; the run stops when the iteration budget is
/// spent or a rebuild brings no improvement.
OptimizeResult nelder_mead_maximize(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt);

struct GradientAscentOptions {
  double fd_step = 1e-6;
  double initial_rate = 0.1;
  std::size_t max_iters = 3000;
  double min_rate = 1e-14;
};

/// Ascent along central-difference gradients with backtracking step control.
OptimizeResult finite_diff_ascent(const Objective& f, std::vector<double> x0, const GradientAscentOptions& opt);

}  // namespace rearr
