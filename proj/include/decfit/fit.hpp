// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "decfit/cdf.hpp"
#include "decfit/errors.hpp"
#include "decfit/model.hpp"

namespace decfit {

/// Coordinate space a fit runs in: raw (x, p) pairs, or (ln x, ln p) with
/// points at x = 0 or p = 0 excluded.
enum class FitSpace { linear, log_log };

/// Solver knobs for the damped least-squares engine.
struct FitConfig {
  int max_iterations = 200;     ///< every trial step counts as an iteration
  double tol_step = 1e-10;      ///< relative parameter-step tolerance
  double tol_cost = 1e-12;      ///< relative cost-decrease tolerance
  double damping_init = 1e-3;   ///< initial damping lambda
  double damping_factor = 10.0; ///< lambda multiplier nu (> 1)
  FitSpace space = FitSpace::linear;
};

/// Outcome of one model fit.  r_squared is a fraction in (-inf, 1];
/// residual_norm is the sum of squared residuals; both live in the space
/// the fit ran in.  converged == false flags an iteration-limit stop; the
/// partial parameters are still populated.
struct FitResult {
  std::variant<FermiParams, PolyCoeffs> params;
  double r_squared = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;
  FitSpace space = FitSpace::linear;
};

/// Coefficient of determination 1 - SS_res/SS_tot.  Throws LENGTH_MISMATCH
/// for unequal or shorter-than-2 inputs and DEGENERATE_OBSERVATIONS when
/// the observed values carry no variance.
double r_squared(const Eigen::ArrayXd& observed,
                 const Eigen::ArrayXd& predicted);

/// Least-squares polynomial fit of p against x (degree 1..4) on arbitrary
/// points, solved by column-pivoted QR on an x-scaled Vandermonde matrix.
/// Throws RANK_DEFICIENT when fewer than degree + 1 points are given or
/// the system has no unique solution (e.g. repeated x).
FitResult fit_polynomial_xy(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                            int degree);

/// fit_polynomial_xy applied to a CDF point set in linear space.
FitResult fit_polynomial(const CdfPoints& pts, int degree);

/// Fermi-Dirac least-squares fit on arbitrary (x, y) points by
/// Levenberg-Marquardt with Marquardt diagonal scaling.  Steps that would
/// make g or t non-positive are rejected and re-damped.  When init is
/// absent, starting values are read off the empirical curve: g0 = first y,
/// mu0 = x at y = g0/2, t0 = quarter-width / (2 ln 3).  An iteration-limit
/// stop returns converged == false rather than throwing.  Throws
/// TOO_FEW_POINTS below 4 points.  When accepted_costs is non-null it
/// receives the initial cost followed by the cost of every accepted step.
FitResult fit_fermi_dirac_xy(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                             const FitConfig& config = {},
                             const std::optional<FermiParams>& init = {},
                             std::vector<double>* accepted_costs = nullptr);

/// Fermi-Dirac fit of a CDF point set.  config.space == log_log fits
/// ln p against ln x, excluding points with x = 0 or p = 0 (and throwing
/// TOO_FEW_POINTS if fewer than 4 remain); the reported parameters, R^2,
/// and residuals then live in that log-log plane.
FitResult fit_fermi_dirac(const CdfPoints& pts, const FitConfig& config = {},
                          const std::optional<FermiParams>& init = {},
                          std::vector<double>* accepted_costs = nullptr);

/// Inclusive per-parameter search intervals for grid_oracle_fit,
/// in (g, mu, t) order.
using GridBounds = std::array<std::pair<double, double>, 3>;

/// Brute-force reference fit: evaluates the sum of squared residuals on a
/// steps^3 lattice over bounds and returns the minimizing triple (first
/// minimum wins on ties).  Test oracle; intended for small grids only.
FermiParams grid_oracle_fit(const CdfPoints& pts, const GridBounds& bounds,
                            int steps);

}  // namespace decfit
