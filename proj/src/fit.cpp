// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "decfit/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace decfit {

namespace {

constexpr double kDiagFloor = 1e-30;  // keeps the damped system solvable

Eigen::ArrayXd residuals(const FermiParams& p, const Eigen::ArrayXd& x,
                         const Eigen::ArrayXd& y) {
  return y - eval_fermi_dirac(p, x);
}

/// x at which the piecewise-linear interpolant of (x, y) first crosses
/// level, clamped to the endpoints when no segment crosses it.
double x_at_level(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                  double level) {
  for (Eigen::Index i = 0; i + 1 < y.size(); ++i) {
    if ((y[i] - level) * (y[i + 1] - level) <= 0.0 && y[i] != y[i + 1]) {
      const double t = (level - y[i]) / (y[i + 1] - y[i]);
      return x[i] + t * (x[i + 1] - x[i]);
    }
  }
  return level > y[0] ? x[0] : x[x.size() - 1];
}

FermiParams initial_guess(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  FermiParams p;
  p.g = y[0];
  p.mu = x_at_level(x, y, 0.5 * p.g);
  const double quarter_width =
      x_at_level(x, y, 0.25 * p.g) - x_at_level(x, y, 0.75 * p.g);
  const double t_floor = 1e-3 * (x.maxCoeff() - x.minCoeff());
  p.t = std::max(quarter_width / (2.0 * std::log(3.0)), t_floor);
  return p;
}

/// Filters to the points a log-log fit keeps and maps them to (ln x, ln y).
void log_log_points(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                    Eigen::ArrayXd& u, Eigen::ArrayXd& v) {
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) ++n;
  }
  u.resize(n);
  v.resize(n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      u[k] = std::log(x[i]);
      v[k] = std::log(y[i]);
      ++k;
    }
  }
}

}  // namespace

double r_squared(const Eigen::ArrayXd& observed,
                 const Eigen::ArrayXd& predicted) {
  if (observed.size() != predicted.size()) {
    throw Error(ErrorCode::length_mismatch,
                "observed has " + std::to_string(observed.size()) +
                    " values, predicted has " +
                    std::to_string(predicted.size()));
  }
  if (observed.size() < 2) {
    throw Error(ErrorCode::length_mismatch,
                "at least 2 observations are required");
  }
  if ((observed == observed[0]).all()) {
    throw Error(ErrorCode::degenerate_observations,
                "observed values are all identical");
  }
  const double ss_res = (observed - predicted).square().sum();
  const double ss_tot = (observed - observed.mean()).square().sum();
  if (ss_tot == 0.0) {
    throw Error(ErrorCode::degenerate_observations,
                "observed values carry no variance");
  }
  return 1.0 - ss_res / ss_tot;
}

FitResult fit_polynomial_xy(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                            int degree) {
  if (degree < 1 || degree > 4) {
    throw std::invalid_argument("polynomial degree must be in 1..4");
  }
  const Eigen::Index n = x.size();
  const Eigen::Index cols = degree + 1;
  if (n < cols) {
    throw Error(ErrorCode::rank_deficient,
                std::to_string(n) + " points cannot determine a degree-" +
                    std::to_string(degree) + " polynomial");
  }
  // Scaling x to [-1, 1] keeps the Vandermonde columns comparably sized;
  // coefficients are mapped back exactly afterwards.
  double scale = x.abs().maxCoeff();
  if (scale == 0.0) scale = 1.0;
  Eigen::MatrixXd vandermonde(n, cols);
  const Eigen::ArrayXd xs = x / scale;
  for (Eigen::Index k = 0; k < cols; ++k) {
    vandermonde.col(k) = xs.pow(static_cast<double>(degree - k)).matrix();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  if (qr.rank() < cols) {
    throw Error(ErrorCode::rank_deficient,
                "polynomial system is rank deficient (repeated x values?)");
  }
  const Eigen::VectorXd scaled = qr.solve(y.matrix());

  PolyCoeffs coeffs;
  coeffs.coeffs.resize(cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    coeffs.coeffs[k] = scaled[k] / std::pow(scale, static_cast<double>(degree - k));
  }

  const Eigen::ArrayXd predicted = (vandermonde * scaled).array();
  FitResult result;
  result.params = coeffs;
  result.r_squared = r_squared(y, predicted);
  result.iterations = 0;
  result.converged = true;
  result.residual_norm = (y - predicted).square().sum();
  return result;
}

FitResult fit_polynomial(const CdfPoints& pts, int degree) {
  return fit_polynomial_xy(pts.x, pts.p, degree);
}

FitResult fit_fermi_dirac_xy(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                             const FitConfig& config,
                             const std::optional<FermiParams>& init,
                             std::vector<double>* accepted_costs) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::length_mismatch,
                "x has " + std::to_string(x.size()) + " values, y has " +
                    std::to_string(y.size()));
  }
  if (x.size() < 4) {
    throw Error(ErrorCode::too_few_points,
                "Fermi-Dirac fit needs at least 4 points, got " +
                    std::to_string(x.size()));
  }

  FermiParams theta = init ? *init : initial_guess(x, y);
  Eigen::ArrayXd r = residuals(theta, x, y);
  double cost = r.square().sum();
  if (accepted_costs) accepted_costs->push_back(cost);

  const Eigen::Index n = x.size();
  Eigen::MatrixXd jac(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    jac.row(i) = fermi_jacobian(theta, x[i]).transpose();
  }

  double lambda = config.damping_init;
  const double nu = config.damping_factor;
  int iterations = 0;
  bool converged = false;

  while (iterations < config.max_iterations) {
    ++iterations;
    const Eigen::Matrix3d normal = jac.transpose() * jac;
    const Eigen::Vector3d gradient = jac.transpose() * r.matrix();
    Eigen::Matrix3d damped = normal;
    for (int k = 0; k < 3; ++k) {
      damped(k, k) += lambda * std::max(normal(k, k), kDiagFloor);
    }
    const Eigen::Vector3d delta = damped.ldlt().solve(gradient);
    if (!delta.allFinite()) {
      lambda *= nu;
      continue;
    }

    const Eigen::Vector3d param(theta.g, theta.mu, theta.t);
    bool small_step = true;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(delta[k]) >
          config.tol_step * (std::abs(param[k]) + config.tol_step)) {
        small_step = false;
        break;
      }
    }
    if (small_step) {
      converged = true;
      break;
    }

    // Positivity of g and t is kept by rejecting the step, not clamping.
    const FermiParams trial{theta.g + delta[0], theta.mu + delta[1],
                            theta.t + delta[2]};
    if (trial.g <= 0.0 || trial.t <= 0.0) {
      lambda *= nu;
      continue;
    }
    const Eigen::ArrayXd trial_r = residuals(trial, x, y);
    const double trial_cost = trial_r.square().sum();
    if (trial_cost < cost) {
      const double drop = (cost - trial_cost) /
                          std::max(cost, std::numeric_limits<double>::min());
      theta = trial;
      r = trial_r;
      cost = trial_cost;
      if (accepted_costs) accepted_costs->push_back(cost);
      for (Eigen::Index i = 0; i < n; ++i) {
        jac.row(i) = fermi_jacobian(theta, x[i]).transpose();
      }
      lambda /= nu;
      if (drop < config.tol_cost) {
        converged = true;
        break;
      }
    } else {
      lambda *= nu;
    }
  }

  FitResult result;
  result.params = theta;
  result.r_squared = r_squared(y, y - r);
  result.iterations = iterations;
  result.converged = converged;
  result.residual_norm = cost;
  result.space = config.space;
  return result;
}

FitResult fit_fermi_dirac(const CdfPoints& pts, const FitConfig& config,
                          const std::optional<FermiParams>& init,
                          std::vector<double>* accepted_costs) {
  if (config.space == FitSpace::linear) {
    FitResult result =
        fit_fermi_dirac_xy(pts.x, pts.p, config, init, accepted_costs);
    result.space = FitSpace::linear;
    return result;
  }
  Eigen::ArrayXd u, v;
  log_log_points(pts.x, pts.p, u, v);
  FitResult result = fit_fermi_dirac_xy(u, v, config, init, accepted_costs);
  result.space = FitSpace::log_log;
  return result;
}

FermiParams grid_oracle_fit(const CdfPoints& pts, const GridBounds& bounds,
                            int steps) {
  if (steps < 2) {
    throw std::invalid_argument("grid_oracle_fit needs at least 2 steps per axis");
  }
  auto node = [steps](const std::pair<double, double>& interval, int i) {
    return interval.first + (interval.second - interval.first) *
                                static_cast<double>(i) /
                                static_cast<double>(steps - 1);
  };
  FermiParams best{0.0, 0.0, 0.0};
  double best_sse = std::numeric_limits<double>::infinity();
  for (int ig = 0; ig < steps; ++ig) {
    for (int im = 0; im < steps; ++im) {
      for (int it = 0; it < steps; ++it) {
        const FermiParams p{node(bounds[0], ig), node(bounds[1], im),
                            node(bounds[2], it)};
        const double sse =
            (pts.p - eval_fermi_dirac(p, pts.x)).square().sum();
        if (sse < best_sse) {
          best_sse = sse;
          best = p;
        }
      }
    }
  }
  return best;
}

}  // namespace decfit
