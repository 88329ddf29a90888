// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "decfit/errors.hpp"

namespace decfit {

/// How a decile value describes its decile: the decile's mean expenditure,
/// or the lower expenditure limit of the decile.
enum class ValueKind { mean, lower_limit };

/// One labeled year of 10 decile expenditure values plus metadata.
/// Invariants (enforced by validate_series): exactly 10 values, strictly
/// increasing, all finite and >= 0; lower_limit series start at 0 and mean
/// series start above 0; measure is "gross", "disposable", or
/// "category:<name>".
struct DecileSeries {
  std::string label;
  Eigen::Array<double, 10, 1> values;
  ValueKind value_kind;
  std::string measure;
};

/// Cumulative-distribution points (x = expenditure, p = probability in
/// percent of the population spending more than x).  Invariants: x strictly
/// increasing, p strictly decreasing, first point (0, 100); kind == mean
/// gives 11 points ending at p = 0, kind == lower_limit gives 10 points
/// ending at p = 10.
struct CdfPoints {
  Eigen::ArrayXd x;
  Eigen::ArrayXd p;
  ValueKind kind;
};

const char* value_kind_name(ValueKind kind) noexcept;

/// Checks every DecileSeries invariant and returns the validated series.
/// Throws Error with WRONG_ARITY (count != 10), NEGATIVE_VALUE (negative or
/// non-finite entry), NON_MONOTONE (not strictly increasing),
/// BAD_LOWER_BOUND (lower_limit series not starting at 0, or mean series
/// starting at 0), or PARSE_ERROR (unknown measure).
DecileSeries validate_series(const std::string& label,
                             const std::vector<double>& values,
                             ValueKind value_kind, const std::string& measure);

/// Builds the 11-point set (0,100),(x1,90),(x2,80),...,(x10,0) from a mean
/// series: below the lowest decile mean everyone spends more, above the
/// highest nobody does.  Throws WRONG_KIND for non-mean input.
CdfPoints build_mean_cdf(const DecileSeries& s);

/// Builds the 10-point set (0,100),(x2,90),(x3,80),...,(x10,10) from a
/// lower-limit series: 10% of the population spends more than the top
/// decile's lower bound, so no 0% point exists.  Throws WRONG_KIND for
/// non-lower_limit input.
CdfPoints build_lower_limit_cdf(const DecileSeries& s);

}  // namespace decfit
