// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "decfit/cdf.hpp"

#include <cmath>
#include <cstddef>

namespace decfit {

const char* value_kind_name(ValueKind kind) noexcept {
  return kind == ValueKind::mean ? "mean" : "lower_limit";
}

namespace {

bool valid_measure(const std::string& measure) {
  if (measure == "gross" || measure == "disposable") return true;
  const std::string prefix = "category:";
  return measure.size() > prefix.size() &&
         measure.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

DecileSeries validate_series(const std::string& label,
                             const std::vector<double>& values,
                             ValueKind value_kind,
                             const std::string& measure) {
  if (values.size() != 10) {
    throw Error(ErrorCode::wrong_arity,
                "series '" + label + "' has " + std::to_string(values.size()) +
                    " values, expected 10");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw Error(ErrorCode::negative_value,
                  "series '" + label + "' value d" + std::to_string(i + 1) +
                      " is not a finite non-negative number");
    }
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw Error(ErrorCode::non_monotone,
                  "series '" + label + "' values must strictly increase (d" +
                      std::to_string(i) + " >= d" + std::to_string(i + 1) +
                      ")");
    }
  }
  if (value_kind == ValueKind::lower_limit && values[0] != 0.0) {
    throw Error(ErrorCode::bad_lower_bound,
                "series '" + label +
                    "' is a lower-limit series, so d1 must be 0");
  }
  // A mean series starting at 0 would duplicate the (0, 100%) anchor of the
  // constructed point set, so the first mean value must be positive.
  if (value_kind == ValueKind::mean && values[0] == 0.0) {
    throw Error(ErrorCode::bad_lower_bound,
                "series '" + label + "' is a mean series, so d1 must be > 0");
  }
  if (!valid_measure(measure)) {
    throw Error(ErrorCode::parse_error,
                "series '" + label + "' has unknown measure '" + measure +
                    "' (expected gross, disposable, or category:<name>)");
  }
  DecileSeries s;
  s.label = label;
  for (int i = 0; i < 10; ++i) s.values[i] = values[static_cast<std::size_t>(i)];
  s.value_kind = value_kind;
  s.measure = measure;
  return s;
}

CdfPoints build_mean_cdf(const DecileSeries& s) {
  if (s.value_kind != ValueKind::mean) {
    throw Error(ErrorCode::wrong_kind,
                "series '" + s.label + "' is not a mean series");
  }
  CdfPoints pts;
  pts.kind = ValueKind::mean;
  pts.x.resize(11);
  pts.p.resize(11);
  pts.x[0] = 0.0;
  pts.p[0] = 100.0;
  for (int i = 0; i < 10; ++i) {
    pts.x[i + 1] = s.values[i];
    pts.p[i + 1] = 90.0 - 10.0 * i;
  }
  return pts;
}

CdfPoints build_lower_limit_cdf(const DecileSeries& s) {
  if (s.value_kind != ValueKind::lower_limit) {
    throw Error(ErrorCode::wrong_kind,
                "series '" + s.label + "' is not a lower-limit series");
  }
  CdfPoints pts;
  pts.kind = ValueKind::lower_limit;
  pts.x.resize(10);
  pts.p.resize(10);
  pts.x[0] = 0.0;
  pts.p[0] = 100.0;
  for (int i = 1; i < 10; ++i) {
    pts.x[i] = s.values[i];
    pts.p[i] = 100.0 - 10.0 * i;
  }
  return pts;
}

}  // namespace decfit
