// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "decfit/cdf.hpp"
#include "decfit/model.hpp"
#include "doctest.h"

using decfit::build_lower_limit_cdf;
using decfit::build_mean_cdf;
using decfit::CdfPoints;
using decfit::DecileSeries;
using decfit::Error;
using decfit::ErrorCode;
using decfit::validate_series;
using decfit::ValueKind;

namespace {

std::vector<double> ramp(double start, double step) {
  std::vector<double> v(10);
  for (int i = 0; i < 10; ++i) v[static_cast<std::size_t>(i)] = start + step * i;
  return v;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a decfit::Error");
  return ErrorCode::parse_error;
}

void check_invariants(const CdfPoints& pts) {
  REQUIRE(pts.x.size() == pts.p.size());
  CHECK(pts.x[0] == 0.0);
  CHECK(pts.p[0] == 100.0);
  for (Eigen::Index i = 1; i < pts.x.size(); ++i) {
    CHECK(pts.x[i] > pts.x[i - 1]);
    CHECK(pts.p[i] < pts.p[i - 1]);
    CHECK(pts.p[i - 1] - pts.p[i] == doctest::Approx(10.0));
  }
  if (pts.kind == ValueKind::mean) {
    CHECK(pts.x.size() == 11);
    CHECK(pts.p[pts.p.size() - 1] == 0.0);
  } else {
    CHECK(pts.x.size() == 10);
    CHECK(pts.p[pts.p.size() - 1] == 10.0);
  }
}

}  // namespace

TEST_CASE("validate_series accepts a strictly increasing mean series") {
  const DecileSeries s =
      validate_series("Y", ramp(10.0, 10.0), ValueKind::mean, "gross");
  CHECK(s.label == "Y");
  CHECK(s.values[0] == 10.0);
  CHECK(s.values[9] == 100.0);
}

TEST_CASE("validate_series rejects ties and decreases as NON_MONOTONE") {
  auto tied = ramp(10.0, 10.0);
  tied[2] = tied[1];
  CHECK(code_of([&] {
          validate_series("Y", tied, ValueKind::mean, "gross");
        }) == ErrorCode::non_monotone);

  auto dip = ramp(10.0, 10.0);
  dip[5] = 5.0;
  CHECK(code_of([&] {
          validate_series("Y", dip, ValueKind::mean, "gross");
        }) == ErrorCode::non_monotone);
}

TEST_CASE("validate_series rejects negative and non-finite values") {
  auto negative = ramp(10.0, 10.0);
  negative[0] = -1.0;
  CHECK(code_of([&] {
          validate_series("Y", negative, ValueKind::mean, "gross");
        }) == ErrorCode::negative_value);

  auto nan = ramp(10.0, 10.0);
  nan[4] = std::nan("");
  CHECK(code_of([&] {
          validate_series("Y", nan, ValueKind::mean, "gross");
        }) == ErrorCode::negative_value);

  auto inf = ramp(10.0, 10.0);
  inf[9] = std::numeric_limits<double>::infinity();
  CHECK(code_of([&] {
          validate_series("Y", inf, ValueKind::mean, "gross");
        }) == ErrorCode::negative_value);
}

TEST_CASE("validate_series rejects wrong value counts as WRONG_ARITY") {
  auto nine = ramp(10.0, 10.0);
  nine.pop_back();
  CHECK(code_of([&] {
          validate_series("Y", nine, ValueKind::mean, "gross");
        }) == ErrorCode::wrong_arity);

  auto eleven = ramp(10.0, 10.0);
  eleven.push_back(200.0);
  CHECK(code_of([&] {
          validate_series("Y", eleven, ValueKind::mean, "gross");
        }) == ErrorCode::wrong_arity);
}

TEST_CASE("validate_series checks the first value against the kind") {
  auto nonzero = ramp(10.0, 10.0);
  nonzero[0] = 5.0;
  CHECK(code_of([&] {
          validate_series("Y", nonzero, ValueKind::lower_limit, "gross");
        }) == ErrorCode::bad_lower_bound);

  // A mean series starting at 0 would collide with the (0, 100%) anchor.
  auto zero_mean = ramp(0.0, 10.0);
  CHECK(code_of([&] {
          validate_series("Y", zero_mean, ValueKind::mean, "gross");
        }) == ErrorCode::bad_lower_bound);

  const DecileSeries ok =
      validate_series("Y", ramp(0.0, 10.0), ValueKind::lower_limit, "gross");
  CHECK(ok.values[0] == 0.0);
}

TEST_CASE("validate_series accepts the documented measures only") {
  const auto values = ramp(10.0, 10.0);
  CHECK_NOTHROW(validate_series("Y", values, ValueKind::mean, "disposable"));
  CHECK_NOTHROW(validate_series("Y", values, ValueKind::mean, "category:food"));
  CHECK(code_of([&] {
          validate_series("Y", values, ValueKind::mean, "category:");
        }) == ErrorCode::parse_error);
  CHECK(code_of([&] {
          validate_series("Y", values, ValueKind::mean, "net");
        }) == ErrorCode::parse_error);
}

TEST_CASE("mean construction maps deciles to the 11-point set") {
  const DecileSeries s =
      validate_series("Y", ramp(10.0, 10.0), ValueKind::mean, "gross");
  const CdfPoints pts = build_mean_cdf(s);
  check_invariants(pts);
  for (int i = 0; i < 10; ++i) {
    CHECK(pts.x[i + 1] == doctest::Approx(10.0 * (i + 1)));
    CHECK(pts.p[i + 1] == doctest::Approx(90.0 - 10.0 * i));
  }
}

TEST_CASE("mean construction on synthetic curve-inverted deciles") {
  // Decile values produced by inverting the Fermi-Dirac curve at
  // p = 90..10 and extending the last step, so they are strictly
  // increasing by construction.
  const decfit::FermiParams p{100.0, 8.196, 0.4881};
  std::vector<double> values(10);
  for (int i = 0; i < 9; ++i) {
    const double prob = 90.0 - 10.0 * i;
    values[static_cast<std::size_t>(i)] =
        p.mu + p.t * std::log(p.g / prob - 1.0);
  }
  values[9] = 2.0 * values[8] - values[7];
  const DecileSeries s =
      validate_series("Y", values, ValueKind::mean, "disposable");
  const CdfPoints pts = build_mean_cdf(s);
  check_invariants(pts);
  CHECK(pts.x.size() == 11);
  CHECK(pts.p[10] == 0.0);
  for (int i = 1; i < 10; ++i) {
    CHECK(decfit::eval_fermi_dirac(p, pts.x[i]) == doctest::Approx(pts.p[i]));
  }
}

TEST_CASE("mean construction rejects lower-limit input") {
  const DecileSeries s =
      validate_series("Y", ramp(0.0, 10.0), ValueKind::lower_limit, "gross");
  CHECK(code_of([&] { build_mean_cdf(s); }) == ErrorCode::wrong_kind);
}

TEST_CASE("lower-limit construction maps deciles to the 10-point set") {
  std::vector<double> values{0, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  const DecileSeries s =
      validate_series("Y", values, ValueKind::lower_limit, "gross");
  const CdfPoints pts = build_lower_limit_cdf(s);
  check_invariants(pts);
  CHECK(pts.x.size() == 10);
  CHECK(pts.x[1] == 20.0);
  CHECK(pts.p[1] == 90.0);
  CHECK(pts.x[9] == 100.0);
  CHECK(pts.p[9] == 10.0);
}

TEST_CASE("lower-limit construction rejects mean input") {
  const DecileSeries s =
      validate_series("Y", ramp(10.0, 10.0), ValueKind::mean, "gross");
  CHECK(code_of([&] { build_lower_limit_cdf(s); }) == ErrorCode::wrong_kind);
}

TEST_CASE("random valid series always produce invariant-satisfying points") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> dstart(0.5, 300.0);
  std::uniform_real_distribution<double> dstep(0.01, 150.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(10);
    double x = dstart(rng);
    for (auto& v : values) {
      v = x;
      x += dstep(rng);
    }
    const DecileSeries mean =
        validate_series("Y", values, ValueKind::mean, "gross");
    check_invariants(build_mean_cdf(mean));

    values[0] = 0.0;
    const DecileSeries lower =
        validate_series("Y", values, ValueKind::lower_limit, "gross");
    check_invariants(build_lower_limit_cdf(lower));
  }
}
