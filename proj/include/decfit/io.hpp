// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "decfit/cdf.hpp"
#include "decfit/errors.hpp"
#include "decfit/fit.hpp"

namespace decfit {

/// A parsed decile table: one or more series sharing a single
/// (value_kind, measure) pair, with unique labels.
struct Dataset {
  std::vector<DecileSeries> series;
  std::string source;
};

/// Which models a pipeline run fits.
struct ModelSelection {
  bool fermi = true;
  bool poly = true;
  int degree = 1;  ///< polynomial degree, 1..4
};

/// One fitted (series, model) pair. model is "fermi" or "poly".
struct ReportRow {
  std::string label;
  std::string model;
  FitResult fit;
};

/// A per-series failure recorded by run_pipeline instead of aborting.
struct SeriesError {
  std::string label;
  std::string message;
};

/// Fit results for a dataset, one row per (series, model) requested, in
/// input order with "fermi" before "poly" within a series.
struct Report {
  std::vector<ReportRow> rows;
  std::vector<SeriesError> errors;
  std::string format_version = "1";
};

enum class ReportFormat { table, csv };

/// Parses CSV text with header label,value_kind,measure,d1,...,d10 into a
/// validated Dataset ('.' decimal point, no thousands separators; blank
/// lines skipped, trailing CR tolerated).  Throws Error with PARSE_ERROR
/// for malformed content and the validate_series codes for invalid values,
/// each carrying the 1-based line number.
Dataset parse_decile_csv(const std::string& text);

/// Renders a Dataset back to the parse_decile_csv format, values printed
/// with up to 10 significant digits so parse -> emit -> parse is lossless.
std::string dataset_to_csv(const Dataset& dataset);

/// Fits every series of the dataset with the selected models.  Per-series
/// failures (validation or fit errors) are collected into Report.errors
/// and the remaining series still produce rows.  Throws EMPTY_DATASET when
/// the dataset has no series.
Report run_pipeline(const Dataset& dataset, const ModelSelection& models,
                    const FitConfig& config = {});

/// Renders a Report as an aligned text table (one section per model) or as
/// CSV.  Parameters carry 4 significant digits; R^2 is a percent with 2
/// decimals; Fermi-Dirac rows report t, c = ln(g), g, and mu.  Output is
/// byte-deterministic for a given report.
std::string emit_report(const Report& report, ReportFormat format);

/// Emits plot-ready CSV for one fitted point set: an "observed" section
/// (x, p, fitted value at x; fitted is blank for points a log-log fit
/// excluded) and a "curve" section of `samples` model values over evenly
/// spaced x in [0, 1.2 * x_max] (log-log fits start at the smallest
/// positive observed x instead of 0).  samples must be >= 2.
std::string emit_plot_data(const CdfPoints& pts, const FitResult& fit,
                           int samples);

}  // namespace decfit
