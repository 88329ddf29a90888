// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "decfit/io.hpp"

namespace {

constexpr int kPlotSamples = 400;

// Exit codes: 0 success, 1 any per-series failure, 2 usage or input failure.
constexpr int kExitSeriesFailure = 1;
constexpr int kExitUsage = 2;

std::string sanitize(const std::string& label) {
  std::string out;
  for (const char c : label) {
    const auto uc = static_cast<unsigned char>(c);
    out += (std::isalnum(uc) || c == '.' || c == '_' || c == '-') ? c : '-';
  }
  return out;
}

const decfit::DecileSeries* find_series(const decfit::Dataset& dataset,
                                        const std::string& label) {
  for (const auto& series : dataset.series) {
    if (series.label == label) return &series;
  }
  return nullptr;
}

bool write_plots(const decfit::Dataset& dataset, const decfit::Report& report,
                 const std::string& prefix) {
  bool ok = true;
  for (const auto& row : report.rows) {
    const decfit::DecileSeries* series = find_series(dataset, row.label);
    if (series == nullptr) continue;
    const decfit::CdfPoints pts =
        series->value_kind == decfit::ValueKind::mean
            ? decfit::build_mean_cdf(*series)
            : decfit::build_lower_limit_cdf(*series);
    const std::string path =
        prefix + "_" + sanitize(row.label) + "_" + row.model + ".csv";
    std::ofstream out(path, std::ios::binary);
    out << decfit::emit_plot_data(pts, row.fit, kPlotSamples);
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      ok = false;
    }
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fits decile expenditure tables with Fermi-Dirac and "
               "polynomial cumulative-distribution models"};
  app.require_subcommand(1);

  std::string input;
  std::string model = "both";
  std::string space = "linear";
  std::string format = "table";
  std::string plot_prefix;
  int degree = 1;
  int max_iter = 200;

  CLI::App* fit = app.add_subcommand("fit", "Fit one decile CSV file");
  fit->add_option("input", input, "decile CSV file (see data/sample.csv)")
      ->required();
  fit->add_option("--model", model, "model selection")
      ->check(CLI::IsMember({"fermi", "poly", "both"}))
      ->capture_default_str();
  fit->add_option("--degree", degree, "polynomial degree")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  fit->add_option("--space", space, "fitting space")
      ->check(CLI::IsMember({"linear", "loglog"}))
      ->capture_default_str();
  fit->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  fit->add_option("--plot", plot_prefix,
                  "write per-fit plot data to <prefix>_<label>_<model>.csv");
  fit->add_option("--max-iter", max_iter, "iteration limit for the solver")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << input << "\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  decfit::Dataset dataset;
  try {
    dataset = decfit::parse_decile_csv(buffer.str());
    dataset.source = input;
  } catch (const decfit::Error& e) {
    std::cerr << "error: " << input << ": " << e.what() << "\n";
    return kExitUsage;
  }

  decfit::ModelSelection selection;
  selection.fermi = model != "poly";
  selection.poly = model != "fermi";
  selection.degree = degree;

  decfit::FitConfig config;
  config.max_iterations = max_iter;
  config.space =
      space == "loglog" ? decfit::FitSpace::log_log : decfit::FitSpace::linear;

  decfit::Report report;
  try {
    report = decfit::run_pipeline(dataset, selection, config);
  } catch (const decfit::Error& e) {
    std::cerr << "error: " << input << ": " << e.what() << "\n";
    return kExitUsage;
  }

  std::cout << decfit::emit_report(report, format == "csv"
                                               ? decfit::ReportFormat::csv
                                               : decfit::ReportFormat::table);

  bool failed = !report.errors.empty();
  for (const auto& error : report.errors) {
    std::cerr << "error: " << error.label << ": " << error.message << "\n";
  }
  if (!plot_prefix.empty() && !write_plots(dataset, report, plot_prefix)) {
    failed = true;
  }
  return failed ? kExitSeriesFailure : 0;
}
