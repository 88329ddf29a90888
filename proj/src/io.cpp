// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#include "decfit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string_view>

#include "decfit/model.hpp"

namespace decfit {

namespace {

constexpr std::string_view kHeader =
    "label,value_kind,measure,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10";

std::string fmt_sig4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string fmt_sig10(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_pct(double r2_fraction) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * r2_fraction);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::parse_error,
                "'" + std::string(field) + "' is not a finite number",
                line_no);
  }
  return value;
}

/// Model value at x in the space the fit ran in, mapped back to data units.
/// Returns false when a log-log fit cannot represent the point (x <= 0).
bool fitted_at(const FitResult& fit, double x, double& out) {
  const auto eval = [&fit](double arg) {
    if (const auto* fermi = std::get_if<FermiParams>(&fit.params)) {
      return eval_fermi_dirac(*fermi, arg);
    }
    return eval_polynomial(std::get<PolyCoeffs>(fit.params), arg);
  };
  if (fit.space == FitSpace::linear) {
    out = eval(x);
    return true;
  }
  if (x <= 0.0) return false;
  out = std::exp(eval(std::log(x)));
  return true;
}

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      width[c] = header[c].size();
    }
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    std::string out;
    const auto emit_line = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != 0) line += "  ";
        line += cells[c];
        if (c + 1 < cells.size()) {
          line.append(width[c] - cells[c].size(), ' ');
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line;
      out += '\n';
    };
    emit_line(header);
    for (const auto& row : rows) emit_line(row);
    return out;
  }
};

std::string fermi_section(const std::vector<const ReportRow*>& rows) {
  TextTable table;
  table.header = {"Year", "T", "C", "g", "mu", "R^2 (%)"};
  for (const ReportRow* row : rows) {
    const auto& p = std::get<FermiParams>(row->fit.params);
    table.rows.push_back({row->label, fmt_sig4(p.t), fmt_sig4(std::log(p.g)),
                          fmt_sig4(p.g), fmt_sig4(p.mu),
                          fmt_pct(row->fit.r_squared)});
  }
  return "Fermi-Dirac fit\n" + table.render();
}

std::string poly_section(const std::vector<const ReportRow*>& rows) {
  const auto& first = std::get<PolyCoeffs>(rows.front()->fit.params);
  const int terms = static_cast<int>(first.coeffs.size());
  TextTable table;
  table.header.push_back("Year");
  for (int k = 1; k <= terms; ++k) {
    table.header.push_back("P" + std::to_string(k));
  }
  table.header.push_back("R^2 (%)");
  for (const ReportRow* row : rows) {
    const auto& coeffs = std::get<PolyCoeffs>(row->fit.params).coeffs;
    std::vector<std::string> cells{row->label};
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      cells.push_back(fmt_sig4(coeffs[k]));
    }
    cells.push_back(fmt_pct(row->fit.r_squared));
    table.rows.push_back(std::move(cells));
  }
  return "Polynomial fit (degree " + std::to_string(terms - 1) + ")\n" +
         table.render();
}

}  // namespace

Dataset parse_decile_csv(const std::string& text) {
  Dataset dataset;
  std::set<std::string> labels;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t start = 0;

  while (start <= text.size()) {
    const std::size_t newline = text.find('\n', start);
    const std::size_t end = newline == std::string::npos ? text.size() : newline;
    const std::string_view line = trim(std::string_view(text).substr(start, end - start));
    ++line_no;
    start = end + 1;
    const bool last = newline == std::string::npos;
    if (line.empty()) {
      if (last) break;
      continue;
    }

    if (!header_seen) {
      if (line != kHeader) {
        throw Error(ErrorCode::parse_error,
                    "expected header '" + std::string(kHeader) + "'", line_no);
      }
      header_seen = true;
      if (last) break;
      continue;
    }

    const std::vector<std::string_view> fields = split_fields(line);
    if (fields.size() < 3) {
      throw Error(ErrorCode::parse_error,
                  "row has " + std::to_string(fields.size()) +
                      " fields, expected label, value_kind, measure and 10 values",
                  line_no);
    }
    const std::string label(fields[0]);
    if (label.empty()) {
      throw Error(ErrorCode::parse_error, "empty label", line_no);
    }
    ValueKind kind;
    if (fields[1] == "mean") {
      kind = ValueKind::mean;
    } else if (fields[1] == "lower_limit") {
      kind = ValueKind::lower_limit;
    } else {
      throw Error(ErrorCode::parse_error,
                  "unknown value_kind '" + std::string(fields[1]) +
                      "' (expected mean or lower_limit)",
                  line_no);
    }
    std::vector<double> values;
    values.reserve(fields.size() - 3);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      values.push_back(parse_number(fields[i], line_no));
    }

    DecileSeries series;
    try {
      series = validate_series(label, values, kind, std::string(fields[2]));
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), line_no);
    }

    if (!labels.insert(label).second) {
      throw Error(ErrorCode::parse_error, "duplicate label '" + label + "'",
                  line_no);
    }
    if (!dataset.series.empty()) {
      const DecileSeries& first = dataset.series.front();
      if (series.value_kind != first.value_kind ||
          series.measure != first.measure) {
        throw Error(ErrorCode::parse_error,
                    "series '" + label +
                        "' does not share the dataset's value_kind/measure",
                    line_no);
      }
    }
    dataset.series.push_back(std::move(series));
    if (last) break;
  }

  if (!header_seen && !text.empty()) {
    // Whitespace-only input carries no header either.
    throw Error(ErrorCode::parse_error, "missing header line", 1);
  }
  return dataset;
}

std::string dataset_to_csv(const Dataset& dataset) {
  std::string out(kHeader);
  out += '\n';
  for (const DecileSeries& s : dataset.series) {
    out += s.label;
    out += ',';
    out += value_kind_name(s.value_kind);
    out += ',';
    out += s.measure;
    for (int i = 0; i < 10; ++i) {
      out += ',';
      out += fmt_sig10(s.values[i]);
    }
    out += '\n';
  }
  return out;
}

Report run_pipeline(const Dataset& dataset, const ModelSelection& models,
                    const FitConfig& config) {
  if (dataset.series.empty()) {
    throw Error(ErrorCode::empty_dataset, "dataset contains no series");
  }
  Report report;
  for (const DecileSeries& raw : dataset.series) {
    CdfPoints pts;
    try {
      const std::vector<double> values(raw.values.data(),
                                       raw.values.data() + raw.values.size());
      const DecileSeries series =
          validate_series(raw.label, values, raw.value_kind, raw.measure);
      pts = series.value_kind == ValueKind::mean
                ? build_mean_cdf(series)
                : build_lower_limit_cdf(series);
    } catch (const Error& e) {
      report.errors.push_back({raw.label, e.what()});
      continue;
    }

    if (models.fermi) {
      try {
        report.rows.push_back({raw.label, "fermi", fit_fermi_dirac(pts, config)});
      } catch (const Error& e) {
        report.errors.push_back({raw.label, std::string("fermi: ") + e.what()});
      }
    }
    if (models.poly) {
      try {
        FitResult fit;
        if (config.space == FitSpace::linear) {
          fit = fit_polynomial(pts, models.degree);
        } else {
          // The log-log polynomial models ln p against ln x over the same
          // point subset the log-log Fermi-Dirac fit uses.
          Eigen::Index n = 0;
          for (Eigen::Index i = 0; i < pts.x.size(); ++i) {
            if (pts.x[i] > 0.0 && pts.p[i] > 0.0) ++n;
          }
          Eigen::ArrayXd u(n), v(n);
          Eigen::Index k = 0;
          for (Eigen::Index i = 0; i < pts.x.size(); ++i) {
            if (pts.x[i] > 0.0 && pts.p[i] > 0.0) {
              u[k] = std::log(pts.x[i]);
              v[k] = std::log(pts.p[i]);
              ++k;
            }
          }
          fit = fit_polynomial_xy(u, v, models.degree);
          fit.space = FitSpace::log_log;
        }
        report.rows.push_back({raw.label, "poly", std::move(fit)});
      } catch (const Error& e) {
        report.errors.push_back({raw.label, std::string("poly: ") + e.what()});
      }
    }
  }
  return report;
}

std::string emit_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    Eigen::Index poly_terms = 0;
    for (const ReportRow& row : report.rows) {
      if (const auto* poly = std::get_if<PolyCoeffs>(&row.fit.params)) {
        poly_terms = std::max(poly_terms, poly->coeffs.size());
      }
    }
    std::string out = "label,model,t,c,g,mu";
    for (Eigen::Index k = 1; k <= poly_terms; ++k) {
      out += ",p" + std::to_string(k);
    }
    out += ",r_squared_pct,converged\n";
    for (const ReportRow& row : report.rows) {
      out += row.label;
      out += ',';
      out += row.model;
      if (const auto* fermi = std::get_if<FermiParams>(&row.fit.params)) {
        out += ',' + fmt_sig4(fermi->t);
        out += ',' + fmt_sig4(std::log(fermi->g));
        out += ',' + fmt_sig4(fermi->g);
        out += ',' + fmt_sig4(fermi->mu);
        for (Eigen::Index k = 0; k < poly_terms; ++k) out += ',';
      } else {
        const auto& coeffs = std::get<PolyCoeffs>(row.fit.params).coeffs;
        out += ",,,,";
        for (Eigen::Index k = 0; k < poly_terms; ++k) {
          out += ',';
          if (k < coeffs.size()) out += fmt_sig4(coeffs[k]);
        }
      }
      out += ',' + fmt_pct(row.fit.r_squared);
      out += ',';
      out += row.fit.converged ? "true" : "false";
      out += '\n';
    }
    return out;
  }

  std::vector<const ReportRow*> fermi_rows;
  std::vector<const ReportRow*> poly_rows;
  for (const ReportRow& row : report.rows) {
    if (std::holds_alternative<FermiParams>(row.fit.params)) {
      fermi_rows.push_back(&row);
    } else {
      poly_rows.push_back(&row);
    }
  }
  if (fermi_rows.empty() && poly_rows.empty()) {
    return "Year  R^2 (%)\n";
  }
  std::string out;
  if (!fermi_rows.empty()) {
    out += fermi_section(fermi_rows);
  }
  if (!poly_rows.empty()) {
    if (!out.empty()) out += '\n';
    out += poly_section(poly_rows);
  }
  for (const ReportRow& row : report.rows) {
    if (!row.fit.converged) {
      out += "note: " + row.label + " " + row.model + " fit did not converge\n";
    }
  }
  return out;
}

std::string emit_plot_data(const CdfPoints& pts, const FitResult& fit,
                           int samples) {
  if (samples < 2) {
    throw std::invalid_argument("emit_plot_data needs at least 2 samples");
  }
  std::string out = "# observed\nx,p,fitted\n";
  for (Eigen::Index i = 0; i < pts.x.size(); ++i) {
    out += fmt_sig10(pts.x[i]);
    out += ',' + fmt_sig10(pts.p[i]);
    out += ',';
    double value = 0.0;
    const bool in_domain = fit.space == FitSpace::linear
                               ? fitted_at(fit, pts.x[i], value)
                               : (pts.x[i] > 0.0 && pts.p[i] > 0.0 &&
                                  fitted_at(fit, pts.x[i], value));
    if (in_domain) out += fmt_sig10(value);
    out += '\n';
  }

  double lo = 0.0;
  const double hi = 1.2 * pts.x.maxCoeff();
  if (fit.space == FitSpace::log_log) {
    lo = hi;
    for (Eigen::Index i = 0; i < pts.x.size(); ++i) {
      if (pts.x[i] > 0.0) {
        lo = std::min(lo, pts.x[i]);
      }
    }
  }
  out += "# curve\nx,fitted\n";
  for (int j = 0; j < samples; ++j) {
    const double x = lo + (hi - lo) * static_cast<double>(j) /
                              static_cast<double>(samples - 1);
    double value = 0.0;
    fitted_at(fit, x, value);
    out += fmt_sig10(x);
    out += ',' + fmt_sig10(value);
    out += '\n';
  }
  return out;
}

}  // namespace decfit
