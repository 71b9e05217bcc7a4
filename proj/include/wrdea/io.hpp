#pragma once

// File ingestion and report emission.
//
// Dataset CSV: header `dmu,x1..xm,y1..ys`; every column whose name begins
// with `x` is an input and every column beginning with `y` is an output, and
// all inputs precede all outputs. Restrictions: a JSON array of
// {"side": "input"|"output", "coeffs": {"<1-based factor>": coefficient}}
// objects, each meaning the homogeneous form `sum coeff_i w_i <= 0`.
// Reports: JSON or CSV with 6-significant-digit numbers, UTF-8, LF line
// endings and a fixed field order, so identical runs emit identical bytes.

#include <cstdio>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrdea/data.hpp"
#include "wrdea/pipeline.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string data_path;
  std::string restrictions_path;  // empty: no restrictions
  std::string output_path;
  OutputFormat output_format = OutputFormat::Json;
  Tolerances tolerances{};
  bool force_grs = false;
  unsigned long seed = 1;  // for the random-objective property harness
};

namespace detail {

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline double parse_cell(const std::string& cell, size_t row, size_t column) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ValidationError("dataset: non-numeric cell at row " + std::to_string(row) +
                          ", column " + std::to_string(column));
  if (value < 0.0)
    throw ValidationError("dataset: negative value at row " + std::to_string(row) +
                          ", column " + std::to_string(column));
  return value;
}

// Locale-independent 6-significant-digit formatting.
inline std::string format6(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value,
                    std::chars_format::general, 6);
  return std::string(buffer, ptr);
}

/// Rounds to 6 significant digits so the emitted number carries exactly the
/// documented precision.
inline double round6(double value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format6(value);
  double rounded = value;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

inline const char* group_name(DmuGroup group) {
  switch (group) {
    case DmuGroup::Group1Efficient: return "group1_efficient";
    case DmuGroup::Group1ZeroSlack: return "group1_zero_slack";
    case DmuGroup::Group2: return "group2";
  }
  return "group2";
}

inline const char* rts_name(RtsClass rts) {
  switch (rts) {
    case RtsClass::Increasing: return "I";
    case RtsClass::Constant: return "C";
    case RtsClass::Decreasing: return "D";
  }
  return "C";
}

// Reference-set members are indices into the evaluated instance; reports
// produced by run_all carry them one-to-one and in order.
inline std::string label_of(const std::vector<DmuReport>& reports, Eigen::Index j) {
  const auto idx = static_cast<size_t>(j);
  if (j >= 0 && idx < reports.size() && reports[idx].dmu_index == j)
    return reports[idx].label;
  return "#" + std::to_string(j + 1);
}

}  // namespace detail

/// Reads and validates a dataset CSV.
inline DeaInstance parse_dataset(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("dataset: cannot open '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(file, line);) {
    line = detail::strip_cr(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError("dataset: '" + path + "' is empty");

  const auto header = detail::split_csv_line(lines.front());
  if (header.empty() || header.front() != "dmu")
    throw ValidationError("dataset: header must start with 'dmu'");
  Eigen::Index m = 0, s = 0;
  for (size_t c = 1; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (!name.empty() && name.front() == 'x') {
      if (s > 0)
        throw ValidationError("dataset: input column '" + name +
                              "' appears after an output column; inputs must precede outputs");
      ++m;
    } else if (!name.empty() && name.front() == 'y') {
      ++s;
    } else {
      throw ValidationError("dataset: header column " + std::to_string(c + 1) + " ('" +
                            name + "') must begin with 'x' or 'y'");
    }
  }
  if (m == 0 || s == 0)
    throw ValidationError("dataset: need at least one x column and one y column");

  DeaInstance instance;
  const auto n = static_cast<Eigen::Index>(lines.size() - 1);
  instance.inputs.resize(m, n);
  instance.outputs.resize(s, n);
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto cells = detail::split_csv_line(lines[r]);
    if (cells.size() != header.size())
      throw ValidationError("dataset: row " + std::to_string(r + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    const std::string& label = cells.front();
    if (label.empty())
      throw ValidationError("dataset: empty DMU label at row " + std::to_string(r + 1));
    for (const std::string& existing : instance.labels)
      if (existing == label)
        throw ValidationError("dataset: duplicate DMU label '" + label + "' at row " +
                              std::to_string(r + 1) + ", column 1");
    instance.labels.push_back(label);
    const auto col = static_cast<Eigen::Index>(r - 1);
    for (Eigen::Index i = 0; i < m; ++i)
      instance.inputs(i, col) =
          detail::parse_cell(cells[static_cast<size_t>(1 + i)], r + 1,
                             static_cast<size_t>(2 + i));
    for (Eigen::Index i = 0; i < s; ++i)
      instance.outputs(i, col) =
          detail::parse_cell(cells[static_cast<size_t>(1 + m + i)], r + 1,
                             static_cast<size_t>(2 + m + i));
  }
  validate_instance(instance);
  return instance;
}

/// Reads restriction specs from a JSON file; order is preserved.
inline std::vector<RestrictionSpec> parse_restrictions(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("restrictions: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("restrictions: invalid JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_array()) throw ValidationError("restrictions: top-level JSON must be an array");

  std::vector<RestrictionSpec> specs;
  for (size_t idx = 0; idx < doc.size(); ++idx) {
    const auto& entry = doc[idx];
    const std::string where = "restrictions: entry " + std::to_string(idx + 1);
    if (!entry.is_object() || !entry.contains("side") || !entry.contains("coeffs"))
      throw ValidationError(where + " must be an object with 'side' and 'coeffs'");
    RestrictionSpec spec;
    const std::string side = entry["side"].get<std::string>();
    if (side == "input")
      spec.side = RestrictionSide::Input;
    else if (side == "output")
      spec.side = RestrictionSide::Output;
    else
      throw ValidationError(where + ": unknown side '" + side + "'");
    if (!entry["coeffs"].is_object() || entry["coeffs"].empty())
      throw ValidationError(where + ": 'coeffs' must be a non-empty object");
    for (const auto& [key, value] : entry["coeffs"].items()) {
      int factor = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), factor);
      if (ec != std::errc{} || ptr != key.data() + key.size() || factor < 1)
        throw ValidationError(where + ": bad factor index '" + key + "'");
      if (!value.is_number())
        throw ValidationError(where + ": coefficient for factor " + key +
                              " is not a number");
      spec.coefficients[factor] = value.get<double>();
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

/// Renders reports to a string; `write_report` writes the same bytes to disk.
inline std::string render_report(const std::vector<DmuReport>& reports, OutputFormat format) {
  if (reports.empty()) throw ValidationError("report: nothing to write");
  using ordered_json = nlohmann::ordered_json;
  if (format == OutputFormat::Json) {
    ordered_json out = ordered_json::array();
    for (const DmuReport& report : reports) {
      ordered_json row;
      row["dmu"] = report.label;
      if (report.error) {
        row["error"] = *report.error;
        out.push_back(std::move(row));
        continue;
      }
      row["theta_star"] = detail::round6(report.theta_star);
      row["slack_sum"] = detail::round6(report.slack_sum);
      row["group"] = detail::group_name(report.group);
      row["rts"] = detail::rts_name(report.rts);
      row["u_lower"] = detail::round6(report.bounds.lower);
      if (report.bounds.upper)
        row["u_upper"] = detail::round6(*report.bounds.upper);
      else
        row["u_upper"] = "inf";
      ordered_json projection;
      projection["inputs"] = ordered_json::array();
      for (Eigen::Index i = 0; i < report.rts_point_inputs.size(); ++i)
        projection["inputs"].push_back(detail::round6(report.rts_point_inputs[i]));
      projection["outputs"] = ordered_json::array();
      for (Eigen::Index i = 0; i < report.rts_point_outputs.size(); ++i)
        projection["outputs"].push_back(detail::round6(report.rts_point_outputs[i]));
      row["projection"] = std::move(projection);
      if (report.grs) {
        row["grs_members"] = ordered_json::array();
        row["grs_weights"] = ordered_json::array();
        for (Eigen::Index j : report.grs->members) {
          row["grs_members"].push_back(detail::label_of(reports, j));
          row["grs_weights"].push_back(detail::round6(report.grs->lambda_max[j]));
        }
      } else {
        row["grs_members"] = nullptr;
        row["grs_weights"] = nullptr;
      }
      out.push_back(std::move(row));
    }
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "dmu,theta_star,slack_sum,group,rts,u_lower,u_upper,projection,grs,error\n";
  for (const DmuReport& report : reports) {
    out << report.label << ',';
    if (report.error) {
      std::string message = *report.error;
      for (char& c : message)
        if (c == ',' || c == '\n') c = ';';
      out << ",,,,,,,," << message << '\n';
      continue;
    }
    out << detail::format6(report.theta_star) << ',' << detail::format6(report.slack_sum)
        << ',' << detail::group_name(report.group) << ',' << detail::rts_name(report.rts)
        << ',' << detail::format6(report.bounds.lower) << ','
        << (report.bounds.upper ? detail::format6(*report.bounds.upper) : "inf") << ',';
    for (Eigen::Index i = 0; i < report.rts_point_inputs.size(); ++i)
      out << (i ? ";" : "") << detail::format6(report.rts_point_inputs[i]);
    out << '|';
    for (Eigen::Index i = 0; i < report.rts_point_outputs.size(); ++i)
      out << (i ? ";" : "") << detail::format6(report.rts_point_outputs[i]);
    out << ',';
    if (report.grs) {
      bool first = true;
      for (Eigen::Index j : report.grs->members) {
        out << (first ? "" : ";") << detail::label_of(reports, j) << ':'
            << detail::format6(report.grs->lambda_max[j]);
        first = false;
      }
    }
    out << ",\n";
  }
  return out.str();
}

inline void write_report(const std::vector<DmuReport>& reports, OutputFormat format,
                         const std::string& path) {
  const std::string rendered = render_report(reports, format);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("report: cannot open '" + path + "' for writing");
  file << rendered;
  if (!file) throw ValidationError("report: write to '" + path + "' failed");
}

}  // namespace wrdea
