#pragma once

#include "shapecur/currents.hpp"
#include "shapecur/curve.hpp"

#include <string>
#include <vector>

namespace shapecur {

/// Shortest round-trip representation (17 significant digits).
std::string format_double(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Curve CSV: a `# closed=true|false` line, the header `t,x,y`, then one
/// row per sample. `source` names the input in error messages.
std::string curve_to_csv(const SampledCurve& curve);
SampledCurve curve_from_csv(const std::string& text, const std::string& source = "<string>");
void save_curve(const std::string& path, const SampledCurve& curve);
SampledCurve load_curve(const std::string& path);

/// {"space": <descriptor>, "fx": [...], "fy": [...]}
std::string current_to_json(const CurrentVector& f);
CurrentVector current_from_json(const std::string& text);
/// dof,fx,fy
std::string current_to_csv(const CurrentVector& f);

/// Square headerless CSV.
std::string matrix_to_csv(const Matrix& m);

/// Column-labelled numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::string to_csv() const;
};

}  // namespace shapecur
