#pragma once

#include "shapecur/currents.hpp"
#include "shapecur/metric.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shapecur {

using Json = nlohmann::ordered_json;

/// Overrides for a preset; unset fields keep the preset's defaults.
struct ExperimentOptions {
  std::optional<int> mesh;
  std::optional<int> degree;
  std::optional<int> monomial;
  std::optional<double> sigma;
  std::optional<int> s;
  std::optional<QuadratureRule> rule;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;

  Json to_json() const;
  static ExperimentOptions from_json(const Json& j);
};

struct Artifact {
  std::string name;     // file name inside the output directory
  std::string columns;  // column contract, for the manifest
  std::string content;
};

struct ExperimentResult {
  std::string preset;
  Json config;   // preset + effective settings; feeding it back reruns the experiment
  Json summary;  // headline numbers, full precision in memory
  std::vector<Artifact> files;
};

const std::vector<std::string>& preset_names();

/// Runs a named preset. Throws ConfigurationError for an unknown name.
ExperimentResult run_experiment(const std::string& preset, const ExperimentOptions& opts = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// JSON text with every floating-point leaf written to `digits` significant
/// digits; layout as Json::dump(indent).
std::string dump_rounded(const Json& j, int digits = 6, int indent = 2);

// Shape families shared by presets and tests.

/// Fish curve plus a times a smooth perturbation.
SampledCurve fish_shape(double a, std::size_t n);

/// Class c in {0,1,2}: base shape from `base_seed`, offsets of size 0.05 on
/// Re z_3 and Re z_4 along angle 2 pi c/3, plus N(0, 0.01^2) noise on the
/// real and imaginary parts of z_3 and z_4.
FourierCoeffs three_class_coeffs(std::uint64_t base_seed, int c, std::uint64_t shape_seed);

/// Seeded random smooth shapes kept well inside [-1,1]^2 (seeds whose shape
/// leaves the disc of radius 0.95 are skipped).
std::vector<FourierCoeffs> random_shape_population(std::uint64_t seed, std::size_t count);

/// Squared local distance density between two parallel segments of length L
/// centred on the origin at separation eps, read off the representer of
/// their difference at the midpoint; multiplied by sigma and square-rooted
/// it is comparable to line_distance_per_unit_length.
struct LinePairDistance {
  double center;   // sqrt(sigma * density at the midpoint)
  double average;  // sqrt(sigma * d^2 / L)
};
LinePairDistance parallel_segment_distance(const FormSpace& space, const GramOperator& G, int s, double eps,
                                           double length, std::size_t points);

}  // namespace shapecur
