#include "shapecur/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace shapecur;

TEST(Experiments, LogLogSlope) {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  EXPECT_NEAR(loglog_slope(x, y), -1.5, 1e-14);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), ConfigurationError);
}

TEST(Experiments, DumpRounded) {
  Json j = {{"a", 0.0266579012}, {"b", {1.23456789, 7, 2.0}}, {"c", "text"}, {"d", Json::object()}};
  EXPECT_EQ(dump_rounded(j, 6, 0), "{\n\"a\": 0.0266579,\n\"b\": [\n1.23457,\n7,\n2.0\n],\n\"c\": \"text\",\n\"d\": {}\n}");
  EXPECT_EQ(Json::parse(dump_rounded(j)), Json::parse(dump_rounded(j, 6, 0)));
  const Json tiny = 1.5e-300;
  EXPECT_EQ(dump_rounded(tiny), "1.5e-300");
}

TEST(Experiments, PresetRegistry) {
  EXPECT_EQ(preset_names().size(), 14u);
  try {
    run_experiment("nope");
    FAIL();
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("wiggly-table"), std::string::npos);
  }
}

TEST(Experiments, ConfigEchoReproducesRun) {
  ExperimentOptions o;
  o.points = 256;
  o.seed = 4;
  const auto a = run_experiment("reparam", o);
  const auto b = run_experiment("reparam", ExperimentOptions::from_json(a.config));
  EXPECT_EQ(a.config, b.config);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) EXPECT_EQ(a.files[i].content, b.files[i].content);
  EXPECT_EQ(a.config["points"], 256);
}

TEST(Experiments, OptionsRejectBadTypes) {
  EXPECT_THROW(ExperimentOptions::from_json(Json{{"mesh", "ten"}}), ConfigurationError);
  EXPECT_THROW(ExperimentOptions::from_json(Json{{"rule", "trapezoid"}}), ConfigurationError);
}

TEST(Experiments, ShapeFamiliesStayInDomain) {
  for (double a : {0.0, 0.5, 1.0}) {
    for (const auto& p : fish_shape(a, 256).points) EXPECT_LT(p.cwiseAbs().maxCoeff(), 1.0);
  }
  for (const auto& c : random_shape_population(3, 10)) {
    for (const auto& p : fourier_shape(c, 256).points) EXPECT_LT(p.norm(), 0.95);
  }
  const auto z0 = three_class_coeffs(1, 0, 10);
  const auto z1 = three_class_coeffs(1, 1, 10);
  // same noise, different class offset
  EXPECT_NEAR(z0.at(3).real() - z1.at(3).real(), 0.05 * (1.0 - std::cos(2.0 * std::numbers::pi / 3.0)), 1e-15);
  EXPECT_EQ(z0.at(2), z1.at(2));
}

TEST(Experiments, ParallelSegmentsMatchKernel) {
  const auto space = FormSpace::lagrange(160, 1);
  const auto G = assemble_gram(space, kDefaultSigma);
  const auto d = parallel_segment_distance(space, G, 1, 0.1, 1.6, 1001);
  EXPECT_NEAR(d.center / line_distance_per_unit_length(1, 0.1, kDefaultSigma), 1.0, 0.03);
  EXPECT_LT(d.average, d.center);
}
