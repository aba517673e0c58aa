#include "shapecur/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace shapecur;

TEST(Io, CurveCsvRoundTripIsExact) {
  const auto c = wiggly_circle(0.1, 3, 50);
  const auto back = curve_from_csv(curve_to_csv(c));
  EXPECT_EQ(back.points, c.points);
  EXPECT_EQ(back.params, c.params);
  EXPECT_TRUE(back.closed);
  auto open = segment_line(5);
  EXPECT_FALSE(curve_from_csv(curve_to_csv(open)).closed);
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  try {
    curve_from_csv("# closed=true\nt,x,y\n0,0,0\n0.5,abc,1\n", "f.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_THROW(curve_from_csv("x,y\n"), ParseError);
  EXPECT_THROW(curve_from_csv("t,x,y\n1,2\n"), ParseError);
}

TEST(Io, MissingFileNamesPath) {
  try {
    load_curve("/nonexistent/dir/curve.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/curve.csv"), std::string::npos);
  }
}

TEST(Io, CurrentJsonRoundTrip) {
  const auto space = FormSpace::lagrange(3, 2);
  const auto f = evaluate_current(circle(40), space);
  const auto g = current_from_json(current_to_json(f));
  EXPECT_EQ(g.space, f.space);
  EXPECT_EQ(g.fx, f.fx);
  EXPECT_EQ(g.fy, f.fy);
  EXPECT_THROW(current_from_json("{\"fx\": []}"), ConfigurationError);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Io, TableRejectsWrongWidth) {
  Table t{{"a", "b"}, {}};
  t.add({1.0, 2.0});
  EXPECT_THROW(t.add({1.0}), ConfigurationError);
  EXPECT_EQ(t.to_csv(), "a,b\n1,2\n");
}
