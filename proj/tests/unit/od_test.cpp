#include <gtest/gtest.h>

#include "routecog/error.hpp"
#include "routecog/od_matrix.hpp"

namespace routecog {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_od(text);
  } catch (const ODFormatError& e) {
    return e.what();
  }
  return "";
}

TEST(ODMatrix, BundledTableRows) {
  const ODMatrix m = flat_time_od();
  ASSERT_EQ(m.size(), 12u);
  EXPECT_EQ(m.zone_ids.front(), "Z1");
  EXPECT_EQ(m.zone_ids.back(), "Z12");
  const std::vector<double> z1{0, 200, 182, 221, 235, 120, 80, 60, 105, 89, 800, 253};
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(m.at(0, j), z1[j]) << j;
  EXPECT_EQ(m.at(4, 5), 1398.0);
  EXPECT_EQ(m.at(5, 4), 1397.0);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(m.at(i, i), 0.0);
  EXPECT_NO_THROW(resolve_od_zones(m, fixture_network()));
}

TEST(ODMatrix, ZeroMatrixIsValid) {
  const ODMatrix m = parse_od("2\nA B\n0 0\n0 0\n");
  EXPECT_EQ(m.total(), 0.0);
  EXPECT_EQ(m.zone_ids, (std::vector<std::string>{"A", "B"}));
}

TEST(ODMatrix, CommentsBlankLinesAndTabs) {
  const ODMatrix m = parse_od("* header\n\n2\n* ids\nA\tB\n0 1.25\n\n3 0\n");
  EXPECT_EQ(m.at(0, 1), 1.25);
  EXPECT_EQ(m.at(1, 0), 3.0);
}

TEST(ODMatrix, NegativeEntryNamesCell) {
  const std::string e = error_of("2\nA B\n0 -5\n0 0\n");
  EXPECT_NE(e.find("negative entry -5 at (A,B)"), std::string::npos) << e;
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
}

TEST(ODMatrix, ShapeAndSyntaxErrors) {
  EXPECT_NE(error_of("2\nA B\n0 1\n").find("not square"), std::string::npos);
  EXPECT_NE(error_of("2\nA B\n0 1 2\n0 0\n").find("row A has 3 entries"), std::string::npos);
  EXPECT_NE(error_of("2\nA B C\n").find("expected 2 zone ids"), std::string::npos);
  EXPECT_NE(error_of("2\nA B\n0 x\n0 0\n").find("malformed number 'x'"), std::string::npos);
  EXPECT_NE(error_of("2\nA B\n1 0\n0 0\n").find("diagonal"), std::string::npos);
  EXPECT_NE(error_of("2\nA A\n0 0\n0 0\n").find("duplicate zone id"), std::string::npos);
  EXPECT_NE(error_of("0\n").find("positive integer"), std::string::npos);
  EXPECT_NE(error_of("* nothing\n").find("no data lines"), std::string::npos);
  EXPECT_NE(error_of("2\nA B\n0 inf\n0 0\n"), "");
}

TEST(ODMatrix, CanonicalTextIsFrozen) {
  const ODMatrix m{{"A", "B"}, {0.0, 0.5, 12.0, 0.0}};
  EXPECT_EQ(write_od(m),
            "* OD demand (veh/h): zone count, zone ids, one row per origin\n"
            "2\n"
            "A B\n"
            "0 0.5\n"
            "12 0\n");
}

TEST(ODMatrix, RoundTripIsExact) {
  const ODMatrix m = flat_time_od();
  const std::string text = write_od(m);
  EXPECT_EQ(parse_od(text), m);
  EXPECT_EQ(write_od(parse_od(text)), text);

  const ODMatrix odd{{"x", "y", "z"}, {0.0, 0.1, 1e-7, 1.0 / 3.0, 0.0, 123456.789, 2.5e10, 7.0, 0.0}};
  EXPECT_EQ(parse_od(write_od(odd)), odd);
}

TEST(ODMatrix, UnknownZoneIsReported) {
  const ODMatrix m = parse_od("2\nZ1 Z99\n0 1\n1 0\n");
  try {
    resolve_od_zones(m, fixture_network());
    FAIL();
  } catch (const ODFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("'Z99'"), std::string::npos);
  }
}

}  // namespace
}  // namespace routecog
