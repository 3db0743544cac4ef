#include <gtest/gtest.h>

#include "routecog/config.hpp"
#include "routecog/error.hpp"

namespace routecog {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, EmptyObjectKeepsDefaults) {
  EXPECT_EQ(serialize_config(parse_config("{}")), serialize_config(default_config()));
}

TEST(Config, ReadsEveryKey) {
  const auto c = parse_config(R"({
    "seed": 7, "choice": {"model": "logit", "sensitivity": 0.5},
    "weights": {"default": {"alpha": 2, "beta": 0.01}},
    "volume_delay": {"a": 0.3, "b": 2}, "k_routes": 3, "work_period": 60,
    "max_iterations": 12, "epsilon": 0.01, "averaging": "none", "mode": "peak",
    "peak_factor": 2, "cognition": "off", "packets_per_od": 4,
    "environment": {"weather": "rain", "road_condition": "normal"},
    "events": [{"time": 240, "road_condition": "incident", "incident_edges": ["e13-14"],
                "incident_factor": 5}]})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.choice.model, ChoiceModel::logit);
  EXPECT_EQ(c.choice.sensitivity, 0.5);
  ASSERT_EQ(c.weights.size(), 1u);
  EXPECT_EQ(c.weights.at("default").alpha, 2.0);
  EXPECT_EQ(c.weights.at("default").gamma, 0.0);
  EXPECT_EQ(c.volume_delay.a, 0.3);
  EXPECT_EQ(c.k_routes, 3u);
  EXPECT_EQ(c.work_period, 60.0);
  EXPECT_EQ(c.max_iterations, 12u);
  EXPECT_EQ(c.averaging, Averaging::none);
  EXPECT_EQ(c.mode, DemandMode::peak);
  EXPECT_FALSE(c.cognition);
  EXPECT_EQ(c.packets_per_od, 4u);
  EXPECT_EQ(c.environment.weather, Weather::rain);
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0].incident_edges, std::vector<std::string>{"e13-14"});
  EXPECT_EQ(c.events[0].incident_factor, 5.0);
  EXPECT_FALSE(c.events[0].weather.has_value());

  EXPECT_EQ(serialize_config(parse_config(serialize_config(c))), serialize_config(c));
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_NE(error_of(R"({"colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_of(R"({"choice": {"modle": "logit"}})").find("choice.modle"), std::string::npos);
  EXPECT_NE(error_of(R"({"k_routes": "five"})").find("k_routes"), std::string::npos);
  EXPECT_NE(error_of(R"({"k_routes": 0})"), "");
  EXPECT_NE(error_of(R"({"choice": {"model": "probit"}})").find("choice.model"), std::string::npos);
  EXPECT_NE(error_of(R"({"choice": {"sensitivity": -1}})"), "");
  EXPECT_NE(error_of(R"({"events": [{"weather": "rain"}]})").find("time"), std::string::npos);
  EXPECT_NE(error_of(R"({"weights": {"novice": {"alpha": -1}}})"), "");
  EXPECT_NE(error_of("[1, 2]"), "");
  EXPECT_NE(error_of("{"), "");
}

}  // namespace
}  // namespace routecog
