#include <gtest/gtest.h>

#include <filesystem>

#include "foldquad/errors.hpp"
#include "foldquad/scenario.hpp"

using namespace foldquad;

namespace {

const char* kMinimal = R"(name: mini
duration_s: 3
waypoints:
  - t_s: 0
    position_m: [0, 0, -1]
  - t_s: 2
    position_m: [1, 0, -1]
    alpha_rad: 0.5
)";

ScenarioError parse_error(const std::string& text) {
  try {
    parse_scenario_string(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << "no ScenarioError for:\n" << text;
  return ScenarioError("", 0, "");
}

}  // namespace

TEST(Scenario, MinimalFileUsesDefaults) {
  const Scenario s = parse_scenario_string(kMinimal);
  EXPECT_EQ(s.name, "mini");
  EXPECT_EQ(s.duration_s, 3.0);
  EXPECT_EQ(s.physics_dt_s, 0.001);
  EXPECT_EQ(s.params, ParamSet{});
  ASSERT_EQ(s.waypoints.size(), 2u);
  EXPECT_EQ(s.waypoints[1].alpha_command, 0.5);
  EXPECT_EQ(s.waypoints[0].alpha_command, 0.0);
}

TEST(Scenario, BuiltinHoverStandard) {
  const Scenario s = builtin_scenario("hover_alpha0");
  EXPECT_EQ(s.waypoints.front().alpha_command, 0.0);
  EXPECT_EQ(s.waypoints.back().position, Eigen::Vector3d(0, 0, -1.2));
  EXPECT_THROW(builtin_scenario("no_such_scenario"), ScenarioError);
}

TEST(Scenario, DumpParseRoundTripAllBuiltins) {
  for (const std::string& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    const std::string text = dump_scenario(s);
    const Scenario back = parse_scenario_string(text);
    EXPECT_EQ(back, s) << name;
    EXPECT_EQ(dump_scenario(back), text) << name;
  }
}

TEST(Scenario, ShippedFilesMatchBuiltins) {
  for (const std::string& name : builtin_scenario_names()) {
    const std::filesystem::path f =
        std::filesystem::path(scenario_directory()) / (name + ".yaml");
    ASSERT_TRUE(std::filesystem::exists(f)) << f;
    EXPECT_EQ(parse_scenario_file(f.string()), builtin_scenario(name)) << name;
    EXPECT_EQ(resolve_scenario(name), builtin_scenario(name));
  }
}

TEST(ScenarioErrors, UnknownKeyNamesPathAndLine) {
  const std::string text = std::string(kMinimal) + "sim:\n  physics_dt: 0.001\n";
  const ScenarioError e = parse_error(text);
  EXPECT_EQ(e.key_path(), "sim.physics_dt");
  EXPECT_EQ(e.line(), 10);
}

TEST(ScenarioErrors, AlphaOutOfRange) {
  std::string text = kMinimal;
  text.replace(text.find("0.5"), 3, "2.0");
  const ScenarioError e = parse_error(text);
  EXPECT_EQ(e.key_path(), "waypoints[1].alpha_rad");
  EXPECT_EQ(e.line(), 8);
}

TEST(ScenarioErrors, NonIncreasingTimes) {
  std::string text = kMinimal;
  text.replace(text.find("t_s: 2"), 6, "t_s: 0");
  EXPECT_EQ(parse_error(text).key_path(), "waypoints[1].t_s");
}

TEST(ScenarioErrors, StructuralProblems) {
  EXPECT_EQ(parse_error("name: x\n").key_path(), "waypoints");
  EXPECT_EQ(parse_error("waypoints:\n  - t_s: 0\n    position_m: [0,0,0]\n")
                .key_path(),
            "waypoints");
  const ScenarioError bad_type =
      parse_error(std::string(kMinimal) + "seed: banana\n");
  EXPECT_EQ(bad_type.key_path(), "seed");
  const ScenarioError yaml = parse_error("waypoints: [\n");
  EXPECT_EQ(yaml.key_path(), "<root>");
  EXPECT_GT(yaml.line(), 0);
}

TEST(ScenarioErrors, ValidationOfRanges) {
  EXPECT_EQ(parse_error(std::string(kMinimal) + "sim:\n  physics_dt_s: -1\n")
                .key_path(),
            "sim.physics_dt_s");
  EXPECT_EQ(parse_error(std::string(kMinimal) +
                        "params:\n  mass_kg: -2\n")
                .key_path(),
            "params");
  EXPECT_THROW(resolve_scenario("/nonexistent/file.yaml"), ScenarioError);
}
