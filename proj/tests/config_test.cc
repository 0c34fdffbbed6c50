#include "hybridsail/config.h"

#include <gtest/gtest.h>

#include <string>

namespace hybridsail {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, EmptyTextGivesDefaults) {
  const RunConfig cfg = ParseConfig("");
  EXPECT_EQ(DumpConfig(cfg), DumpConfig(RunConfig{}));
  EXPECT_EQ(cfg.mission.theta_setting, 40.0);
  EXPECT_EQ(cfg.vessel.mass, 0.601);
  EXPECT_EQ(cfg.pid.kp, 0.2);
}

TEST(ConfigTest, CommentsAndBlankLines) {
  const RunConfig cfg = ParseConfig("# header\n\n[mission]  \n theta_setting = 45 # deg\n");
  EXPECT_EQ(cfg.mission.theta_setting, 45.0);
}

TEST(ConfigTest, InvariantErrorNamesField) {
  const std::string err = ErrorOf("[mission]\ntheta_setting = 95\n");
  EXPECT_NE(err.find("mission.theta_setting"), std::string::npos) << err;
}

TEST(ConfigTest, SyntaxErrorsCarryLineNumbers) {
  EXPECT_NE(ErrorOf("[mission]\n\nbogus = 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(ErrorOf("[nowhere]\n").find("line 1"), std::string::npos);
  EXPECT_NE(ErrorOf("[wind]\nmean_speed = fast\n").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf("theta_setting = 40\n").find("line 1"), std::string::npos);
  EXPECT_NE(ErrorOf("[run]\nseed = 1\nseed = 2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(ErrorOf("[run\n").find("line 1"), std::string::npos);
}

TEST(ConfigTest, DumpRoundTripsByteIdentically) {
  RunConfig cfg;
  cfg.mission.theta_setting = 47.5;
  cfg.seed = 18446744073709551615ull;
  cfg.vessel.leeway_coeff = 0.1 + 0.2;
  cfg.thetas = {35, 42.25};
  cfg.seeds = {3, 9};
  const std::string text = DumpConfig(cfg);
  const RunConfig back = ParseConfig(text);
  EXPECT_EQ(DumpConfig(back), text);
  EXPECT_EQ(back.vessel.leeway_coeff, 0.1 + 0.2);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.thetas, cfg.thetas);
}

TEST(ConfigTest, CrossFieldChecks) {
  EXPECT_NE(ErrorOf("[run]\ndt = 0.6\n").find("run.dt"), std::string::npos);
  EXPECT_NE(ErrorOf("[sail]\nmap_right = a.csv\n").find("sail.map_right"), std::string::npos);
  EXPECT_NE(ErrorOf("[wind]\ngust_amplitude = 2\n").find("wind"), std::string::npos);
  EXPECT_NE(ErrorOf("[sweep]\nthetas = 35, 95\n").find("sweep.thetas"), std::string::npos);
}

}  // namespace
}  // namespace hybridsail
