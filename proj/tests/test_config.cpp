#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>

#include "beamsched/config.hpp"

using namespace beamsched;

namespace {

// Minimal complete config; tests append or tweak lines as needed.
const char* kBaseConfig = R"(
carrier_frequency = 60e9
bandwidth_B = 500e6
total_tx_power = 30
inter_cell_distance = 400
num_aps_N = 2
num_ues_per_ap_M = 5
num_tx_antennas_Nt = 8
codebook_size_C = 16
num_paths_L = 3
noise_temperature_T = 300
)";

}  // namespace

TEST_CASE("default configuration is valid") {
  SystemConfig config;
  REQUIRE_NOTHROW(config.validate());
  CHECK(config.radius() == Approx(200.0));
  CHECK(config.spacing() == Approx(0.5 * kSpeedOfLight / 60e9));
}

TEST_CASE("parse_config reads every key") {
  std::string text = kBaseConfig;
  text +=
      "antenna_spacing_D = 0.0025\n"
      "path_loss_exponent = 2.2\n"
      "cell_radius = 120\n"
      "learning_weight_w = 0.2\n"
      "max_learning_iters_T = 150\n"
      "greedy_iters_NDG = 4\n"
      "rng_seed = 12345678901234567890\n";
  const SystemConfig config = parse_config(text);
  CHECK(config.carrier_frequency == 60e9);
  CHECK(config.bandwidth_B == 500e6);
  CHECK(config.total_tx_power == 30.0);
  CHECK(config.inter_cell_distance == 400.0);
  CHECK(config.num_aps_N == 2);
  CHECK(config.num_ues_per_ap_M == 5);
  CHECK(config.num_tx_antennas_Nt == 8);
  CHECK(config.codebook_size_C == 16);
  CHECK(config.num_paths_L == 3);
  CHECK(config.noise_temperature_T == 300.0);
  CHECK(config.antenna_spacing_D == 0.0025);
  CHECK(config.path_loss_exponent == 2.2);
  CHECK(config.cell_radius == 120.0);
  CHECK(config.learning_weight_w == 0.2);
  CHECK(config.max_learning_iters_T == 150);
  CHECK(config.greedy_iters_NDG == 4);
  CHECK(config.rng_seed == 12345678901234567890ULL);
}

TEST_CASE("missing optional keys take the documented defaults") {
  const SystemConfig config = parse_config(kBaseConfig);
  CHECK(config.antenna_spacing_D == 0.0);
  CHECK(config.spacing() == Approx(0.5 * config.wavelength()));
  CHECK(config.path_loss_exponent == 2.5);
  CHECK(config.radius() == Approx(200.0));
  CHECK(config.learning_weight_w == 0.15);
  CHECK(config.max_learning_iters_T == 200);
  CHECK(config.greedy_iters_NDG == 10);
  CHECK(config.rng_seed == 1);
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = kBaseConfig;
  text += "# a full-line comment\n\npath_loss_exponent = 2.0  # trailing comment\n";
  CHECK(parse_config(text).path_loss_exponent == 2.0);
}

TEST_CASE("missing required key is an error") {
  std::string text;
  for (const char* line : {"carrier_frequency = 60e9\n", "bandwidth_B = 500e6\n"}) text += line;
  REQUIRE_THROWS_WITH(parse_config(text), Catch::Contains("missing required") &&
                                              Catch::Contains("total_tx_power"));
}

TEST_CASE("unknown key is an error") {
  std::string text = kBaseConfig;
  text += "carrier = 60e9\n";
  REQUIRE_THROWS_WITH(parse_config(text), Catch::Contains("unknown config key 'carrier'"));
}

TEST_CASE("duplicate key is an error") {
  std::string text = kBaseConfig;
  text += "num_aps_N = 3\n";
  REQUIRE_THROWS_WITH(parse_config(text), Catch::Contains("more than once"));
}

TEST_CASE("malformed values are errors") {
  std::string text = kBaseConfig;
  SECTION("not a number") {
    text += "cell_radius = wide\n";
    REQUIRE_THROWS_AS(parse_config(text), std::invalid_argument);
  }
  SECTION("line without separator") {
    text += "cell_radius\n";
    REQUIRE_THROWS_AS(parse_config(text), std::invalid_argument);
  }
  SECTION("negative seed") {
    text += "rng_seed = -4\n";
    REQUIRE_THROWS_AS(parse_config(text), std::invalid_argument);
  }
}

TEST_CASE("invariants are enforced") {
  SystemConfig config;
  SECTION("too many UEs per AP") {
    config.num_ues_per_ap_M = 13;
    REQUIRE_THROWS_WITH(config.validate(), Catch::Contains("num_ues_per_ap_M"));
  }
  SECTION("learning weight outside (0, 1)") {
    for (double w : {0.0, 1.0, -0.2, 1.5}) {
      config.learning_weight_w = w;
      REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
    }
  }
  SECTION("counts must be positive") {
    config.num_aps_N = 0;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
  }
  SECTION("bandwidth must be positive") {
    config.bandwidth_B = 0.0;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
  }
  SECTION("cell radius must exceed the 1 m placement floor") {
    config.cell_radius = 0.5;
    REQUIRE_THROWS_AS(config.validate(), std::invalid_argument);
  }
}

TEST_CASE("load_config matches parse_config") {
  const auto path = std::filesystem::temp_directory_path() / "beamsched_config_test.cfg";
  {
    std::ofstream out(path);
    out << kBaseConfig;
  }
  const SystemConfig from_file = load_config(path);
  const SystemConfig from_text = parse_config(kBaseConfig);
  CHECK(from_file.carrier_frequency == from_text.carrier_frequency);
  CHECK(from_file.num_ues_per_ap_M == from_text.num_ues_per_ap_M);
  CHECK(from_file.rng_seed == from_text.rng_seed);
  std::filesystem::remove(path);
  REQUIRE_THROWS_AS(load_config(path), std::runtime_error);
}
