#include <doctest.h>

#include <stdexcept>

#include "torsionlab/config.hpp"

using namespace torsionlab;

TEST_CASE("defaults validate") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  const LabGeometry g = cfg.lab_geometry();
  CHECK(g.circle.L == cfg.L);
  CHECK(g.fiber.tau == cfg.tau);
}

TEST_CASE("parse and round trip") {
  const std::string text =
      "# comment\n"
      "geometry.L = 6.283185307179586\n"
      "geometry.tau = 0.5\n"
      "geometry.alpha = 3.141592653589793\n"
      "disc.N = 24\n"
      "grids.epsilons = 1, 0.5, 0.25\n"
      "tolerances.main_residual = 0.002\n"
      "output.dir = results\n"
      "run.seed = 7\n";
  const RunConfig cfg = parse_config_text(text);
  CHECK(cfg.tau == 0.5);
  CHECK(cfg.N == 24);
  CHECK(cfg.grid.epsilons.size() == 3);
  CHECK(cfg.tolerances.at("main_residual") == 0.002);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.seed == 7);
  // round trip: parse(serialize(parse(text))) equals parse(text)
  const RunConfig again = parse_config_text(serialize_config(cfg));
  CHECK(serialize_config(again) == serialize_config(cfg));
}

TEST_CASE("unknown keys rejected") {
  CHECK_THROWS_WITH_AS(parse_config_text("geometry.badkey = 1\n"),
                       doctest::Contains("unknown key"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("tolerances.nonsense = 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("geometry.L 5\n"), std::runtime_error);
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(parse_config_text("geometry.L = -1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("geometry.k = 4\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("disc.N = 4\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("disc.max_mode = 0\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("grids.epsilons = 1, 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("geometry.tau = nonsense\n"), std::runtime_error);
}
