#include <doctest.h>

#include "lgp/config.hpp"

using namespace lgp;

TEST_CASE("defaults and derived values") {
  const RunConfig cfg = parse_config_json("{}");
  CHECK(cfg.sigma_se == 1.0);
  CHECK(cfg.r_star == 3.0);
  CHECK(cfg.effective_r() == 6.0);          // r defaults to 2*r_star
  CHECK(cfg.effective_margin() == 6.0);     // margin defaults to r
  CHECK(cfg.workers == 1);
}

TEST_CASE("audio-style scalar config") {
  const RunConfig cfg = parse_config_json(
      R"({"sigma_se": 0.009, "lengthscales": 10.895, "sigma_y": 0.002,
          "l_u": 0.5, "r_star": 15.0})");
  CHECK(cfg.sigma_se == 0.009);
  CHECK(cfg.lengthscales == std::vector<double>{10.895});
  CHECK(cfg.sigma_y == 0.002);
  CHECK(cfg.effective_r() == 30.0);
  const HyperParams hp = cfg.hyperparams(1);
  CHECK(hp.lengthscales[0] == 10.895);
}

TEST_CASE("precipitation-style anisotropic config") {
  const RunConfig cfg = parse_config_json(
      R"({"sigma_se": 3.99, "sigma_y": 2.789,
          "lengthscales": [3.094, 2.030, 0.189], "r_star": 3.0, "l_u": 1.0})");
  const HyperParams hp = cfg.hyperparams(3);
  CHECK(hp.lengthscales[2] == 0.189);
  CHECK_THROWS_AS(cfg.hyperparams(2), ConfigError);  // 3 lengthscales, 2-D data
}

TEST_CASE("scalar lengthscale broadcasts") {
  const RunConfig cfg = parse_config_json(R"({"lengthscales": 0.5})");
  const HyperParams hp = cfg.hyperparams(3);
  CHECK(hp.lengthscales.size() == 3);
  CHECK(hp.lengthscales[1] == 0.5);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(parse_config_json("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_json("[1,2]"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"sigmaSE": 1.0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"sigma_se": -1.0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"l_u": 0.0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"workers": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"lengthscales": []})"), ConfigError);
  // r below 2*r_star needs the general prior opt-in.
  CHECK_THROWS_AS(parse_config_json(R"({"r": 4.0, "r_star": 3.0})"), ConfigError);
  CHECK_NOTHROW(parse_config_json(
      R"({"r": 4.0, "r_star": 3.0, "allow_general_prior": true})"));
}

TEST_CASE("echo round-trips through the parser") {
  const RunConfig cfg = parse_config_json(
      R"({"sigma_se": 2.0, "lengthscales": [1.0, 0.25], "workers": 3,
          "jitter_initial": 1e-8, "dense_cap": 500})");
  const RunConfig back = parse_config_json(to_json(cfg));
  CHECK(back.sigma_se == cfg.sigma_se);
  CHECK(back.lengthscales == cfg.lengthscales);
  CHECK(back.workers == cfg.workers);
  CHECK(back.jitter.initial == cfg.jitter.initial);
  CHECK(back.dense_cap == cfg.dense_cap);
  CHECK(back.effective_r() == cfg.effective_r());
}
