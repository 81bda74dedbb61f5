#include <doctest.h>

#include <numbers>
#include <string>

#include "etssc/bessel.hpp"
#include "etssc/errors.hpp"
#include "etssc/scenario.hpp"

using namespace etssc;

namespace {
constexpr double kPi = std::numbers::pi;

std::string config(const std::string& dithers, const std::string& trigger = "sigma = 0.5\nalpha = 0.195\n",
                   const std::string& extra_run = "") {
  return "[field]\nx_star = 10\ny_star = 5\ntheta_star = pi/6\nq_star = 7\n"
         "[dithers]\n" + dithers +
         "[gain]\nrow1 = 4.3822, 4.3822, 0.1437\nrow2 = -9.4326 9.4326 4\n"
         "[trigger]\n" + trigger +
         "[run]\nx0 = 12.5\ny0 = 7.5\ntheta0 = pi/3\n" + extra_run;
}

const std::string kOrdered = "a1 = 0.5\na2 = 0.5\na3 = 0.5\nomega1 = 4\nomega2 = 4\nomega3 = 2\n";
}  // namespace

TEST_CASE("shipped reference scenario") {
  const Scenario s = load_scenario(std::string(ETSSC_SCENARIO_DIR) + "/paper_siv.cfg");
  CHECK(s.field.x_star == 10.0);
  CHECK(s.field.y_star == 5.0);
  CHECK(s.field.theta_star == kPi / 6.0);
  CHECK(s.field.q_star == 7.0);
  CHECK(s.dithers.a1 == 0.5);
  CHECK(s.dithers.a2 == 0.5);
  CHECK(s.dithers.a3 == 0.5);
  CHECK(s.dithers.omega1 == 10.0);
  CHECK(s.dithers.omega2 == 10.0);
  CHECK(s.dithers.omega3 == 20.0);
  CHECK(s.frequency_override);
  CHECK(s.trigger.sigma == 0.5);
  CHECK(s.trigger.alpha == 0.195);
  CHECK(s.trigger.bias == 0.5 * 20.0 * bessel_j(2, 0.5));
  CHECK(s.initial.x == 12.5);
  CHECK(s.initial.y == 7.5);
  CHECK(s.initial.theta == kPi / 3.0);
  CHECK(s.dt == 1e-4);
  CHECK(s.t_final == 60.0);
  CHECK(s.mode == RunMode::full);
  CHECK(s.gain.k[0] == Vec3{4.3822, 4.3822, 0.1437});
  CHECK(s.gain.k[1] == Vec3{-9.4326, 9.4326, 4.0});
}

TEST_CASE("every shipped scenario loads") {
  CHECK_NOTHROW(load_scenario(std::string(ETSSC_SCENARIO_DIR) + "/ordered_frequencies.cfg"));
}

TEST_CASE("ordered frequencies accepted without override; defaults applied") {
  const Scenario s = parse_scenario(config(kOrdered));
  CHECK_FALSE(s.frequency_override);
  CHECK(s.dt == 1e-4);
  CHECK(s.t_final == 60.0);
  CHECK(s.gain.k[0] == Vec3{4.3822, 4.3822, 0.1437});
}

TEST_CASE("literal reference frequencies need the override") {
  const std::string d = "a1 = 0.5\na2 = 0.5\na3 = 0.5\nomega1 = 10\nomega2 = 10\nomega3 = 20\n";
  CHECK_THROWS_WITH_AS(parse_scenario(config(d)), doctest::Contains("dithers."), ValidationError);
  CHECK_NOTHROW(parse_scenario(config(d + "frequency_override = true\n")));
}

TEST_CASE("sigma outside (0, 1) is rejected naming the key") {
  CHECK_THROWS_WITH_AS(parse_scenario(config(kOrdered, "sigma = 1.2\nalpha = 0.195\n")),
                       doctest::Contains("trigger.sigma"), ValidationError);
}

TEST_CASE("degree variants convert to radians") {
  std::string text = config(kOrdered);
  text.replace(text.find("theta_star = pi/6"), 17, "theta_star_deg = 30");
  const Scenario s = parse_scenario(text);
  CHECK(s.field.theta_star == doctest::Approx(kPi / 6.0).epsilon(1e-15));
}

TEST_CASE("malformed configurations are rejected") {
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = 0.5\n")), ValidationError);
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = 0.5\nalpha = 0.195\nbeta = 1\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = abc\nalpha = 0.195\n")), ValidationError);
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = 0.5\nsigma = 0.4\nalpha = 0.195\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = 0.5\nalpha = 0.195\n", "dt = 0\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(config(kOrdered, "sigma = 0.5\nalpha = 0.195\n", "mode = fast\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario("[bogus]\nx = 1\n"), ValidationError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.cfg"), IoError);
}

TEST_CASE("run modes parse including long names") {
  CHECK(parse_mode("continuous-control") == RunMode::continuous);
  CHECK(parse_mode("sampled-data") == RunMode::sampled);
  for (RunMode m : {RunMode::full, RunMode::average, RunMode::continuous, RunMode::sampled})
    CHECK(parse_mode(to_string(m)) == m);
  const Scenario s = parse_scenario(
      config(kOrdered, "sigma = 0.5\nalpha = 0.195\n", "mode = sampled\nsample_period = 0.01\n"));
  CHECK(s.mode == RunMode::sampled);
  CHECK(s.sample_period == 0.01);
}

TEST_CASE("base frequency rescaling keeps amplitude-frequency products") {
  const Scenario s = load_scenario(std::string(ETSSC_SCENARIO_DIR) + "/paper_siv.cfg");
  const Scenario t = with_base_frequency(s, 40.0);
  CHECK(t.dithers.omega3 == 40.0);
  CHECK(t.dithers.omega1 == 20.0);
  CHECK(t.dithers.a1 * t.dithers.omega1 == doctest::Approx(s.dithers.a1 * s.dithers.omega1));
  CHECK(t.dithers.a3 * t.dithers.omega3 == doctest::Approx(s.dithers.a3 * s.dithers.omega3));
  CHECK(t.trigger.bias == doctest::Approx(t.dithers.a1 * 40.0 * bessel_j(2, t.dithers.a3)));
}
