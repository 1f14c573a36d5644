#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oedg/convergence.hpp"
#include "oedg/invariance.hpp"

using namespace oedg;

TEST_CASE("scale invariance holds to rounding on a discontinuous profile") {
  ProblemParams base;
  base.n = 64;
  base.k = 2;
  base.t_final = 0.2;
  InvarianceStudy study = scale_invariance_study("advection-scale", base, {0.01, 1.0, 100.0});
  REQUIRE(study.rows.size() == 3);
  CHECK(study.kind == "scale");
  CHECK(study.rows[0].label == "lambda=0.01");
  // lambda = 1 replays the base run exactly.
  CHECK(study.rows[1].max_rel_deviation == 0.0);
  CHECK(study.worst() <= 1e-10);
}

TEST_CASE("evolution invariance: scaled flux, inverse-scaled steps") {
  ProblemParams base;
  base.n = 64;
  base.k = 2;
  base.t_final = 0.2;
  InvarianceStudy study = evolution_invariance_study("burgers-smooth", base, {0.5, 2.0});
  REQUIRE(study.rows.size() == 2);
  CHECK(study.kind == "evolution");
  CHECK(study.worst() <= 1e-10);
}

TEST_CASE("lwr unit systems give the same unscaled densities") {
  ProblemParams base;
  base.n = 100;
  base.k = 2;
  base.t_final = 0.05;
  InvarianceStudy study = lwr_three_unit_study(base);
  REQUIRE(study.rows.size() == 2);
  CHECK(study.rows[0].label == "minutes");
  CHECK(study.rows[1].label == "meters");
  CHECK(study.worst() <= 1e-9);
}

TEST_CASE("invariance rejections") {
  ProblemParams base;
  base.n = 32;
  base.t_final = 0.1;
  CHECK_THROWS_AS(scale_invariance_study("lwr-freeway", base, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(scale_invariance_study("advection-scale", base, {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("convergence study tabulates rates") {
  ProblemParams base;
  base.k = 1;
  base.t_final = 0.2;
  ConvergenceTable table = convergence_study("advection-smooth", base, {32, 64, 128});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.k == 1);
  CHECK(table.rows[0].n == 32);
  CHECK(std::isnan(table.rows[0].rates[0]));
  for (size_t i = 1; i < 3; ++i) {
    const double expect =
        std::log2(table.rows[i - 1].errors.e1 / table.rows[i].errors.e1);
    CHECK(table.rows[i].rates[0] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(finest_pair_rate(table, 0) == doctest::Approx(table.rows[2].rates[0]));
  // Second order scheme on smooth data: the observed rate is near (or, on
  // coarse meshes, above) two.
  CHECK(finest_pair_rate(table, 0) > 1.5);
  CHECK(finest_pair_rate(table, 0) < 3.5);
  CHECK(table.rows[2].errors.e1 < table.rows[0].errors.e1);

  ConvergenceTable empty;
  CHECK(std::isnan(finest_pair_rate(empty, 0)));
  CHECK(std::isnan(finest_pair_rate(table, 7)));
}

TEST_CASE("2d study scales ny with the aspect ratio") {
  ProblemParams base;
  base.k = 1;
  base.t_final = 0.05;
  ConvergenceTable table = convergence_study("advection-smooth-2d", base, {10, 20});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].nx == 10);
  CHECK(table.rows[0].ny == 8);
  CHECK(table.rows[1].nx == 20);
  CHECK(table.rows[1].ny == 16);
  CHECK(std::isnan(table.rows[1].errors.e5));
  CHECK(table.rows[1].rates[0] > 0.5);

  CHECK_THROWS_AS(convergence_study("advection-smooth-2d", base, {12}), std::invalid_argument);
}

TEST_CASE("superconvergent study smoke") {
  ProblemParams base;
  base.k = 1;
  base.t_final = 0.5;
  ConvergenceTable table =
      convergence_study("advection-smooth", base, {32, 64}, StudyMode::Superconvergence);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.mode == StudyMode::Superconvergence);
  for (const auto& row : table.rows) {
    CHECK(std::isfinite(row.errors.e4));
    CHECK(std::isfinite(row.errors.e5));
    CHECK(row.errors.e4 > 0.0);
    CHECK(row.steps > 0);
  }
  CHECK(table.rows[1].rates[4] > 1.5);

  CHECK_THROWS_AS(
      convergence_study("burgers-smooth", base, {32, 64}, StudyMode::Superconvergence),
      std::invalid_argument);
  CHECK_THROWS_AS(convergence_study("lax", base, {32, 64}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study("advection-smooth", base, {}), std::invalid_argument);
}
