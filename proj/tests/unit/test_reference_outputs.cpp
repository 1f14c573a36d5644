#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oedg/outputs.hpp"
#include "oedg/reference_fv.hpp"
#include "oedg/version.hpp"

using namespace oedg;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "oedg_test_io";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("finite-volume reference preserves constants and transports waves") {
  Model m = advection_model_1d(1.0);
  BCSet1D bcs = BCSet1D::all_periodic();

  auto constant = fv_reference_1d(m, bcs, 0.0, 1.0, 50, [](double, double* s) { s[0] = 2.5; },
                                  0.3);
  CHECK(constant.n_cells == 50);
  CHECK(constant.t_final == 0.3);
  for (int j = 0; j < 50; ++j) CHECK(constant.at(j, 0) == doctest::Approx(2.5).epsilon(1e-13));

  // First-order upwinding of a smooth wave: error shrinks roughly linearly.
  auto u0 = [](double x, double* s) { s[0] = std::sin(2.0 * kPi * x); };
  double errs[2];
  int levels[2] = {100, 200};
  for (int l = 0; l < 2; ++l) {
    auto ref = fv_reference_1d(m, bcs, 0.0, 1.0, levels[l], u0, 0.25);
    double acc = 0.0;
    for (int j = 0; j < ref.n_cells; ++j) {
      double exact = std::sin(2.0 * kPi * (ref.x_center(j) - 0.25));
      acc += ref.h() * std::abs(ref.at(j, 0) - exact);
    }
    errs[l] = acc;
  }
  CHECK(errs[1] < 0.75 * errs[0]);
  CHECK(errs[0] < 0.2);
}

TEST_CASE("finite-volume reference conserves mass on periodic domains") {
  Model m = burgers_model_1d();
  auto u0 = [](double x, double* s) { s[0] = 0.5 + std::sin(2.0 * kPi * x); };
  auto ref = fv_reference_1d(m, BCSet1D::all_periodic(), 0.0, 1.0, 128, u0, 0.5);
  double mass = 0.0;
  for (int j = 0; j < ref.n_cells; ++j) mass += ref.h() * ref.at(j, 0);
  CHECK(mass == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reference cache round-trips and regenerates only once") {
  auto dir = temp_dir() / "refcache";
  std::filesystem::remove_all(dir);
  int calls = 0;
  auto gen = [&]() {
    ++calls;
    ReferenceSolution ref;
    ref.x_lo = -1.0;
    ref.x_hi = 3.0;
    ref.n_cells = 4;
    ref.n_comp = 2;
    ref.t_final = 0.7;
    ref.values = {1, 2, 3, 4, 5, 6, 7, 8};
    return ref;
  };
  auto a = cached_reference(dir.string(), "case_a", gen);
  auto b = cached_reference(dir.string(), "case_a", gen);
  CHECK(calls == 1);
  CHECK(b.x_lo == a.x_lo);
  CHECK(b.x_hi == a.x_hi);
  CHECK(b.n_cells == 4);
  CHECK(b.n_comp == 2);
  CHECK(b.t_final == 0.7);
  CHECK(b.values == a.values);
  CHECK(b.x_center(0) == doctest::Approx(-0.5).epsilon(1e-14));

  // A corrupt file falls back to regeneration.
  std::ofstream(dir / "case_b.ref") << "junk";
  auto c = cached_reference(dir.string(), "case_b", gen);
  CHECK(calls == 2);
  CHECK(c.values == a.values);
  std::filesystem::remove_all(dir);
}

TEST_CASE("atomic writes create parents and leave no temp files") {
  auto dir = temp_dir() / "atomic" / "deep";
  std::filesystem::remove_all(temp_dir() / "atomic");
  auto path = dir / "x.csv";
  write_file_atomic(path.string(), "hello\n");
  CHECK(slurp(path) == "hello\n");
  int count = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    (void)e;
    ++count;
  }
  CHECK(count == 1);
  std::filesystem::remove_all(temp_dir() / "atomic");
}

TEST_CASE("csv headers carry the run identification") {
  OutputMeta meta{"lax", 2, "256", 0.2};
  std::string head = csv_header_comment(meta);
  CHECK(head.rfind("# ", 0) == 0);
  CHECK(head.find("problem=lax") != std::string::npos);
  CHECK(head.find("k=2") != std::string::npos);
  CHECK(head.find("resolution=256") != std::string::npos);
  CHECK(head.find("build=") != std::string::npos);
  CHECK(head.find(kBuildId) != std::string::npos);
  CHECK(head.back() == '\n');
}

TEST_CASE("cell-average csv rows round-trip through %.17g") {
  auto mesh = build_uniform_1d(0.0, 1.0, 3);
  auto sol = make_solution_1d(mesh, 1, 2);
  sol.at(0, 0, 0) = 1.0 / 3.0;
  sol.at(1, 0, 0) = 2.0e-17;
  sol.at(2, 1, 0) = -5.4321;
  auto path = temp_dir() / "avg.csv";
  write_cell_average_csv(path.string(), {"p", 1, "3", 0.1}, sol);
  std::string text = slurp(path);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header comment
  std::getline(in, line);
  CHECK(line == "x,u0,u1");
  std::getline(in, line);
  double x, v0, v1;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &v0, &v1) == 3);
  CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK(v0 == 1.0 / 3.0);  // exact round trip
  int rows = 0;
  std::istringstream in2(text);
  while (std::getline(in2, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'x') ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(path);
}

TEST_CASE("point-sample csv has eight samples per cell including endpoints") {
  auto mesh = build_uniform_1d(0.0, 1.0, 2);
  auto sol = make_solution_1d(mesh, 1, 1);
  for (int j = 0; j < 2; ++j) {
    sol.at(j, 0, 0) = 1.0;
    sol.at(j, 0, 1) = 1.0;
  }
  auto path = temp_dir() / "pts.csv";
  write_point_samples_csv(path.string(), {"p", 1, "2", 0.1}, sol);
  std::string text = slurp(path);
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  double first_x = -1, first_v = 0, last_x = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    double x, v;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &x, &v) == 2);
    if (rows == 0) {
      first_x = x;
      first_v = v;
    }
    last_x = x;
    ++rows;
  }
  CHECK(rows == 16);
  CHECK(first_x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(first_v == doctest::Approx(0.5).epsilon(1e-14));  // 1 + phi_1(-1/2)
  CHECK(last_x == doctest::Approx(1.0).epsilon(1e-15));
  std::filesystem::remove(path);
}

TEST_CASE("contour csv grids 2D runs with interior samples only") {
  auto mesh = build_uniform_2d(0.0, 1.0, 2, 0.0, 1.0, 3);
  auto sol = make_solution_2d(mesh, 1, 1);
  for (int c = 0; c < 6; ++c) sol.at(c, 0, 0) = 1.0;
  auto path = temp_dir() / "contour.csv";
  write_contour_grid_csv(path.string(), {"p", 1, "2x3", 0.1}, sol);
  std::istringstream in(slurp(path));
  std::string line;
  int rows = 0;
  double min_x = 1e9, max_x = -1e9;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    double x, y, v;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) == 3);
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    ++rows;
  }
  CHECK(rows == 8 * 12);  // (2*4) x (3*4) samples
  CHECK(min_x > 0.0);
  CHECK(max_x < 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("error and residue csvs have the documented shapes") {
  auto dir = temp_dir();
  ErrorReport rep{0.25, 0.5, 1.5, 0.125, 0.0625};
  write_error_report_csv((dir / "err.csv").string(), {"p", 2, "64", 0.1}, rep);
  std::string text = slurp(dir / "err.csv");
  CHECK(text.find("e1,e2,e3,e4,e5") != std::string::npos);
  CHECK(text.find("0.25,0.5,1.5,0.125,0.0625") != std::string::npos);

  std::vector<std::pair<double, double>> hist{{0.25, 0.5}, {0.5, 0.03125}};
  write_residue_csv((dir / "res.csv").string(), {"p", 2, "64", 0.1}, hist);
  text = slurp(dir / "res.csv");
  CHECK(text.find("t,residue") != std::string::npos);
  CHECK(text.find("0.5,0.03125") != std::string::npos);

  ReferenceSolution ref;
  ref.x_lo = 0.0;
  ref.x_hi = 1.0;
  ref.n_cells = 2;
  ref.n_comp = 1;
  ref.t_final = 1.0;
  ref.values = {0.25, 0.75};
  write_reference_csv((dir / "ref.csv").string(), {"p", 2, "2", 0.1}, ref);
  text = slurp(dir / "ref.csv");
  CHECK(text.find("0.25,0.25") != std::string::npos);
  std::filesystem::remove(dir / "err.csv");
  std::filesystem::remove(dir / "res.csv");
  std::filesystem::remove(dir / "ref.csv");
}
