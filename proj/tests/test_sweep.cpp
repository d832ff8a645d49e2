#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <limits>

#include "manybeam/sweep.hpp"
#include "support/fields.hpp"

using namespace manybeam;

namespace {

SweepOptions sp4_opts(int threads) {
  SweepOptions o;
  o.method = "sp4";
  o.dz = 0.02;
  o.threads = threads;
  return o;
}

bool bitwise_equal(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * (std::size_t)a.size()) == 0;
}

}  // namespace

TEST_CASE("angle grid validation") {
  CHECK_THROWS_AS((void)AngleGrid::validated({}, {0.0}), ConfigError);
  CHECK_THROWS_AS((void)AngleGrid::validated({1.0}, {}), ConfigError);
  CHECK_THROWS_AS((void)AngleGrid::validated({1.0, 1.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS((void)AngleGrid::validated({3.0, 2.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS((void)AngleGrid::validated({0.0, 2.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS((void)AngleGrid::validated({89.0, 90.0}, {0.0}), ConfigError);
  const AngleGrid g = AngleGrid::validated({1.0, 2.0, 3.0}, {0.0, 45.0});
  CHECK(g.rows() == 6);
}

TEST_CASE("rows are ordered theta1-major with theta0 inner") {
  const AngleGrid grid = AngleGrid::validated({4.0, 8.0, 12.0}, {0.0, 30.0});
  SweepOptions opts = sp4_opts(1);
  const RockingCurve c = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                       testfields::kGamma11, grid, opts);
  REQUIRE(c.rows() == 6);
  const std::vector<double> t0 = {4.0, 8.0, 12.0, 4.0, 8.0, 12.0};
  const std::vector<double> t1 = {0.0, 0.0, 0.0, 30.0, 30.0, 30.0};
  CHECK(c.theta0 == t0);
  CHECK(c.theta1 == t1);
  CHECK(c.rod_labels[0] == "(0;0)");
  CHECK(c.method == "sp4");
  CHECK(c.solve_seconds > 0.0);
}

TEST_CASE("any thread count produces bit-identical intensities") {
  const AngleGrid grid = AngleGrid::validated({2.0, 5.0, 8.0, 11.0, 14.0, 17.0, 20.0}, {0.0});
  const RockingCurve one = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                         testfields::kGamma11, grid, sp4_opts(1));
  for (int threads : {4, 8}) {
    const RockingCurve many = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                            testfields::kGamma11, grid, sp4_opts(threads));
    CHECK(bitwise_equal(one.eta, many.eta));
  }
  // thread count 0 resolves to hardware concurrency and still matches
  const RockingCurve autos = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                           testfields::kGamma11, grid, sp4_opts(0));
  CHECK(bitwise_equal(one.eta, autos.eta));
}

TEST_CASE("disabling the shared node table does not change a single bit") {
  const AngleGrid grid = AngleGrid::validated({3.0, 6.0, 9.0}, {0.0});
  SweepOptions with = sp4_opts(2);
  SweepOptions without = sp4_opts(2);
  without.table_budget_bytes = 0;  // forces on-the-fly potential evaluation
  const RockingCurve a = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                       testfields::kGamma11, grid, with);
  const RockingCurve b = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                       testfields::kGamma11, grid, without);
  CHECK(bitwise_equal(a.eta, b.eta));
}

TEST_CASE("conventional and stepper methods agree through the sweep layer") {
  const AngleGrid grid = AngleGrid::validated({5.0, 10.0}, {0.0});
  SweepOptions conv = sp4_opts(2);
  conv.method = "conventional";
  conv.dz = 0.004;
  SweepOptions sp6 = sp4_opts(2);
  sp6.method = "sp6";
  sp6.dz = 0.02;
  const RockingCurve a = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                       testfields::kGamma11, grid, conv);
  const RockingCurve b = rocking_curve(testfields::layered_field(), testfields::rods11(),
                                       testfields::kGamma11, grid, sp6);
  CHECK(curve_error(a, b) <= 1e-5);
}

TEST_CASE("solver failures on worker threads surface as exceptions") {
  SweepOptions opts = sp4_opts(4);
  opts.method = "sp6";
  opts.dz = 0.02;
  // 150 A with the stabilizer off: the evanescent growth e^{|Gamma| |z_e|}
  // overflows double range mid-propagation, which must surface on the
  // calling thread no matter which worker hit it
  opts.rhst_threshold = std::numeric_limits<double>::infinity();
  std::vector<GaussianLayer> layers;
  for (int i = 0; i < 75; ++i) layers.push_back({-1.0 - 2.0 * i, -0.22, 2.2, 0.7, 0.08});
  const PotentialField field = PotentialField::gaussian_layers(-150.0, std::move(layers));
  const AngleGrid grid = AngleGrid::validated({3.0, 5.0, 7.0, 9.0}, {0.0});
  CHECK_THROWS_AS(
      (void)rocking_curve(field, testfields::rods11(), testfields::kGamma11, grid, opts),
      SolverError);
}

TEST_CASE("unknown method names are rejected before any solving") {
  SweepOptions opts = sp4_opts(1);
  opts.method = "sp8";
  CHECK_THROWS_AS((void)rocking_curve(testfields::layered_field(), testfields::rods11(),
                                      testfields::kGamma11,
                                      AngleGrid::validated({5.0}, {0.0}), opts),
                  ConfigError);
}
