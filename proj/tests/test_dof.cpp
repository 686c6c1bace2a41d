#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <dwsim/dof.hpp>
#include <dwsim/rng.hpp>

using namespace dwsim;

namespace {

// formula-level budget check: each link k carries at most alpha_k of d.o.f.
void check_budget(const TimeSharePlan& plan, const std::vector<double>& alphas,
                  double expect_ds) {
  REQUIRE(plan.total_fraction() == Catch::Approx(1.0).margin(1e-12));
  const std::vector<double> used = plan.total_usage();
  REQUIRE(used.size() == alphas.size());
  for (std::size_t k = 0; k < used.size(); ++k) {
    REQUIRE(used[k] >= -1e-15);
    REQUIRE(used[k] <= alphas[k] + 1e-12);
  }
  REQUIRE(plan.achieved_ds == Catch::Approx(expect_ds).margin(1e-12));
  for (const auto& e : plan.entries) {
    REQUIRE(e.lambda > 0.0);
    REQUIRE(e.lambda <= 1.0 + 1e-12);
  }
}

}  // namespace

TEST_CASE("two-relay secure dof formulas hit the worked values") {
  REQUIRE(ds_full(1.0 / 3.0, 1.0 / 3.0) == Catch::Approx(2.0 / 3.0).margin(1e-15));
  REQUIRE(ds_full(0.5, 0.0) == 0.5);
  REQUIRE(ds_full(1.0, 1.0) == 1.0);
  REQUIRE(ds_full(0.2, 0.1) == Catch::Approx(0.3).margin(1e-15));
  REQUIRE(ds_full(0.0, 0.0) == 0.0);
  REQUIRE(ds_full(2.0, 2.0) == 1.0);

  REQUIRE(ds_nocsi(1.0, 1.0) == 1.0);
  REQUIRE(ds_nocsi(0.5, 0.0) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(ds_nocsi(0.5, 0.5) == Catch::Approx(2.0 / 3.0).margin(1e-15));
  REQUIRE(ds_nocsi(0.25, 0.25) == Catch::Approx(0.5).margin(1e-15));
  // asymmetric pair: the (min(a,b) + 1)/2 cap binds, not the sum
  REQUIRE(ds_nocsi(0.0, 0.7) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("dof formulas are symmetric, monotone, bounded, concave") {
  Rng rng = Rng::stream(31);
  for (int t = 0; t < 2000; ++t) {
    const double a = rng.uniform(0.0, 1.5), b = rng.uniform(0.0, 1.5);
    REQUIRE(ds_full(a, b) == ds_full(b, a));
    REQUIRE(ds_nocsi(a, b) == ds_nocsi(b, a));
    REQUIRE(ds_nocsi(a, b) <= ds_full(a, b) + 1e-15);
    REQUIRE(ds_full(a, b) >= 0.0);
    REQUIRE(ds_full(a, b) <= 1.0);

    // monotone nondecreasing in each argument
    const double da = rng.uniform(0.0, 0.5);
    REQUIRE(ds_full(a + da, b) >= ds_full(a, b) - 1e-15);
    REQUIRE(ds_nocsi(a, b + da) >= ds_nocsi(a, b) - 1e-15);

    // midpoint concavity (min of affine functions)
    const double c = rng.uniform(0.0, 1.5), d = rng.uniform(0.0, 1.5);
    const double mid_full = ds_full(0.5 * (a + c), 0.5 * (b + d));
    REQUIRE(mid_full >= 0.5 * (ds_full(a, b) + ds_full(c, d)) - 1e-12);
    const double mid_no = ds_nocsi(0.5 * (a + c), 0.5 * (b + d));
    REQUIRE(mid_no >= 0.5 * (ds_nocsi(a, b) + ds_nocsi(c, d)) - 1e-12);
  }

  // symmetric doubling regimes
  for (double a = 0.0; a <= 1.0 / 3.0 + 1e-9; a += 0.01)
    REQUIRE(ds_full(a, a) == Catch::Approx(2.0 * a).margin(1e-15));
  for (double a = 0.0; a <= 0.25 + 1e-9; a += 0.01)
    REQUIRE(ds_nocsi(a, a) == Catch::Approx(2.0 * a).margin(1e-15));
}

TEST_CASE("multi-relay bounds collapse to the two-relay formula at M = 2") {
  for (double a = 0.0; a <= 1.5 + 1e-9; a += 0.01) {
    const DsBounds b = ds_multi_bounds(2, a);
    REQUIRE(b.lower == ds_full(a, a));
    REQUIRE(b.upper == ds_full(a, a));
    REQUIRE(ds_multi_nocsi(2, a) == ds_nocsi(a, a));
  }
}

TEST_CASE("multi-relay formulas behave across M") {
  REQUIRE(ds_multi_bounds(3, 5.0 / 9.0).lower == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ds_multi_bounds(3, 5.0 / 9.0).upper == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ds_multi_bounds(3, 0.0).lower == 0.0);
  REQUIRE(ds_multi_nocsi(3, 2.0 / 3.0) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ds_multi_nocsi(3, 2.0 / 9.0) == Catch::Approx(2.0 / 3.0).margin(1e-12));

  for (int m = 2; m <= 6; ++m)
    for (double a = 0.0; a <= 1.2 + 1e-9; a += 0.01) {
      const DsBounds b = ds_multi_bounds(m, a);
      REQUIRE(b.lower <= b.upper + 1e-15);
      REQUIRE(b.lower >= 0.0);
      REQUIRE(b.upper <= 1.0);
      const double no = ds_multi_nocsi(m, a);
      REQUIRE(no <= b.lower + 1e-12);  // knowing less never helps
    }

  REQUIRE_THROWS_AS(ds_multi_bounds(1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(ds_multi_nocsi(3, -0.1), std::invalid_argument);
}

TEST_CASE("two-relay planner reproduces the worked schedules") {
  // link-limited: cooperative jamming while both links last, blind jamming on
  // the surplus, then silence
  TimeSharePlan p = plan_timeshare(0.2, 0.1, CsiMode::Full);
  REQUIRE(p.entries.size() == 3);
  REQUIRE(p.entries[0].scheme == "cj");
  REQUIRE(p.entries[0].lambda == Catch::Approx(0.3).margin(1e-15));
  REQUIRE(p.entries[1].scheme == "bcj");
  REQUIRE(p.entries[1].lambda == Catch::Approx(0.2).margin(1e-15));
  REQUIRE(p.entries[2].scheme == "silence");
  REQUIRE(!p.swapped);
  check_budget(p, {0.2, 0.1}, 0.3);

  // saturated: alignment-and-beamforming the whole block
  TimeSharePlan sat = plan_timeshare(2.0, 2.0, CsiMode::Full);
  REQUIRE(sat.entries.size() == 1);
  REQUIRE(sat.entries[0].scheme == "sab");
  REQUIRE(sat.entries[0].lambda == 1.0);
  check_budget(sat, {2.0, 2.0}, 1.0);

  TimeSharePlan no = plan_timeshare(1.0, 1.0, CsiMode::NoEve);
  REQUIRE(no.entries.size() == 1);
  REQUIRE(no.entries[0].scheme == "coj");
  check_budget(no, {1.0, 1.0}, 1.0);

  // symmetric middle regime without eavesdropper knowledge mixes all three
  TimeSharePlan mid = plan_timeshare(0.5, 0.5, CsiMode::NoEve);
  REQUIRE(mid.entries.size() == 3);
  check_budget(mid, {0.5, 0.5}, 2.0 / 3.0);
}

TEST_CASE("planner swaps and swaps back when the links arrive reversed") {
  TimeSharePlan p = plan_timeshare(0.0, 0.4, CsiMode::NoEve);
  REQUIRE(p.swapped);
  // the message-bearing blind scheme must point at the live physical link
  bool found = false;
  for (const auto& e : p.entries)
    if (e.scheme == "bcj_swapped") {
      found = true;
      REQUIRE(e.usage[0] == 0.0);
      REQUIRE(e.usage[1] > 0.0);
    }
  REQUIRE(found);
  check_budget(p, {0.0, 0.4}, ds_nocsi(0.0, 0.4));

  TimeSharePlan q = plan_timeshare(0.1, 0.9, CsiMode::Full);
  REQUIRE(q.swapped);
  check_budget(q, {0.1, 0.9}, ds_full(0.1, 0.9));
}

TEST_CASE("planner meets the formula with a feasible budget everywhere") {
  Rng rng = Rng::stream(32);
  for (int t = 0; t < 2000; ++t) {
    const double a1 = rng.uniform(0.0, 1.5), a2 = rng.uniform(0.0, 1.5);
    TimeSharePlan pf = plan_timeshare(a1, a2, CsiMode::Full);
    check_budget(pf, {a1, a2}, ds_full(a1, a2));
    TimeSharePlan pn = plan_timeshare(a1, a2, CsiMode::NoEve);
    check_budget(pn, {a1, a2}, ds_nocsi(a1, a2));
  }
}

TEST_CASE("multi-relay planner hits the corner points and mixes between them") {
  // worked example: M = 3 without eavesdropper CSI at the first corner
  TimeSharePlan p = plan_timeshare_multi(3, 2.0 / 9.0, CsiMode::NoEve);
  REQUIRE(p.entries.size() == 3);
  for (const auto& e : p.entries) {
    REQUIRE(e.scheme.rfind("bcj_", 0) == 0);
    REQUIRE(e.lambda == Catch::Approx(1.0 / 3.0).margin(1e-12));
    REQUIRE(e.ds_rate == Catch::Approx(2.0 / 3.0).margin(1e-15));
  }
  check_budget(p, std::vector<double>(3, 2.0 / 9.0), 2.0 / 3.0);

  // worked example: M = 3 full CSI at the pair-mixture corner
  TimeSharePlan q = plan_timeshare_multi(3, 5.0 / 9.0, CsiMode::Full);
  REQUIRE(q.entries.size() == 3);
  for (const auto& e : q.entries) {
    REQUIRE(e.scheme.rfind("sab_", 0) == 0);
    REQUIRE(e.lambda == Catch::Approx(1.0 / 3.0).margin(1e-12));
  }
  check_budget(q, std::vector<double>(3, 5.0 / 9.0), 1.0);

  TimeSharePlan z = plan_timeshare_multi(4, 0.0, CsiMode::Full);
  REQUIRE(z.entries.size() == 1);
  REQUIRE(z.entries[0].scheme == "silence");
  REQUIRE(z.achieved_ds == 0.0);

  for (int m = 2; m <= 6; ++m) {
    const double c1f = (m - 1.0) / (m * (m - 1.0) + 1.0);
    const double c2f = (m + 2.0) / double(m * m);
    const double c1n = (m - 1.0) / double(m * m);
    const double c2n = 2.0 / m;
    for (double a :
         {0.0, 0.5 * c1f, c1f, 0.5 * (c1f + c2f), c2f, c1n, 0.5 * (c1n + c2n), c2n, 1.0, 1.3}) {
      TimeSharePlan full = plan_timeshare_multi(m, a, CsiMode::Full);
      check_budget(full, std::vector<double>(std::size_t(m), a),
                   ds_multi_bounds(m, a).lower);
      TimeSharePlan noc = plan_timeshare_multi(m, a, CsiMode::NoEve);
      check_budget(noc, std::vector<double>(std::size_t(m), a), ds_multi_nocsi(m, a));
    }
  }
}

TEST_CASE("region sweep tabulates the symmetric curves") {
  std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<SweepRow> rows = region_sweep(grid, CsiMode::Full);
  REQUIRE(rows.size() == grid.size());
  REQUIRE(rows[0].ds_lower == 0.0);
  REQUIRE(rows[4].ds_lower == 1.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].alpha == grid[i]);
    REQUIRE(rows[i].ds_lower == ds_full(grid[i], grid[i]));
    REQUIRE(rows[i].ds_upper == rows[i].ds_lower);
  }

  std::vector<SweepRow> multi = region_sweep(grid, CsiMode::Full, 5);
  for (std::size_t i = 0; i < multi.size(); ++i) {
    const DsBounds b = ds_multi_bounds(5, grid[i]);
    REQUIRE(multi[i].ds_lower == b.lower);
    REQUIRE(multi[i].ds_upper == b.upper);
  }

  std::vector<double> empty;
  REQUIRE_THROWS_AS(region_sweep(empty, CsiMode::Full), std::invalid_argument);
}
