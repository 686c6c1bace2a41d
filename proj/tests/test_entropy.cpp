#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <dwsim/entropy.hpp>
#include <dwsim/fading.hpp>
#include <dwsim/rng.hpp>

using namespace dwsim;

TEST_CASE("exact entropy on small pmfs") {
  Pmf point;
  point.support = {{0}};
  point.probs = {1.0};
  REQUIRE(exact_entropy(point) == 0.0);

  Pmf uniform8;
  for (int i = 0; i < 8; ++i) {
    uniform8.support.push_back({i});
    uniform8.probs.push_back(0.125);
  }
  REQUIRE(exact_entropy(uniform8) == Catch::Approx(3.0).margin(1e-14));

  Pmf skew;
  skew.support = {{0}, {1}, {2}};
  skew.probs = {0.5, 0.25, 0.25};
  REQUIRE(exact_entropy(skew) == Catch::Approx(1.5).margin(1e-14));
}

TEST_CASE("pmf validation rejects malformed inputs") {
  Pmf bad;
  bad.support = {{0}, {1}};
  bad.probs = {0.6, 0.6};
  REQUIRE_THROWS_AS(exact_entropy(bad), std::invalid_argument);

  bad.probs = {1.2, -0.2};
  REQUIRE_THROWS_AS(exact_entropy(bad), std::invalid_argument);

  bad.support = {{0}, {0}};
  bad.probs = {0.5, 0.5};
  REQUIRE_THROWS_AS(exact_entropy(bad), std::invalid_argument);

  bad.support = {{0}, {1, 2}};
  REQUIRE_THROWS_AS(exact_entropy(bad), std::invalid_argument);

  Pmf empty;
  REQUIRE_THROWS_AS(exact_entropy(empty), std::invalid_argument);
}

TEST_CASE("random joint pmfs are valid, full-support, reproducible") {
  Rng a = Rng::stream(51), b = Rng::stream(51);
  std::vector<int> sizes{4, 8};
  Pmf p = random_joint_pmf(sizes, a);
  Pmf q = random_joint_pmf(sizes, b);
  REQUIRE(p.support.size() == 32);
  REQUIRE(p.probs == q.probs);
  p.validate();
  double sum = 0.0;
  for (double w : p.probs) {
    REQUIRE(w > 0.0);
    sum += w;
  }
  REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(exact_entropy(p) <= 5.0);

  std::vector<int> bad{4, 0};
  REQUIRE_THROWS_AS(random_joint_pmf(bad, a), std::invalid_argument);
}

TEST_CASE("floor map multiplicities by hand") {
  // g = 1: injective on {0..3}, no ambiguity
  FloorPreimage unity = floor_preimage_bound(1.0, 9.0);
  REQUIRE(unity.max_multiplicity == 1);
  REQUIRE(unity.entropy_bound_bits == 0.0);
  REQUIRE(unity.uniform_conditional_bits == 0.0);

  // g = 1/2 on {0..3}: floors {0,0,1,1}, pairs collapse
  FloorPreimage half = floor_preimage_bound(0.5, 9.0);
  REQUIRE(half.max_multiplicity == 2);
  REQUIRE(half.entropy_bound_bits == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(half.uniform_conditional_bits == Catch::Approx(1.0).margin(1e-15));

  // g = 1/3 on {0..7}: floors {0,0,0,1,1,1,2,2}
  FloorPreimage third = floor_preimage_bound(1.0 / 3.0, 49.0, 4.0);
  REQUIRE(third.max_multiplicity == 3);
  REQUIRE(third.entropy_bound_bits == Catch::Approx(std::log2(3.0)).margin(1e-12));
  REQUIRE(third.uniform_conditional_bits ==
          Catch::Approx(0.75 * std::log2(3.0) + 0.25).margin(1e-12));

  // sign carries no extra ambiguity
  FloorPreimage neg = floor_preimage_bound(-0.5, 9.0);
  REQUIRE(neg.max_multiplicity == 2);

  REQUIRE_THROWS_AS(floor_preimage_bound(0.1, 9.0), std::invalid_argument);
  REQUIRE_THROWS_AS(floor_preimage_bound(3.0, 9.0), std::invalid_argument);
  REQUIRE_THROWS_AS(floor_preimage_bound(1.0, 9.0, 0.9), std::invalid_argument);
}

TEST_CASE("floor ambiguity shrinks as the gain grows") {
  int prev = 1 << 20;
  for (double g : {0.25, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0}) {
    const int mult = floor_preimage_bound(g, 400.0, 4.0).max_multiplicity;
    REQUIRE(mult <= prev);
    prev = mult;
  }
  // and the uniform conditional never exceeds the log bound
  Rng rng = Rng::stream(52);
  for (int t = 0; t < 200; ++t) {
    const double g = rng.uniform(0.25, 4.0);
    FloorPreimage fp = floor_preimage_bound(g, 961.0, 4.0);
    REQUIRE(fp.uniform_conditional_bits <= fp.entropy_bound_bits + 1e-12);
  }
}

TEST_CASE("single-letter entropy inequality on the integer model") {
  FadingState f;
  f.h = {1.5, 2.0};
  f.g = {1.0, 0.5};

  // g1 = 1 is injective: the ambiguity term vanishes and the inequality is
  // the data-processing statement H(Y2) >= H(X1 | X2)
  Rng rng = Rng::stream(53);
  std::vector<int> sizes{4, 4};
  Pmf joint = random_joint_pmf(sizes, rng);
  DetEntropyReport rep = det_entropy_check(f, 9.0, joint);
  REQUIRE(rep.h_x1_given_gx1 == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(rep.slack >= -1e-9);
  REQUIRE(!rep.violated);

  // perfectly correlated inputs: H(X1 | X2) = 0, slack is all of H(Y2)
  Pmf corr;
  for (int k = 0; k < 4; ++k) {
    corr.support.push_back({k, k});
    corr.probs.push_back(0.25);
  }
  DetEntropyReport rep2 = det_entropy_check(f, 9.0, corr);
  REQUIRE(rep2.h_x1_given_x2 == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(rep2.slack == Catch::Approx(rep2.h_y2).margin(1e-12));

  // randomized sweep: the inequality holds across fades and joint pmfs
  for (int t = 0; t < 200; ++t) {
    FadingState rf = sample_fading(rng);
    std::vector<int> s8{8, 8};
    Pmf j = random_joint_pmf(s8, rng);
    DetEntropyReport r = det_entropy_check(rf, 49.0, j);
    REQUIRE(!r.violated);
    REQUIRE(r.slack >= -1e-9);
  }
}

TEST_CASE("integer-model check validates its inputs") {
  FadingState f;
  f.h = {1.0, 1.0};
  f.g = {1.0, 1.0};
  Rng rng = Rng::stream(54);

  std::vector<int> huge{40, 40};
  Pmf big = random_joint_pmf(huge, rng);
  REQUIRE_THROWS_AS(det_entropy_check(f, 40.0 * 40.0, big), std::invalid_argument);

  std::vector<int> sizes{4, 4};
  Pmf ok = random_joint_pmf(sizes, rng);
  REQUIRE_THROWS_AS(det_entropy_check(f, 4.0, ok), std::invalid_argument);

  FadingState three;
  three.h = {1.0, 1.0, 1.0};
  three.g = three.h;
  REQUIRE_THROWS_AS(det_entropy_check(three, 9.0, ok), std::invalid_argument);
}
