#include <doctest.h>

#include <cmath>

#include "kcomp/nodes.hpp"

using namespace kcomp;

TEST_CASE("validate rejects duplicates and non-finite nodes") {
  CHECK_THROWS_AS(NodeSequence::exact({{1.0, 0.0}, {1.0, 0.0}}).validate(),
                  ValidationError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(NodeSequence::exact({{inf, 0.0}}).validate(), ValidationError);
  CHECK_NOTHROW(NodeSequence::exact({{1.0, 0.0}, {-1.0, 0.5}}).validate());
  CHECK_THROWS_AS(NodeSequence::truncated({{1.0, 0.0}}, -2.0), ValidationError);
}

TEST_CASE("nodes_by_modulus breaks modulus ties by real then imaginary part") {
  const auto seq = NodeSequence::exact({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}});
  const auto sorted = seq.nodes_by_modulus();
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0] == cplx(-1.0, 0.0));
  CHECK(sorted[1] == cplx(0.0, 1.0));
  CHECK(sorted[2] == cplx(1.0, 0.0));
}

TEST_CASE("contains and distance_to") {
  const auto seq = NodeSequence::exact({{2.0, 0.0}, {0.0, -3.0}});
  CHECK(seq.contains({2.0, 0.0}));
  CHECK_FALSE(seq.contains({2.1, 0.0}));
  CHECK(seq.contains({2.05, 0.0}, 0.1));
  CHECK(seq.distance_to({2.0, 1.0}) == doctest::Approx(1.0));
  CHECK(std::isinf(NodeSequence::exact({}).distance_to({0.0, 0.0})));
}

TEST_CASE("blaschke_sum is zero and convergent for real nodes") {
  std::vector<cplx> pts;
  for (int n = 1; n <= 200; ++n) {
    pts.push_back({static_cast<double>(n), 0.0});
    pts.push_back({static_cast<double>(-n), 0.0});
  }
  const auto rep = blaschke_sum(NodeSequence::exact(pts), pts.size());
  CHECK(rep.total() == 0.0);
  CHECK(rep.verdict == BlaschkeVerdict::convergent);
}

TEST_CASE("blaschke_sum converges for quadratically spread imaginary nodes") {
  // lambda_n = i n^2: terms n^2/n^4 = 1/n^2, sum pi^2/6.
  std::vector<cplx> pts;
  for (int n = 1; n <= 3000; ++n) pts.push_back({0.0, static_cast<double>(n) * n});
  const auto rep = blaschke_sum(NodeSequence::exact(pts), pts.size());
  CHECK(rep.verdict == BlaschkeVerdict::convergent);
  CHECK(rep.total() == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-3));
  CHECK(rep.decay_exponent == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("blaschke_sum diverges for the harmonic imaginary sequence") {
  std::vector<cplx> pts;
  for (int n = 1; n <= 100000; ++n) pts.push_back({0.0, static_cast<double>(-n)});
  const auto rep = blaschke_sum(NodeSequence::exact(pts), pts.size());
  CHECK(rep.verdict == BlaschkeVerdict::divergent);
  CHECK(rep.total() > 11.0);
  CHECK(rep.last_decade_increment > 1e-8);
  REQUIRE(!rep.partial_sums.empty());
  for (std::size_t i = 1; i < rep.partial_sums.size(); ++i) {
    CHECK(rep.partial_sums[i] >= rep.partial_sums[i - 1]);
  }
}

TEST_CASE("blaschke_sum rejects zero nodes and empty requests") {
  CHECK_THROWS_AS(blaschke_sum(NodeSequence::exact({{0.0, 0.0}}), 1), ValidationError);
  CHECK_THROWS_AS(blaschke_sum(NodeSequence::exact({{1.0, 0.0}}), 0), ValidationError);
}
