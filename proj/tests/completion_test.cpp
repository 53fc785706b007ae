#include <doctest.h>

#include <cmath>

#include "kcomp/completion.hpp"

using namespace kcomp;

namespace {

NodeSequence punctured_integers(int radius) {
  std::vector<cplx> pts;
  for (int n = 1; n <= radius; ++n) {
    pts.push_back({static_cast<double>(n), 0.0});
    pts.push_back({static_cast<double>(-n), 0.0});
  }
  return NodeSequence::truncated(pts, radius + 0.5);
}

RestrictedSpace one_gap(int radius) {
  return RestrictedSpace::build(AmbientSpace::paley_wiener(), punctured_integers(radius));
}

RestrictedSpace dim6_deficiency3() {
  const auto ambient = AmbientSpace::weighted(StructureFunction(
      0.0,
      {{-2.0, -1.0}, {-1.2, -0.6}, {-0.4, -1.4}, {0.4, -0.9}, {1.2, -1.1}, {2.0, -0.7}},
      0.0));
  return RestrictedSpace::build(
      ambient, NodeSequence::exact({{0.0, 1.0}, {1.5, -0.5}, {-1.5, 0.5}}));
}

}  // namespace

TEST_CASE("anchor candidates prefer the largest diagonal, ties toward zero") {
  const auto rs = one_gap(150);
  // kappa == 1: every admissible grid point ties, so the anchor is 0.
  const auto ranked = ranked_anchor_candidates(rs);
  REQUIRE(!ranked.empty());
  CHECK(ranked.front() == doctest::Approx(0.0));
  CHECK(choose_anchor(rs) == doctest::Approx(0.0));
}

TEST_CASE("anchor candidates respect the node exclusion distance") {
  const auto rs = one_gap(150);
  for (double x : ranked_anchor_candidates(rs)) {
    CHECK(rs.nodes().distance_to({x, 0.0}) > 1e-2);
  }
}

TEST_CASE("scan_zeros finds no zeros of a constant section") {
  const auto rs = one_gap(150);
  const auto sec = rs.kappa_section({0.0, 0.0});
  std::vector<std::string> anomalies;
  const auto zeros = scan_zeros(sec, 0.4, 3.6, {}, &anomalies);
  CHECK(zeros.empty());
  CHECK(anomalies.empty());
}

TEST_CASE("scan_zeros brackets and polishes simple zeros") {
  const auto rs = dim6_deficiency3();
  CompletionParams params;
  const double x0 = choose_anchor(rs, params);
  const auto sec = rs.kappa_section({x0, 0.0});
  const auto zeros = scan_zeros(sec, x0 - 25.0, x0 + 25.0, params);
  CHECK(zeros.size() == 2);  // deficiency 3 = anchor + 2 zeros
  for (double z : zeros) {
    CHECK(std::abs(sec({z, 0.0})) < 1e-8);
    CHECK(z != doctest::Approx(x0));
  }
}

TEST_CASE("one-gap completion returns the single point S = {0}") {
  const auto rs = one_gap(300);
  const auto res = complete(rs);
  CHECK(res.anchor == doctest::Approx(0.0));
  REQUIRE(res.s_points.size() == 1);
  CHECK(res.s_points[0] == doctest::Approx(0.0));
  CHECK(res.kappa_diag[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(res.diagnostics.orth_max_residual < 1e-8);
  CHECK_FALSE(res.diagnostics.reanchored);
}

TEST_CASE("a forced anchor is honored") {
  const auto rs = one_gap(150);
  CompletionParams params;
  params.forced_anchor = 0.4;
  const auto res = complete(rs, params);
  CHECK(res.anchor == doctest::Approx(0.4));
  REQUIRE(res.s_points.size() == 1);
  CHECK(res.s_points[0] == doctest::Approx(0.4));
}

TEST_CASE("finite-dimensional completion yields dim - |Lambda| points") {
  const auto rs = dim6_deficiency3();
  const auto res = complete(rs);
  CHECK(res.s_points.size() == 3);
  CHECK(std::is_sorted(res.s_points.begin(), res.s_points.end()));
  CHECK(res.diagnostics.orth_max_residual < 1e-8);
}

TEST_CASE("a too-narrow scan window is expanded for finite-dimensional spaces") {
  const auto rs = dim6_deficiency3();
  CompletionParams params;
  const double x0 = choose_anchor(rs, params);
  params.scan_window = {{x0 - 0.05, x0 + 0.05}};
  const auto res = complete(rs, params);
  CHECK(res.s_points.size() == 3);
  CHECK(res.diagnostics.window_expansions > 0);
}

TEST_CASE("the Parseval probe defect of a completing set is small") {
  const auto rs = one_gap(300);
  CHECK(parseval_probe_defect(rs, {0.0}, 0.0) < 0.02);
  // A gap that is not plugged leaves an order-one defect.
  CHECK(parseval_probe_defect(rs, {}, 0.0) > 0.5);
}

TEST_CASE("completions are stable across truncation radii") {
  const auto gen = [](double r) {
    return punctured_integers(static_cast<int>(r));
  };
  const auto rep = stabilize(gen, {150.0, 300.0}, AmbientSpace::paley_wiener());
  REQUIRE(rep.stages.size() == 2);
  CHECK(rep.matched == 1);
  CHECK(rep.unmatched == 0);
  CHECK(rep.max_drift < 1e-6);
}
