#include <doctest.h>

#include <cmath>

#include "kcomp/completion.hpp"
#include "kcomp/verify.hpp"

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

NodeSequence integers_with_zero(int radius) {
  auto seq = punctured_integers(radius);
  seq.nodes.push_back({0.0, 0.0});
  return seq;
}

AmbientSpace dim2_space() {
  return AmbientSpace::weighted(
      StructureFunction(0.0, {{0.0, -1.0}, {0.0, -1.0}}, 0.0));
}

RestrictedSpace dim4_deficiency2() {
  const auto ambient = AmbientSpace::weighted(StructureFunction(
      0.0, {{-1.5, -0.8}, {-0.5, -1.2}, {0.5, -0.6}, {1.5, -1.0}}, 0.0));
  return RestrictedSpace::build(ambient,
                                NodeSequence::exact({{0.3, 0.4}, {-0.8, -0.2}}));
}

}  // namespace

TEST_CASE("prop1 accepts the full integer lattice as complete and minimal") {
  Prop1Params params;
  params.window_radius = 300.5;
  const auto rep = prop1_check(AmbientSpace::paley_wiener(), integers_with_zero(300),
                               params);
  CHECK(rep.windowed);
  CHECK(rep.cond1_converged);
  CHECK(rep.cond2_pass);
  CHECK_FALSE(rep.cond3_violation);
  CHECK(rep.cond3_probe_count >= 3);
  CHECK(rep.cond3_label.find("heuristic") != std::string::npos);
  CHECK(rep.pass());
}

TEST_CASE("prop1 accepts an exact finite complete set") {
  // In the dim-2 space, {0, 1} is complete and minimal.
  const auto rep = prop1_check(dim2_space(),
                               NodeSequence::exact({{0.0, 0.0}, {1.0, 0.0}}));
  CHECK_FALSE(rep.windowed);
  CHECK(rep.cond1_converged);
  CHECK(rep.cond2_pass);
  CHECK_FALSE(rep.cond3_violation);
}

TEST_CASE("prop1 rejects a deficient union through condition 2") {
  // Three kernels cannot span PW; G/(z - mu) is a polynomial, not in the
  // space, so condition 2 must fail.
  const auto rep = prop1_check(AmbientSpace::paley_wiener(),
                               NodeSequence::exact({{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
  CHECK_FALSE(rep.cond2_pass);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("prop1 flags an over-complete exact union through condition 3") {
  // In the dim-2 space, three points are one too many: G has degree 3 and
  // G/(z - mu) of degree 2 is already outside, so condition 2 fails; the
  // union cannot pass.
  const auto rep = prop1_check(dim2_space(),
                               NodeSequence::exact({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}));
  CHECK_FALSE(rep.pass());
}

TEST_CASE("minimal uniqueness passes on a completing set and fails on a subset") {
  const auto rs = dim4_deficiency2();
  const auto res = complete(rs);
  REQUIRE(res.s_points.size() == 2);
  const auto rep = minimal_uniqueness(rs, res.s_points, res.anchor);
  CHECK(rep.uniqueness_verdict == "pass");
  CHECK(rep.uniqueness_residual > 0.5);
  CHECK(rep.minimality_pass);
  REQUIRE(rep.witnesses.size() == 2);
  for (const auto& w : rep.witnesses) {
    CHECK(w.pass);
    CHECK(w.value_at_s0 > 1e-8);
    CHECK(w.max_off_value <= 1e-6);
  }

  // Dropping a point leaves a nonzero element vanishing on the rest.
  const auto dropped = minimal_uniqueness(rs, {res.anchor}, res.anchor);
  CHECK(dropped.uniqueness_verdict == "fail");
  CHECK(dropped.uniqueness_residual < 1e-3);
}

TEST_CASE("parseval defect vanishes for kernel sections at S") {
  const auto rs = dim4_deficiency2();
  const auto res = complete(rs);
  std::vector<KappaCombination> probes;
  for (double s : res.s_points) {
    probes.push_back({{cplx(s, 0.0)}, {cplx(1.0, 0.0)}});
  }
  CHECK(parseval_defect(rs, res.s_points, probes) < 1e-8);
}

TEST_CASE("parseval defect is invariant under a unimodular scaling of the probe") {
  const auto rs = dim4_deficiency2();
  const auto res = complete(rs);
  const KappaCombination probe{{cplx(0.37, 0.0), cplx(-1.11, 0.0)},
                               {cplx(0.8, 0.1), cplx(0.3, -0.4)}};
  KappaCombination rotated = probe;
  const cplx phase = std::exp(cplx(0.0, 0.9));
  for (auto& c : rotated.coeffs) c *= phase;
  const double d0 = parseval_defect(rs, res.s_points, {probe});
  const double d1 = parseval_defect(rs, res.s_points, {rotated});
  CHECK(d1 == doctest::Approx(d0).epsilon(1e-10));
}

TEST_CASE("the finite-dimensional oracle certifies ranks") {
  const auto rs = dim4_deficiency2();
  const auto res = complete(rs);
  const auto& E = rs.ambient().structure();
  const auto rep = finite_dim_oracle(E, rs.nodes(), res.s_points);
  CHECK(rep.dim == 4);
  CHECK(rep.full_rank == 4);
  REQUIRE(rep.leave_one_out.size() == 4);
  for (int r : rep.leave_one_out) CHECK(r == 3);
  CHECK(rep.complete_and_minimal);

  // A degenerate S (a repeated point) breaks minimality and the rank.
  const auto part =
      finite_dim_oracle(E, rs.nodes(), {res.s_points[0], res.s_points[0]});
  CHECK_FALSE(part.complete_and_minimal);
  CHECK(part.full_rank < 4);
}

TEST_CASE("completeness residual decreases with the truncation order") {
  const auto rs = RestrictedSpace::build(AmbientSpace::paley_wiener(),
                                         punctured_integers(400));
  const auto trend = completeness_residual(rs, {0.0}, {0.3, 0.0}, {50, 100, 200});
  REQUIRE(trend.size() == 3);
  CHECK(trend[0] > trend[1]);
  CHECK(trend[1] > trend[2]);
  CHECK(trend[2] > 0.0);
}
