#include "kcomp/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace kcomp {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
// Newton iteration on P_n.
struct GaussRule {
  std::vector<double> x, w;
};

GaussRule make_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& gauss_rule(int n) {
  static GaussRule cache16 = make_gauss(16);
  if (n == 16) return cache16;
  thread_local GaussRule custom;
  thread_local int custom_n = -1;
  if (custom_n != n) {
    custom = make_gauss(n);
    custom_n = n;
  }
  return custom;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

AmbientSpace::AmbientSpace(StructureFunction E, InnerProductStrategy s,
                           QuadParams qp, SampleParams sp)
    : E_(std::move(E)), strategy_(s), quad_(qp), sample_(sp) {
  if (strategy_ == InnerProductStrategy::integer_sample && !E_.is_paley_wiener()) {
    throw ValidationError(
        "AmbientSpace: integer-sample strategy requires E = e^{-i pi z} exactly");
  }
  if (!(quad_.half_width > 0.0)) {
    throw ValidationError("AmbientSpace: quadrature half-width must be positive");
  }
  if (quad_.points_per_panel < 16) {
    throw ValidationError("AmbientSpace: quadrature node count must be >= 16");
  }
  if (sample_.half_range < 1) {
    throw ValidationError("AmbientSpace: sample half-range must be >= 1");
  }
}

AmbientSpace AmbientSpace::paley_wiener(SampleParams sp) {
  return AmbientSpace(StructureFunction(kPi, {}, 0.0),
                      InnerProductStrategy::integer_sample, QuadParams{}, sp);
}

AmbientSpace AmbientSpace::weighted(StructureFunction E, QuadParams qp) {
  return AmbientSpace(std::move(E), InnerProductStrategy::weighted_quadrature,
                      qp, SampleParams{});
}

std::pair<Evaluator, Evaluator> ab_split(const StructureFunction& E) {
  // Copies keep the evaluators value-like.
  StructureFunction copy = E;
  Evaluator a = [copy](cplx z) { return copy.A(z); };
  Evaluator b = [copy](cplx z) { return copy.B(z); };
  return {std::move(a), std::move(b)};
}

cplx kernel_value(const AmbientSpace& space, cplx w, cplx z) {
  const StructureFunction& E = space.structure();
  const cplx c = std::conj(w);
  const cplx aw = std::conj(E.A(w));
  const cplx bw = std::conj(E.B(w));
  if (std::abs(z - c) < 1e-6 * (1.0 + std::abs(z))) {
    // Removable singularity: N(c) = 0 identically, so evaluate N'(m)/pi at
    // the midpoint with central differences.
    const cplx m = 0.5 * (z + c);
    const double h = 1e-4 * (1.0 + std::abs(m));
    const cplx bp = (E.B(m + h) - E.B(m - h)) / (2.0 * h);
    const cplx ap = (E.A(m + h) - E.A(m - h)) / (2.0 * h);
    return (aw * bp - bw * ap) / kPi;
  }
  return (aw * E.B(z) - bw * E.A(z)) / (kPi * (z - c));
}

KernelSection kernel(const AmbientSpace& space, cplx w) {
  KernelSection s;
  s.anchor = w;
  const cplx d = kernel_value(space, w, w);
  if (std::abs(d.imag()) > 1e-8 * (1.0 + std::abs(d))) {
    throw NumericalError("kernel: diagonal value has a non-negligible imaginary part");
  }
  s.diag = std::max(d.real(), 0.0);
  const AmbientSpace* sp = &space;
  s.eval = [sp, w](cplx z) { return kernel_value(*sp, w, z); };
  return s;
}

namespace {

InnerProductResult ip_samples(const AmbientSpace& space, const Evaluator& F,
                              const Evaluator& G, const SampleParams& sp) {
  const long N = sp.half_range;
  cplx acc(0.0, 0.0);
  double decade_abs = 0.0;
  const long decade_from = N / 10;
  for (long n = -N; n <= N; ++n) {
    const cplx t = F(cplx(static_cast<double>(n), 0.0)) *
                   std::conj(G(cplx(static_cast<double>(n), 0.0)));
    acc += t;
    if (std::labs(n) > decade_from) decade_abs += std::abs(t);
  }
  InnerProductResult r;
  r.value = acc;
  r.tail_estimate = decade_abs;  // bound proxy for the uncomputed tail
  r.low_confidence = decade_abs > sp.tail_tol * (std::abs(acc) + 1e-300);
  return r;
}

InnerProductResult ip_quadrature(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G, const QuadParams& qp) {
  const StructureFunction& E = space.structure();
  auto integrand = [&](double t) -> cplx {
    const cplx zt(t, 0.0);
    const double e2 = std::norm(E.E(zt));
    return F(zt) * std::conj(G(zt)) / e2;
  };
  const GaussRule& rule = gauss_rule(qp.points_per_panel);
  const double T = qp.half_width;
  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * T / qp.panel_width)));
  const double h = 2.0 * T / panels;

  cplx core(0.0, 0.0);
  std::vector<double> log_t, log_m;  // for the tail-power fit
  for (int p = 0; p < panels; ++p) {
    const double a = -T + p * h, b = a + h;
    cplx ps(0.0, 0.0);
    double pabs = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * h * rule.x[i];
      const cplx v = integrand(t);
      ps += 0.5 * h * rule.w[i] * v;
      pabs += 0.5 * h * rule.w[i] * std::abs(v);
    }
    core += ps;
    const double mid = std::abs(0.5 * (a + b));
    if (mid >= T / 10.0 && pabs > 0.0) {
      log_t.push_back(std::log(mid));
      log_m.push_back(std::log(pabs / h));
    }
  }

  // Tail beyond [-T, T]: substitute u = 1/t, integrate g(u) = f(1/u)/u^2 on
  // (0, 1/T]. For rational integrands g is smooth through u = 0 and Gauss
  // panels recover the tail to near machine precision.
  cplx tail(0.0, 0.0);
  const int tail_panels = 4;
  const double ub = 1.0 / T;
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    for (int p = 0; p < tail_panels; ++p) {
      const double a = ub * p / tail_panels, b = ub * (p + 1) / tail_panels;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double u = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
        if (u <= 0.0) continue;
        tail += 0.5 * (b - a) * rule.w[i] * integrand(sgn / u) / (u * u);
      }
    }
  }

  InnerProductResult r;
  r.value = core + tail;
  // Power-law tail model for the confidence flag (|integrand| ~ C t^-p on
  // the last decade of panels).
  const double slope = ls_slope(log_t, log_m);
  const double p_fit = -slope;
  if (p_fit > 1.0 && !log_t.empty()) {
    double c_log = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      c_log += log_m[i] + p_fit * log_t[i];
    }
    c_log /= log_t.size();
    r.tail_estimate = std::exp(c_log) * std::pow(T, 1.0 - p_fit) / (p_fit - 1.0);
  } else {
    r.tail_estimate = std::numeric_limits<double>::infinity();
  }
  r.low_confidence = !(r.tail_estimate <= qp.tail_tol * (std::abs(r.value) + 1e-300));
  return r;
}

}  // namespace

InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G) {
  if (space.strategy() == InnerProductStrategy::integer_sample) {
    return ip_samples(space, F, G, space.sample_params());
  }
  return ip_quadrature(space, F, G, space.quad_params());
}

InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G, const SampleParams& sp) {
  if (space.strategy() != InnerProductStrategy::integer_sample) {
    throw ValidationError("inner_product: sample parameters given for a quadrature space");
  }
  return ip_samples(space, F, G, sp);
}

InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G, const QuadParams& qp) {
  if (space.strategy() != InnerProductStrategy::weighted_quadrature) {
    throw ValidationError("inner_product: quadrature parameters given for a sampling space");
  }
  return ip_quadrature(space, F, G, qp);
}

std::vector<double> basis_points(const AmbientSpace& space, double alpha,
                                 double lo, double hi) {
  if (!(alpha >= 0.0 && alpha < kPi)) {
    throw ValidationError("basis_points: alpha must lie in [0, pi)");
  }
  if (!(lo < hi)) return {};

  const StructureFunction& E = space.structure();
  double step = 0.25;
  std::vector<double> grid, phi;
  for (;;) {
    grid.clear();
    const int m = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)) + 1);
    for (int i = 0; i < m; ++i) {
      grid.push_back(lo + (hi - lo) * i / (m - 1));
    }
    try {
      phi = phase_at(E, grid);
      break;
    } catch (const RefinementNeededError&) {
      step *= 0.5;
      if (step < 1e-6) throw;
    }
  }

  // phi(t) continued from a known branch value at 'base'; valid while the
  // true phase stays within pi of it, which the bracket guarantees.
  auto local_phase = [&E](double t, double base) {
    const double principal = -std::arg(E.E(cplx(t, 0.0)));
    return base + std::remainder(principal - base, 2.0 * kPi);
  };

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double pa = phi[i], pb = phi[i + 1];
    const long kmin = static_cast<long>(std::ceil((pa - alpha) / kPi - 1e-12));
    const long kmax = static_cast<long>(std::floor((pb - alpha) / kPi + 1e-12));
    for (long k = kmin; k <= kmax; ++k) {
      const double level = alpha + k * kPi;
      double a = grid[i], b = grid[i + 1];
      double fa = pa - level;
      for (int it = 0; it < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = local_phase(m, pa) - level;
        if ((fa <= 0.0) == (fm <= 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      if (out.empty() || std::abs(root - out.back()) > 1e-9 * (1.0 + std::abs(root))) {
        out.push_back(root);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MembershipReport membership_heuristic(const AmbientSpace& space,
                                      const Evaluator& F,
                                      const MembershipProbeParams& probes) {
  const StructureFunction& E = space.structure();
  MembershipReport rep;

  // Weighted-norm scan on [-T, T] with per-panel magnitudes.
  const double T = std::min(space.quad_params().half_width, probes.axis_span);
  const GaussRule& rule = gauss_rule(16);
  const int panels = 200;
  const double h = 2.0 * T / panels;
  double total = 0.0, inner_half = 0.0;
  double band_near = 0.0, band_far = 0.0;  // [T/4, T/2) and [T/2, T]
  for (int p = 0; p < panels; ++p) {
    const double a = -T + p * h, b = a + h;
    double ps = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * h * rule.x[i];
      const cplx zt(t, 0.0);
      const double v = std::norm(F(zt)) / std::norm(E.E(zt));
      ps += 0.5 * h * rule.w[i] * v;
    }
    total += ps;
    const double mid = std::abs(0.5 * (a + b));
    if (mid <= T / 2.0) inner_half += ps;
    if (mid >= T / 4.0 && mid < T / 2.0) band_near += ps;
    if (mid >= T / 2.0) band_far += ps;
  }
  const double ratio = total / (inner_half + 1e-300);
  rep.norm_diverging = ratio > 1.5;
  // Decay power from the octave ratio: integrand ~ x^-p gives
  // band_far/band_near = 2^{1-p}. Averaging whole bands keeps oscillatory
  // integrands (sin^2-type) from polluting the estimate.
  double p_fit;
  if (band_far < 1e-12 * (total + 1e-300)) {
    p_fit = 10.0;  // negligible tail
  } else if (band_near <= 0.0) {
    p_fit = 0.0;
  } else {
    p_fit = 1.0 - std::log2(band_far / band_near);
  }
  rep.tail_exponent = p_fit;

  // Growth of |F(iy)/E(iy)| up the imaginary axis.
  const double y_max = std::max(probes.growth_y_max, 2.0);
  std::vector<double> ys, rs;
  for (double y = 1.0; y <= y_max; y *= 1.35) {
    const cplx iy(0.0, y);
    const double fa = std::abs(F(iy));
    const double ea = std::abs(E.E(iy));
    double r;
    if (!std::isfinite(fa) || fa <= 0.0) {
      r = std::isfinite(fa) ? -700.0 : 700.0;
    } else {
      r = std::log(fa) - std::log(ea);
    }
    ys.push_back(y);
    rs.push_back(r);
  }
  // Asymptotic slope from the upper half of the y range.
  std::vector<double> ys2(ys.begin() + ys.size() / 2, ys.end());
  std::vector<double> rs2(rs.begin() + rs.size() / 2, rs.end());
  rep.growth_slope = ls_slope(ys2, rs2);

  const double m_growth = 0.05 - rep.growth_slope;
  const double m_tail = p_fit - 1.0;
  const double m_norm = 1.5 - ratio;
  rep.margin = std::min({m_growth, m_tail, m_norm});
  rep.verdict = rep.margin > 0.0 ? MembershipVerdict::plausible
                                 : MembershipVerdict::implausible;
  return rep;
}

}  // namespace kcomp
