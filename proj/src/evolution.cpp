#include "mch/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mch/curve.hpp"
#include "mch/errors.hpp"
#include "mch/fft.hpp"
#include "mch/parallel.hpp"

namespace mch {

namespace {

struct SpectralWorkspace {
  std::size_t n = 0;
  double period = 0.0;
  std::vector<double> xi;
  std::vector<fft::cplx> mhat, buf;
  std::vector<double> u, ux, mx;

  SpectralWorkspace(std::size_t n_, double period_)
      : n(n_),
        period(period_),
        xi(fft::wavenumbers(n_, period_)),
        mhat(n_),
        buf(n_),
        u(n_),
        ux(n_),
        mx(n_) {}
};

void rhs_into(std::span<const double> m, SpectralWorkspace& ws,
              std::span<double> out, bool dealias) {
  const std::size_t n = ws.n;
  for (std::size_t k = 0; k < n; ++k) ws.buf[k] = m[k];
  fft::forward(ws.buf);
  ws.mhat = ws.buf;
  const fft::cplx iu{0.0, 1.0};

  for (std::size_t k = 0; k < n; ++k) ws.buf[k] = ws.mhat[k] * (iu * ws.xi[k]);
  ws.buf[n / 2] = 0.0;
  fft::inverse(ws.buf);
  for (std::size_t k = 0; k < n; ++k) ws.mx[k] = ws.buf[k].real();

  for (std::size_t k = 0; k < n; ++k)
    ws.buf[k] = ws.mhat[k] / (1.0 + ws.xi[k] * ws.xi[k]);
  fft::inverse(ws.buf);
  for (std::size_t k = 0; k < n; ++k) ws.u[k] = ws.buf[k].real();

  for (std::size_t k = 0; k < n; ++k)
    ws.buf[k] = ws.mhat[k] * (iu * ws.xi[k]) / (1.0 + ws.xi[k] * ws.xi[k]);
  ws.buf[n / 2] = 0.0;
  fft::inverse(ws.buf);
  for (std::size_t k = 0; k < n; ++k) ws.ux[k] = ws.buf[k].real();

  for (std::size_t k = 0; k < n; ++k) {
    const double adv = ws.u[k] * ws.u[k] - ws.ux[k] * ws.ux[k];
    out[k] = -(adv * ws.mx[k] + 2.0 * m[k] * m[k] * ws.ux[k]);
  }
  if (dealias) {
    for (std::size_t k = 0; k < n; ++k) ws.buf[k] = out[k];
    fft::forward(ws.buf);
    const auto cut = static_cast<double>(n) / 3.0;
    for (std::size_t k = 0; k < n; ++k) {
      auto sk = static_cast<std::ptrdiff_t>(k);
      if (k >= n / 2) sk -= static_cast<std::ptrdiff_t>(n);
      if (std::abs(static_cast<double>(sk)) > cut) ws.buf[k] = 0.0;
    }
    fft::inverse(ws.buf);
    for (std::size_t k = 0; k < n; ++k) out[k] = ws.buf[k].real();
  }
}

double advisory_dt_bound(const GridField& m0, SpectralWorkspace& ws) {
  std::vector<double> tmp(m0.n);
  rhs_into(m0.m, ws, tmp, false);  // fills ws.u, ws.ux as a side effect
  double speed = 0.0;
  for (std::size_t k = 0; k < m0.n; ++k)
    speed = std::max(speed, std::abs(ws.u[k] * ws.u[k] - ws.ux[k] * ws.ux[k]));
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * m0.h / speed;
}

}  // namespace

std::vector<double> rhs(const GridField& field) {
  if (!(field.min_m() > 0.0)) throw PositivityViolated();
  if (!fft::is_pow2(field.n))
    throw ValidationError("rhs needs a power-of-two periodic grid");
  SpectralWorkspace ws(field.n, field.period());
  std::vector<double> out(field.n);
  rhs_into(field.m, ws, out, true);
  return out;
}

Trajectory evolve(const GridField& m0, const EvolutionConfig& config) {
  if (!fft::is_pow2(m0.n))
    throw ValidationError("evolve needs a power-of-two periodic grid");
  if (!(m0.min_m() > 0.0)) throw PositivityViolated();
  if (config.t_end == 0.0) throw ValidationError("t_end must be nonzero");

  const std::size_t n = m0.n;
  SpectralWorkspace ws(n, m0.period());
  const double bound = advisory_dt_bound(m0, ws);
  double dt = config.dt;
  if (dt == 0.0) dt = 0.9 * std::min(bound, std::abs(config.t_end));
  if (std::abs(dt) > bound)
    throw ValidationError("dt exceeds the advisory bound 0.5*h/max|u^2-u_x^2|");
  if ((config.t_end > 0) != (dt > 0)) dt = -dt;

  const auto total_steps = static_cast<std::size_t>(
      std::ceil(std::abs(config.t_end / dt) - 1e-12));
  dt = config.t_end / static_cast<double>(total_steps);
  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(config.sample_interval /
                                               std::abs(dt))));
  const double floor =
      config.positivity_floor > 0.0 ? config.positivity_floor
                                    : 1e-10 * m0.kappa;

  Trajectory traj;
  traj.dt_used = dt;
  std::vector<double> m = m0.m;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  auto record = [&](double t, const std::vector<double>& state) {
    TrajectorySample s;
    s.t = t;
    s.field = m0;
    s.field.m = state;
    s.min_m = s.field.min_m();
    if (config.conserved_each_sample) s.conserved = conserved_report(s.field);
    traj.samples.push_back(std::move(s));
  };

  record(0.0, m);
  for (std::size_t step = 1; step <= total_steps; ++step) {
    rhs_into(m, ws, k1, config.dealias);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = m[j] + 0.5 * dt * k1[j];
    rhs_into(tmp, ws, k2, config.dealias);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = m[j] + 0.5 * dt * k2[j];
    rhs_into(tmp, ws, k3, config.dealias);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = m[j] + dt * k3[j];
    rhs_into(tmp, ws, k4, config.dealias);
    for (std::size_t j = 0; j < n; ++j)
      m[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    const double t = dt * static_cast<double>(step);
    double lo = m[0];
    bool finite = true;
    for (double v : m) {
      lo = std::min(lo, v);
      finite = finite && std::isfinite(v);
    }
    if (!finite) {
      traj.status = RunStatus::blow_up;
      traj.t_fail = t;
      return traj;
    }
    if (lo <= floor) {
      traj.status = RunStatus::positivity_lost;
      traj.t_fail = t;
      return traj;
    }
    if (step % stride == 0 || step == total_steps) record(t, m);
  }
  return traj;
}

DriftReport conservation_drift(const Trajectory& traj) {
  DriftReport rep;
  if (traj.samples.size() < 2) return rep;
  if (!traj.samples.front().conserved)
    throw ValidationError("trajectory was sampled without conserved reports");
  const auto base = traj.samples.front().conserved->values();
  for (const auto& s : traj.samples) {
    if (!s.conserved) continue;
    const auto v = s.conserved->values();
    for (int q = 0; q < 7; ++q)
      rep.drift[q] = std::max(
          rep.drift[q], std::abs(v[q] - base[q]) / (std::abs(base[q]) + 1e-30));
  }
  return rep;
}

namespace {

// Samples the exact 2-soliton at arbitrary phases onto the periodic box,
// unrolling each box point to the window centered on the soliton pair.
class FamilySampler {
 public:
  FamilySampler(const SolitonParams& base, double t, double x0, double h,
                std::size_t n, int oversample)
      : base_(base), t_(t), x0_(x0), h_(h), n_(n) {
    period_ = h * static_cast<double>(n);
    const TauSystem sys = two_soliton_system(base);
    const double y1 = soliton_center_y(base, t, 1);
    const double y2 = soliton_center_y(base, t, 2);
    double xc1, xc2, mv;
    curve_point_values(sys, t, y1, xc1, mv);
    curve_point_values(sys, t, y2, xc2, mv);
    x_center_ = 0.5 * (xc1 + xc2);

    const double x_lo = x_center_ - 0.5 * period_ - 1.0;
    const double x_hi = x_center_ + 0.5 * period_ + 1.0;
    const double kap = base.kappa;
    const double slack = 2.0 * kap * (base.psi1 + base.psi2) + 2.0;
    y_lo_ = kap * (x_lo - kap * kap * t - base.d) - slack;
    y_hi_ = kap * (x_hi - kap * kap * t - base.d) + slack;
    ny_ = static_cast<std::size_t>(oversample) * n + 2;

    unrolled_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = x0 + h * static_cast<double>(j);
      unrolled_[j] =
          xj + period_ * std::round((x_center_ - xj) / period_);
    }
  }

  // m~ of the family member with phases (a, b) on the box grid.
  std::vector<double> sample(double a, double b) const {
    SolitonParams q = build_params(base_.kappa, base_.c1, base_.c2, a, b,
                                   base_.d);
    const TauSystem sys = two_soliton_system(q);
    const double hy = (y_hi_ - y_lo_) / static_cast<double>(ny_ - 1);
    std::vector<double> kx(ny_), km(ny_), kmy(ny_);
    parallel_for(static_cast<std::ptrdiff_t>(ny_), [&](std::ptrdiff_t i) {
      const double y = y_lo_ + hy * static_cast<double>(i);
      curve_point_values2(sys, t_, y, kx[i], km[i], kmy[i]);
    });

    std::vector<double> out(n_);
    parallel_for(static_cast<std::ptrdiff_t>(n_), [&](std::ptrdiff_t j) {
      const double xq = unrolled_[j];
      auto it = std::upper_bound(kx.begin(), kx.end(), xq);
      std::size_t i = static_cast<std::size_t>(it - kx.begin());
      if (i == 0) i = 1;
      if (i >= ny_) i = ny_ - 1;
      const std::size_t i0 = i - 1;
      const double dx = kx[i] - kx[i0];
      double tt = (xq - kx[i0]) / dx;
      // invert x(y) with slopes dy/dx = m, then m(y) with slopes m_y
      const double t2 = tt * tt, t3 = t2 * tt;
      const double yq = (y_lo_ + hy * static_cast<double>(i0)) *
                            (2.0 * t3 - 3.0 * t2 + 1.0) +
                        km[i0] * dx * (t3 - 2.0 * t2 + tt) +
                        (y_lo_ + hy * static_cast<double>(i)) *
                            (-2.0 * t3 + 3.0 * t2) +
                        km[i] * dx * (t3 - t2);
      const double ty = (yq - (y_lo_ + hy * static_cast<double>(i0))) / hy;
      const double s2 = ty * ty, s3 = s2 * ty;
      out[j] = km[i0] * (2.0 * s3 - 3.0 * s2 + 1.0) +
               kmy[i0] * hy * (s3 - 2.0 * s2 + ty) +
               km[i] * (-2.0 * s3 + 3.0 * s2) + kmy[i] * hy * (s3 - s2);
    });
    return out;
  }

  double x_center() const { return x_center_; }
  std::span<const double> unrolled() const { return unrolled_; }

 private:
  SolitonParams base_;
  double t_, x0_, h_;
  std::size_t n_;
  double period_ = 0.0, x_center_ = 0.0;
  double y_lo_ = 0.0, y_hi_ = 0.0;
  std::size_t ny_ = 0;
  std::vector<double> unrolled_;
};

}  // namespace

GridField orbital_reference_field(const SolitonParams& p, double t, double x0,
                                  double h, std::size_t n, int oversample) {
  FamilySampler sampler(p, t, x0, h, n, oversample);
  GridField f;
  f.x0 = x0;
  f.h = h;
  f.n = n;
  f.kappa = p.kappa;
  f.periodic = true;
  f.m = sampler.sample(p.y10, p.y20);
  return f;
}

OrbitalFit orbital_distance(const GridField& field, const SolitonParams& p,
                            double t, const OrbitalOptions& opts) {
  if (!field.periodic || !fft::is_pow2(field.n))
    throw ValidationError("orbital_distance needs a power-of-two periodic grid");
  FamilySampler sampler(p, t, field.x0, field.h, field.n, opts.oversample);

  int evals = 0;
  auto distance = [&](double a, double b) {
    const auto cand = sampler.sample(a, b);
    std::vector<double> d(field.n);
    for (std::size_t j = 0; j < field.n; ++j) d[j] = field.m[j] - cand[j];
    return sobolev_norm(d, field.h, 2, true);
  };

  // coarse search over +-widths soliton widths in each phase; candidates run
  // in parallel (the nested loops inside sample() then stay serial)
  const int g = opts.grid_points;
  const double ra = opts.widths / p.k1, rb = opts.widths / p.k2;
  std::vector<double> vals(static_cast<std::size_t>(g) * g);
  std::vector<std::pair<double, double>> pts(vals.size());
  for (int ia = 0; ia < g; ++ia)
    for (int ib = 0; ib < g; ++ib) {
      const double a =
          p.y10 - ra + 2.0 * ra * static_cast<double>(ia) / (g - 1);
      const double b =
          p.y20 - rb + 2.0 * rb * static_cast<double>(ib) / (g - 1);
      pts[static_cast<std::size_t>(ia) * g + ib] = {a, b};
    }
  parallel_for(static_cast<std::ptrdiff_t>(pts.size()), [&](std::ptrdiff_t i) {
    vals[i] = distance(pts[i].first, pts[i].second);
  });
  evals += static_cast<int>(pts.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] < vals[best]) best = i;

  // Nelder-Mead from the best coarse cell
  struct Vertex {
    double a, b, f;
  };
  const double step_a = 2.0 * ra / (g - 1), step_b = 2.0 * rb / (g - 1);
  std::array<Vertex, 3> simplex{
      Vertex{pts[best].first, pts[best].second, vals[best]},
      Vertex{pts[best].first + step_a, pts[best].second, 0.0},
      Vertex{pts[best].first, pts[best].second + step_b, 0.0}};
  auto nm_distance = [&](double a, double b) {
    ++evals;
    return distance(a, b);
  };
  simplex[1].f = nm_distance(simplex[1].a, simplex[1].b);
  simplex[2].f = nm_distance(simplex[2].a, simplex[2].b);

  OrbitalFit fit;
  fit.stalled = true;
  for (int it = 0; it < opts.max_iter; ++it) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& u, const Vertex& v) { return u.f < v.f; });
    const double diam =
        std::max(std::hypot(simplex[1].a - simplex[0].a,
                            simplex[1].b - simplex[0].b),
                 std::hypot(simplex[2].a - simplex[0].a,
                            simplex[2].b - simplex[0].b));
    if (diam < opts.nm_tol) {
      fit.stalled = false;
      break;
    }
    const double ca = 0.5 * (simplex[0].a + simplex[1].a);
    const double cb = 0.5 * (simplex[0].b + simplex[1].b);
    const Vertex& worst = simplex[2];
    Vertex refl{ca + (ca - worst.a), cb + (cb - worst.b), 0.0};
    refl.f = nm_distance(refl.a, refl.b);
    if (refl.f < simplex[0].f) {
      Vertex exp_{ca + 2.0 * (ca - worst.a), cb + 2.0 * (cb - worst.b), 0.0};
      exp_.f = nm_distance(exp_.a, exp_.b);
      simplex[2] = exp_.f < refl.f ? exp_ : refl;
    } else if (refl.f < simplex[1].f) {
      simplex[2] = refl;
    } else {
      Vertex con{ca + 0.5 * (worst.a - ca), cb + 0.5 * (worst.b - cb), 0.0};
      con.f = nm_distance(con.a, con.b);
      if (con.f < worst.f) {
        simplex[2] = con;
      } else {
        for (int v = 1; v < 3; ++v) {
          simplex[v].a = 0.5 * (simplex[v].a + simplex[0].a);
          simplex[v].b = 0.5 * (simplex[v].b + simplex[0].b);
          simplex[v].f = nm_distance(simplex[v].a, simplex[v].b);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& u, const Vertex& v) { return u.f < v.f; });
  fit.distance = simplex[0].f;
  fit.y10_fit = simplex[0].a;
  fit.y20_fit = simplex[0].b;
  fit.evals = evals;
  return fit;
}

namespace {

// Wrapped-argmax crest locator with parabolic refinement.
struct CrestHit {
  double x_wrapped;
  double value;
};

CrestHit locate_crest(const GridField& f, std::size_t exclude_center,
                      double exclude_radius) {
  const std::size_t n = f.n;
  const double P = f.period();
  std::size_t best = n;  // invalid
  for (std::size_t j = 0; j < n; ++j) {
    if (exclude_radius > 0.0) {
      double dx = std::abs(static_cast<double>(j) -
                           static_cast<double>(exclude_center)) *
                  f.h;
      dx = std::min(dx, P - dx);
      if (dx < exclude_radius) continue;
    }
    if (best == n || f.m[j] > f.m[best]) best = j;
  }
  const std::size_t jm = (best + n - 1) % n, jp = (best + 1) % n;
  const double fm = f.m[jm], f0 = f.m[best], fp = f.m[jp];
  const double denom = fm - 2.0 * f0 + fp;
  double off = 0.0;
  if (denom < 0.0) off = 0.5 * (fm - fp) / denom;
  off = std::clamp(off, -0.5, 0.5);
  CrestHit hit;
  hit.x_wrapped = f.x0 + f.h * (static_cast<double>(best) + off);
  hit.value = f0 - 0.25 * (fm - fp) * off;
  return hit;
}

std::size_t index_of_x(const GridField& f, double x_wrapped) {
  double rel = (x_wrapped - f.x0) / f.h;
  auto j = static_cast<std::ptrdiff_t>(std::llround(rel));
  const auto n = static_cast<std::ptrdiff_t>(f.n);
  j = ((j % n) + n) % n;
  return static_cast<std::size_t>(j);
}

double unwrap_near(double x_wrapped, double x_expected, double period) {
  return x_wrapped + period * std::round((x_expected - x_wrapped) / period);
}

}  // namespace

CollisionReport collision_experiment(const SolitonParams& p,
                                     const EvolutionConfig& config) {
  const double half_width =
      config.half_width > 0.0 ? config.half_width : 60.0 / p.k2;
  const std::size_t n = config.grid_n;
  // box centered on the soliton pair at t = 0
  const TauSystem sys = two_soliton_system(p);
  double xc1, xc2, mv;
  curve_point_values(sys, 0.0, soliton_center_y(p, 0.0, 1), xc1, mv);
  curve_point_values(sys, 0.0, soliton_center_y(p, 0.0, 2), xc2, mv);
  const double box_center = 0.5 * (xc1 + xc2);
  const double h = 2.0 * half_width / static_cast<double>(n);
  const double x0 = box_center - half_width;

  GridField m0 = orbital_reference_field(p, 0.0, x0, h, n, 4);
  Trajectory traj = evolve(m0, config);

  CollisionReport rep;
  rep.status = traj.status;
  rep.drift = conservation_drift(traj);
  rep.amp_fast_expected = one_soliton_m_crest(p.c1, p.kappa);
  rep.amp_slow_expected = one_soliton_m_crest(p.c2, p.kappa);
  const PhaseShift shift = collision_phase_shift(p);
  rep.shift_fast_predicted = shift.x_shift_prediction;
  rep.shift_slow_predicted =
      shift.xi_shift / (p.kappa * p.k2) + 2.0 * p.psi1;

  // Track both crests through the run; the series are unwrapped by
  // continuity so wrap-around of the periodic box does not matter.
  const double P = m0.period();
  const double min_sep = std::min(10.0, 0.125 * P);
  double exp_fast = unwrap_near(xc1, xc1, P), exp_slow = xc2;
  std::vector<double> amp_fast, amp_slow;
  for (const auto& s : traj.samples) {
    const CrestHit first = locate_crest(s.field, 0, 0.0);
    const CrestHit second =
        locate_crest(s.field, index_of_x(s.field, first.x_wrapped), min_sep);
    // label by amplitude: the faster soliton is the taller one
    const CrestHit& fast = first.value >= second.value ? first : second;
    const CrestHit& slow = first.value >= second.value ? second : first;
    const double t = s.t;
    const double xf = unwrap_near(fast.x_wrapped, exp_fast, P);
    const double xs = unwrap_near(slow.x_wrapped, exp_slow, P);
    rep.track_t.push_back(t);
    rep.track_fast_x.push_back(xf);
    rep.track_slow_x.push_back(xs);
    amp_fast.push_back(fast.value);
    amp_slow.push_back(slow.value);
    const double dt_next =
        traj.samples.size() > 1 ? traj.samples[1].t - traj.samples[0].t : 0.0;
    exp_fast = xf + p.c1 * dt_next;
    exp_slow = xs + p.c2 * dt_next;
  }

  const std::size_t ns = rep.track_t.size();
  if (ns >= 10) {
    const std::size_t win = std::max<std::size_t>(2, ns / 5);
    auto offset_mean = [&](std::size_t lo, std::size_t hi, double speed,
                           const std::vector<double>& xs) {
      double acc = 0.0;
      for (std::size_t j = lo; j < hi; ++j)
        acc += xs[j] - speed * rep.track_t[j];
      return acc / static_cast<double>(hi - lo);
    };
    const double fast_pre = offset_mean(0, win, p.c1, rep.track_fast_x);
    const double fast_post = offset_mean(ns - win, ns, p.c1, rep.track_fast_x);
    const double slow_pre = offset_mean(0, win, p.c2, rep.track_slow_x);
    const double slow_post = offset_mean(ns - win, ns, p.c2, rep.track_slow_x);
    rep.shift_fast_measured = fast_post - fast_pre;
    rep.shift_slow_measured = slow_post - slow_pre;
    rep.amp_fast_measured = amp_fast.back();
    rep.amp_slow_measured = amp_slow.back();
    rep.ordering_restored = rep.track_fast_x.back() > rep.track_slow_x.back();
  }
  return rep;
}

StabilityReport stability_experiment(const SolitonParams& p,
                                     const PerturbationSpec& pert,
                                     const EvolutionConfig& config,
                                     const OrbitalOptions& opts) {
  const double half_width =
      config.half_width > 0.0 ? config.half_width : 60.0 / p.k2;
  const std::size_t n = config.grid_n;
  const TauSystem sys = two_soliton_system(p);
  double xc1, xc2, mv;
  curve_point_values(sys, 0.0, soliton_center_y(p, 0.0, 1), xc1, mv);
  curve_point_values(sys, 0.0, soliton_center_y(p, 0.0, 2), xc2, mv);
  const double box_center = 0.5 * (xc1 + xc2);
  const double h = 2.0 * half_width / static_cast<double>(n);
  const double x0 = box_center - half_width;

  GridField base = orbital_reference_field(p, 0.0, x0, h, n, opts.oversample);

  // unit-H2 bump between the solitons
  const double xc = pert.center.value_or(box_center);
  std::vector<double> bump(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = x0 + h * static_cast<double>(j);
    const double arg = (unwrap_near(xj, xc, base.period()) - xc) / pert.width;
    const double c = std::cosh(arg);
    bump[j] = 1.0 / (c * c);
  }
  const double bnorm = sobolev_norm(bump, h, 2, true);
  for (double& v : bump) v /= bnorm;

  StabilityReport rep;
  for (double delta : pert.deltas) {
    GridField m0 = base;
    for (std::size_t j = 0; j < n; ++j) m0.m[j] += delta * bump[j];

    EvolutionConfig cfg = config;
    cfg.conserved_each_sample = false;
    Trajectory traj = evolve(m0, cfg);

    StabilityRun run;
    run.delta = delta;
    run.status = traj.status;
    for (const auto& s : traj.samples) {
      const OrbitalFit fit = orbital_distance(s.field, p, s.t, opts);
      run.times.push_back(s.t);
      run.distances.push_back(fit.distance);
      run.sup_distance = std::max(run.sup_distance, fit.distance);
    }
    run.amplification = delta > 0.0 ? run.sup_distance / delta : 0.0;
    rep.runs.push_back(std::move(run));
  }

  double amp_lo = 1e300, amp_hi = 0.0;
  for (const auto& run : rep.runs) {
    if (run.delta <= 0.0) continue;
    amp_lo = std::min(amp_lo, run.amplification);
    amp_hi = std::max(amp_hi, run.amplification);
  }
  rep.amp_ratio = amp_lo > 0.0 && amp_lo < 1e300 ? amp_hi / amp_lo : 0.0;
  return rep;
}

}  // namespace mch
