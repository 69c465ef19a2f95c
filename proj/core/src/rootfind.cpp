#include "tmtrace/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace tmtrace {

namespace {

constexpr long kMaxScanNodes = 4'000'000;

BallReal two_cos(const BallReal& x) { return x.cos().mul_2exp(1); }

// Bisect a certified sign-change bracket [a, b] down to target width.
RootResult bisect(const PointFn& f, BallReal a, BallReal b, Tri sa,
                  double target_width, double scan_step) {
  RootResult out;
  out.scan_step = scan_step;
  while ((b - a).mid_double() > target_width) {
    bool split = false;
    // midpoint first, then off-center probes if its sign is indeterminate
    for (double frac : {0.5, 0.4, 0.6}) {
      int prec = a.precision();
      // collapse to an exact probe point so endpoint radii never compound
      BallReal m = (a + (b - a) * BallReal::from_double(frac, prec)).mid_ball();
      Tri sm = f(m).sign();
      if (sm == Tri::maybe) continue;
      if (sm == sa) a = m;
      else b = m;
      split = true;
      break;
    }
    if (!split) {
      out.status = RootStatus::undecidable;
      out.zero = hull(a, b);
      out.bracket = {a, b};
      return out;
    }
  }
  out.status = RootStatus::found;
  out.zero = hull(a, b);
  out.bracket = {a, b};
  return out;
}

RootResult directed_scan(const PointFn& f, const BallReal& lo, const BallReal& hi,
                         double scan_step, double rel_width, bool left_to_right) {
  if (scan_step <= 0.0) throw std::invalid_argument("zero scan: scan_step must be > 0");
  double width = (hi - lo).mid_double();
  if (width <= 0.0) throw std::invalid_argument("zero scan: empty interval");
  long nodes = static_cast<long>(std::ceil(width / scan_step));
  if (nodes > kMaxScanNodes) throw std::invalid_argument("zero scan: too many nodes");
  int prec = std::max(lo.precision(), hi.precision());
  BallReal step = BallReal::from_double(scan_step, prec);
  double target_width = width * rel_width;

  auto node = [&](long j) {
    BallReal x = left_to_right ? lo + step * BallReal::exact(j, prec)
                               : hi - step * BallReal::exact(j, prec);
    // clamp the last node onto the interval end
    if (left_to_right && x.lt(hi) != Tri::yes) x = hi;
    if (!left_to_right && lo.lt(x) != Tri::yes) x = lo;
    return x;
  };

  RootResult out;
  out.scan_step = scan_step;
  BallReal xa = node(0);
  Tri sa = f(xa).sign();
  if (sa == Tri::maybe) {
    out.status = RootStatus::undecidable;
    out.zero = xa;
    return out;
  }
  for (long j = 1; j <= nodes; ++j) {
    BallReal xb = node(j);
    Tri sb = f(xb).sign();
    if (sb == Tri::maybe) {
      out.status = RootStatus::undecidable;
      out.zero = xb;
      return out;
    }
    if (sb != sa) {
      if (left_to_right) return bisect(f, xa, xb, sa, target_width, scan_step);
      return bisect(f, xb, xa, sb, target_width, scan_step);
    }
    xa = xb;
    sa = sb;
  }
  out.status = RootStatus::not_found;
  return out;
}

}  // namespace

RootResult min_zero(const PointFn& f, const BallReal& lo, const BallReal& hi,
                    double scan_step, double rel_width) {
  return directed_scan(f, lo, hi, scan_step, rel_width, true);
}

RootResult max_zero(const PointFn& f, const BallReal& lo, const BallReal& hi,
                    double scan_step, double rel_width) {
  return directed_scan(f, lo, hi, scan_step, rel_width, false);
}

GapReport zero_gap_check(const PointFn& phi, const PointFn& psi, double delta,
                         int grid_points, int prec) {
  GapReport report;
  if (delta >= 0.01) return report;  // hypothesis requires delta < delta_0
  BallReal pi = BallReal::pi(prec);
  auto grid_ok = [&](const PointFn& f, int freq_exp) {
    for (int i = 0; i <= grid_points; ++i) {
      BallReal x = pi * BallReal::from_double(static_cast<double>(i) / grid_points, prec);
      BallReal err = (f(x) - two_cos(x.mul_2exp(freq_exp))).abs();
      if (err.lower_double() > delta) return false;
    }
    return true;
  };
  report.precondition_ok = grid_ok(phi, 0) && grid_ok(psi, 3);
  if (!report.precondition_ok) return report;

  double pid = pi.mid_double();
  report.xstar = min_zero(phi, BallReal::exact(0, prec), pi, pid / 64);
  if (report.xstar.status != RootStatus::found) return report;
  report.xsub = max_zero(psi, BallReal::exact(0, prec), report.xstar.zero.lower_bound(),
                         pid / 256);
  if (report.xsub.status != RootStatus::found) return report;

  report.gap = report.xstar.zero - report.xsub.zero;
  BallReal sixteenth = pi.mul_2exp(-4);
  BallReal tol = BallReal::from_double(2.0 * delta, prec);
  report.pass = (report.gap - sixteenth).abs().le(tol);
  return report;
}

std::vector<SigmaZero> sigma_sample(int n_max, double lambda, const BallReal& lo,
                                    const BallReal& hi, int prec) {
  if (n_max < 1 || n_max > 24)
    throw std::invalid_argument("sigma_sample: n_max must be in [1, 24]");
  std::vector<SigmaZero> out;
  BallReal l = BallReal::from_double(lambda, prec);
  double rho = rho_of_lambda(l).mid_double();
  double pid = BallReal::pi(prec).mid_double();
  double width = (hi - lo).mid_double();
  int sprec = std::max(lo.precision(), prec);

  for (int n = 1; n <= n_max; ++n) {
    double spacing = pid / (std::ldexp(1.0, n) * rho);
    double scan_step = std::min(spacing / 8, width / 16);
    BallReal step = BallReal::from_double(scan_step, sprec);
    long nodes = static_cast<long>(std::ceil(width / scan_step));
    if (nodes > kMaxScanNodes)
      throw std::invalid_argument("sigma_sample: too many scan nodes");
    auto f = [&, n](const BallReal& x) { return trace_eval(n, l, x); };
    BallReal xa = lo;
    Tri sa = f(xa).sign();
    long j = 1;
    while (sa == Tri::maybe && j <= nodes) {
      SigmaZero sz;
      sz.n = n;
      sz.root.status = RootStatus::undecidable;
      sz.root.zero = xa;
      out.push_back(sz);
      xa = lo + step * BallReal::exact(j++, sprec);
      sa = f(xa).sign();
    }
    for (; j <= nodes; ++j) {
      BallReal xb = lo + step * BallReal::exact(j, sprec);
      if (xb.lt(hi) != Tri::yes) xb = hi;
      Tri sb = f(xb).sign();
      if (sb == Tri::maybe) {
        SigmaZero sz;
        sz.n = n;
        sz.root.status = RootStatus::undecidable;
        sz.root.zero = xb;
        out.push_back(sz);
        continue;
      }
      if (sb != sa) {
        SigmaZero sz;
        sz.n = n;
        sz.root = bisect(f, xa, xb, sa, width * 0x1p-40, scan_step);
        out.push_back(sz);
      }
      xa = xb;
      sa = sb;
    }
  }
  return out;
}

}  // namespace tmtrace
