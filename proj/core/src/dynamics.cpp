#include "tmtrace/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace tmtrace {

namespace {

// f - 2 and +2 shorthands on the constant coefficient
LocalSeries minus_two(const LocalSeries& f) {
  LocalSeries r = f;
  r.set_coeff(0, f.coeff(0) - BallReal::exact(2, f.coeff(0).precision()));
  return r;
}

LocalSeries plus_two(const LocalSeries& f) {
  LocalSeries r = f;
  r.set_coeff(0, f.coeff(0) + BallReal::exact(2, f.coeff(0).precision()));
  return r;
}

BallReal two_cos(const BallReal& x) { return x.cos().mul_2exp(1); }

}  // namespace

SeriesPair phi_step(const SeriesPair& pair) {
  LocalSeries next =
      plus_two(series_mul(series_mul(pair.prev, pair.prev), minus_two(pair.curr)));
  return SeriesPair{pair.curr, std::move(next), pair.index + 1};
}

BallReal trace_eval(int n, const BallReal& lambda, const BallReal& x) {
  if (n < 1) throw std::invalid_argument("trace_eval: n must be >= 1");
  int prec = std::max(lambda.precision(), x.precision());
  BallReal two = BallReal::exact(2, prec);
  BallReal l2 = lambda * lambda;
  BallReal x2 = x * x;
  BallReal h1 = x2 - l2 - two;
  if (n == 1) return h1;
  BallReal d = x2 - l2;
  BallReal h2 = d * d - x2.mul_2exp(2) + two;
  BallReal a = h1, b = h2;
  for (int j = 2; j < n; ++j) {
    BallReal c = a * a * (b - two) + two;
    a = b;
    b = c;
  }
  return b;
}

BallReal trace_eval(int n, double lambda, const BallReal& x) {
  return trace_eval(n, BallReal::from_double(lambda, x.precision()), x);
}

mpq_class trace_eval_exact(int n, const mpq_class& lambda, const mpq_class& x) {
  if (n < 1) throw std::invalid_argument("trace_eval_exact: n must be >= 1");
  mpq_class l2 = lambda * lambda;
  mpq_class x2 = x * x;
  mpq_class h1 = x2 - l2 - 2;
  if (n == 1) return h1;
  mpq_class d = x2 - l2;
  mpq_class h2 = d * d - 4 * x2 + 2;
  mpq_class a = h1, b = h2;
  for (int j = 2; j < n; ++j) {
    mpq_class c = a * a * (b - 2) + 2;
    a = b;
    b = c;
  }
  return b;
}

namespace {

using Poly = std::vector<mpq_class>;

Poly poly_mul(const Poly& f, const Poly& g) {
  Poly r(f.size() + g.size() - 1, mpq_class(0));
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  return r;
}

}  // namespace

std::vector<mpq_class> trace_poly_expand(int n, const mpq_class& lambda, int cap) {
  if (n < 1) throw std::invalid_argument("trace_poly_expand: n must be >= 1");
  if (n > cap) throw std::invalid_argument("trace_poly_expand: cap exceeded");
  mpq_class l2 = lambda * lambda;
  Poly h1 = {-l2 - 2, 0, 1};
  if (n == 1) return h1;
  Poly h2 = {l2 * l2 + 2, 0, -2 * l2 - 4, 0, 1};
  Poly a = h1, b = h2;
  for (int j = 2; j < n; ++j) {
    Poly bm2 = b;
    bm2[0] -= 2;
    Poly c = poly_mul(poly_mul(a, a), bm2);
    c[0] += 2;
    a = b;
    b = c;
  }
  return b;
}

LocalSeries trace_series(int n, const BallReal& lambda, const BallReal& center,
                         int order, int prec) {
  if (n < 1) throw std::invalid_argument("trace_series: n must be >= 1");
  // x = center + u as a series in u
  LocalSeries x(center, order, prec);
  x.set_coeff(0, center);
  if (order >= 1) x.set_coeff(1, BallReal::exact(1, prec));
  BallReal two = BallReal::exact(2, prec);
  BallReal l2 = lambda * lambda;
  LocalSeries x2 = series_mul(x, x);
  LocalSeries h1 = x2;
  h1.set_coeff(0, h1.coeff(0) - l2 - two);
  if (n == 1) return h1;
  LocalSeries d = x2;
  d.set_coeff(0, d.coeff(0) - l2);
  LocalSeries h2 = series_mul(d, d);
  for (int m = 0; m <= order; ++m)
    h2.set_coeff(m, h2.coeff(m) - x2.coeff(m).mul_2exp(2));
  h2.set_coeff(0, h2.coeff(0) + two);
  SeriesPair pair{std::move(h1), std::move(h2), 2};
  for (int j = 2; j < n; ++j) pair = phi_step(pair);
  return pair.curr;
}

BallReal rho_of_lambda(const BallReal& lambda) {
  int prec = lambda.precision();
  BallReal one = BallReal::exact(1, prec);
  BallReal two = BallReal::exact(2, prec);
  BallReal l2 = lambda * lambda;
  return (one + l2.mul_2exp(1)) * ((one + l2) * (two + l2)).sqrt();
}

RenormPair trace_renorm_pair(double lambda, int prec) {
  BallReal l = BallReal::from_double(lambda, prec);
  BallReal x0 = (BallReal::exact(2, prec) + l * l).sqrt();
  BallReal factor = rho_of_lambda(l).mul_2exp(4);
  RenormPair p;
  p.pm1 = [l](const BallReal& x) { return trace_eval(4, l, x); };
  p.p0 = [l](const BallReal& x) { return trace_eval(5, l, x); };
  p.x0 = x0;
  p.factor = factor;
  p.prec = prec;
  return p;
}

RenormPair cosine_renorm_pair(const BallReal& x0, const BallReal& factor, int prec) {
  RenormPair p;
  p.pm1 = [x0, factor](const BallReal& x) {
    return two_cos(factor.mul_2exp(-1) * (x - x0));
  };
  p.p0 = [x0, factor](const BallReal& x) { return two_cos(factor * (x - x0)); };
  p.x0 = x0;
  p.factor = factor;
  p.prec = prec;
  return p;
}

BallReal iterate_eval(const RenormPair& pair, int k, const BallReal& x) {
  if (k < -1) throw std::invalid_argument("iterate_eval: k must be >= -1");
  BallReal a = pair.pm1(x);
  if (k == -1) return a;
  BallReal b = pair.p0(x);
  BallReal two = BallReal::exact(2, pair.prec);
  for (int j = 1; j <= k; ++j) {
    BallReal c = a * a * (b - two) + two;
    a = b;
    b = c;
  }
  return b;
}

BallReal renormalized_delta(const RenormPair& pair, int k, const BallReal& x) {
  BallReal y = x / pair.factor.mul_2exp(k) + pair.x0;
  return iterate_eval(pair, k, y) - two_cos(x);
}

BallReal delta_recurrence_residual(const RenormPair& pair, int k, const BallReal& x) {
  if (k < 1) throw std::invalid_argument("delta_recurrence_residual: k must be >= 1");
  int prec = pair.prec;
  BallReal two = BallReal::exact(2, prec);
  BallReal four = BallReal::exact(4, prec);
  BallReal xh = x.mul_2exp(-1);
  BallReal xq = x.mul_2exp(-2);
  BallReal dk = renormalized_delta(pair, k, x);
  BallReal dk1 = renormalized_delta(pair, k - 1, xh);
  BallReal dk2 = renormalized_delta(pair, k - 2, xq);
  BallReal rhs = (two + two_cos(xh)) * dk1 +
                 dk2 * (four * xq.cos() + dk2) * (two_cos(xh) - two + dk1);
  return (dk - rhs).abs();
}

bool GrowthReport::all_pass() const {
  if (!precondition_ok) return false;
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

GrowthReport verify_error_growth(const PointFn& phi0, const PointFn& phi1,
                                 double delta, int N, int grid_points, int prec) {
  GrowthReport report;
  BallReal pi = BallReal::pi(prec);
  BallReal two = BallReal::exact(2, prec);

  auto grid_ok = [&](const PointFn& f, int freq_exp, const BallReal& halfwidth) {
    for (int i = 0; i <= grid_points; ++i) {
      BallReal x = halfwidth * BallReal::from_double(2.0 * i / grid_points - 1.0, prec);
      BallReal err = (f(x) - two_cos(x.mul_2exp(freq_exp))).abs();
      if (err.lower_double() > delta) return false;
    }
    return true;
  };
  report.precondition_ok =
      grid_ok(phi0, 3, pi) && grid_ok(phi1, 4, pi.mul_2exp(-1));
  if (!report.precondition_ok) return report;

  for (int n = 2; n <= N; ++n) {
    BallReal halfwidth = pi.mul_2exp(-n);
    double sup_upper = 0.0, sup_lower = 0.0;
    for (int i = 0; i <= grid_points; ++i) {
      BallReal x = halfwidth * BallReal::from_double(2.0 * i / grid_points - 1.0, prec);
      // phi_n(x) by the pair recurrence from the handles
      BallReal a = phi0(x), b = phi1(x);
      for (int j = 2; j <= n; ++j) {
        BallReal c = a * a * (b - two) + two;
        a = b;
        b = c;
      }
      BallReal err = (b - two_cos(x.mul_2exp(n + 3))).abs();
      sup_upper = std::max(sup_upper, err.upper_double());
      sup_lower = std::max(sup_lower, err.lower_double());
    }
    GrowthRow row;
    row.n = n;
    row.sup = sup_upper;
    row.sup_lower = sup_lower;
    row.bound = std::pow(30.0, n - 1) * delta;
    row.pass = sup_lower <= row.bound;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace tmtrace
