#include "tmtrace/series.hpp"

#include <stdexcept>

namespace tmtrace {

BallReal GeometricMajorant::coeff(int n) const {
  for (const auto& [idx, c] : head)
    if (idx == n) return c;
  if (n < start) return BallReal::exact(0, delta.precision());
  return delta / beta.pow_int(n);
}

LocalSeries::LocalSeries(BallReal center, int order, int prec)
    : center_(std::move(center)) {
  if (order < 0) throw std::invalid_argument("LocalSeries: negative order");
  coeffs_.assign(static_cast<size_t>(order) + 1, BallReal(prec));
}

BallReal LocalSeries::eval(const BallReal& u) const {
  BallReal acc = coeffs_.back();
  for (int n = order() - 1; n >= 0; --n) acc = acc * u + coeffs_[static_cast<size_t>(n)];
  return acc;
}

namespace {

void require_compatible(const LocalSeries& f, const LocalSeries& g) {
  if (!f.center().overlaps(g.center()))
    throw std::invalid_argument("series: centers do not overlap");
  if (f.order() != g.order())
    throw std::invalid_argument("series: order mismatch (caller aligns by truncation)");
}

}  // namespace

LocalSeries series_add(const LocalSeries& f, const LocalSeries& g) {
  require_compatible(f, g);
  LocalSeries r(f.center(), f.order());
  for (int n = 0; n <= f.order(); ++n) r.set_coeff(n, f.coeff(n) + g.coeff(n));
  return r;
}

LocalSeries series_sub(const LocalSeries& f, const LocalSeries& g) {
  require_compatible(f, g);
  LocalSeries r(f.center(), f.order());
  for (int n = 0; n <= f.order(); ++n) r.set_coeff(n, f.coeff(n) - g.coeff(n));
  return r;
}

LocalSeries series_mul(const LocalSeries& f, const LocalSeries& g) {
  if (!f.center().overlaps(g.center()))
    throw std::invalid_argument("series: centers do not overlap");
  int order = std::min(f.order(), g.order());
  LocalSeries r(f.center(), order);
  for (int n = 0; n <= order; ++n) {
    BallReal acc(std::max(f.coeff(0).precision(), g.coeff(0).precision()));
    for (int k = std::max(0, n - g.order()); k <= std::min(n, f.order()); ++k)
      acc = acc + f.coeff(k) * g.coeff(n - k);
    r.set_coeff(n, acc);
  }
  return r;
}

LocalSeries series_abs_star(const LocalSeries& f) {
  LocalSeries r(f.center(), f.order());
  for (int n = 0; n <= f.order(); ++n) r.set_coeff(n, f.coeff(n).abs());
  return r;
}

Tri majorant_le(const LocalSeries& f, const GeometricMajorant& m) {
  bool saw_maybe = false;
  for (int n = 0; n <= f.order(); ++n) {
    BallReal a = f.coeff(n).abs();
    BallReal bound = m.coeff(n);
    if (bound.exact_p() && bound.contains_zero()) {
      // zero envelope: the coefficient must be a radius-certified zero
      if (!f.coeff(n).contains_zero()) return Tri::no;
      continue;
    }
    Tri cmp = a.le(bound);
    if (cmp == Tri::no) return Tri::no;
    if (cmp == Tri::maybe) saw_maybe = true;
  }
  return saw_maybe ? Tri::maybe : Tri::yes;
}

LocalSeries cos_series(int order, const BallReal& phase, const BallReal& center, int prec) {
  LocalSeries r(center, order, prec);
  BallReal half_pi = BallReal::pi(prec).mul_2exp(-1);
  BallReal fact = BallReal::exact(1, prec);
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact = fact * BallReal::exact(n, prec);
    BallReal arg = phase + half_pi * BallReal::exact(n, prec);
    r.set_coeff(n, arg.cos().mul_2exp(1) / fact);
  }
  return r;
}

LocalSeries series_affine_arg(const LocalSeries& f, const BallReal& scale,
                              const BallReal& shift) {
  if (scale.contains_zero())
    throw std::domain_error("series_affine_arg: scale ball contains zero");
  int order = f.order();
  int prec = f.coeff(0).precision();
  if (shift.exact_p() && shift.contains_zero()) {
    // pure rescaling: b_n = a_n * scale^n
    LocalSeries r(f.center(), order, prec);
    BallReal p = BallReal::exact(1, prec);
    for (int n = 0; n <= order; ++n) {
      if (n > 0) p = p * scale;
      r.set_coeff(n, f.coeff(n) * p);
    }
    return r;
  }
  // Horner in the linear factor scale*u + shift
  std::vector<BallReal> acc(static_cast<size_t>(order) + 1, BallReal(prec));
  for (int m = order; m >= 0; --m) {
    // acc <- acc * (scale*u + shift) + a_m
    for (int k = order; k >= 0; --k) {
      BallReal v = acc[static_cast<size_t>(k)] * shift;
      if (k > 0) v = v + acc[static_cast<size_t>(k - 1)] * scale;
      acc[static_cast<size_t>(k)] = v;
    }
    acc[0] = acc[0] + f.coeff(m);
  }
  LocalSeries r(f.center(), order, prec);
  for (int n = 0; n <= order; ++n) r.set_coeff(n, acc[static_cast<size_t>(n)]);
  return r;
}

GeometricMajorant majorant_product(const GeometricMajorant& a,
                                   const GeometricMajorant& b, int order) {
  GeometricMajorant r(BallReal::exact(0, a.delta.precision()),
                      BallReal::exact(1, a.delta.precision()), order + 1);
  r.head.reserve(static_cast<size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    BallReal acc(a.delta.precision());
    for (int k = 0; k <= n; ++k) acc = acc + a.coeff(k) * b.coeff(n - k);
    r.head.emplace_back(n, acc.upper_bound());
  }
  return r;
}

}  // namespace tmtrace
