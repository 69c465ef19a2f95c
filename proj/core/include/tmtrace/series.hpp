#pragma once

#include <utility>
#include <vector>

#include "tmtrace/ball.hpp"

namespace tmtrace {

/// The coefficient envelope delta * sum_{n >= start} x^n / beta^n, with
/// optional per-coefficient overrides for small n (the one-step propagation
/// bound refines its first two coefficients below the geometric tail).
struct GeometricMajorant {
  BallReal delta;
  BallReal beta;
  int start = 0;
  std::vector<std::pair<int, BallReal>> head;

  GeometricMajorant(BallReal d, BallReal b, int n0)
      : delta(std::move(d)), beta(std::move(b)), start(n0) {}

  /// Envelope coefficient at index n (exact zero below start).
  BallReal coeff(int n) const;
};

/// Truncated power series in the local coordinate u = x - center, with ball
/// coefficients. coeffs[n] multiplies u^n; the list has order+1 entries.
class LocalSeries {
 public:
  LocalSeries(BallReal center, int order, int prec = BallReal::kDefaultPrec);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BallReal& center() const { return center_; }
  const BallReal& coeff(int n) const { return coeffs_.at(static_cast<size_t>(n)); }
  void set_coeff(int n, BallReal c) { coeffs_.at(static_cast<size_t>(n)) = std::move(c); }

  /// Horner evaluation at local coordinate u.
  BallReal eval(const BallReal& u) const;

 private:
  BallReal center_;
  std::vector<BallReal> coeffs_;
};

LocalSeries series_add(const LocalSeries& f, const LocalSeries& g);
LocalSeries series_sub(const LocalSeries& f, const LocalSeries& g);

/// Cauchy product truncated to min(f.order, g.order). The discarded tail is
/// not folded into radii; comparisons against majorants are per-coefficient
/// over the finite window.
LocalSeries series_mul(const LocalSeries& f, const LocalSeries& g);

/// Coefficient-wise absolute value: coefficient n becomes an upper ball for
/// |a_n|.
LocalSeries series_abs_star(const LocalSeries& f);

/// One-sided rigorous coefficient-wise comparison of |f| against the
/// envelope, over 0 <= n <= f.order. Below the envelope start the
/// coefficient ball must contain zero. Returns maybe when some coefficient
/// straddles the threshold.
Tri majorant_le(const LocalSeries& f, const GeometricMajorant& m);

/// Series of u -> 2 cos(u + phase) about u = 0, attached to the given
/// center; coefficient n is 2 cos(phase + n pi/2) / n!.
LocalSeries cos_series(int order, const BallReal& phase, const BallReal& center,
                       int prec = BallReal::kDefaultPrec);

/// Series of u -> f(scale * u + shift), truncated at f.order. The scale ball
/// must exclude zero.
LocalSeries series_affine_arg(const LocalSeries& f, const BallReal& scale,
                              const BallReal& shift);

/// Envelope for a product, by convolving the two envelopes' coefficients over
/// a finite window. Valid for comparisons up to the given order.
GeometricMajorant majorant_product(const GeometricMajorant& a,
                                   const GeometricMajorant& b, int order);

}  // namespace tmtrace
