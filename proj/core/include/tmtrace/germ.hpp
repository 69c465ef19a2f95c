#pragma once

#include <vector>

#include "tmtrace/ball.hpp"
#include "tmtrace/dynamics.hpp"
#include "tmtrace/series.hpp"

namespace tmtrace {

/// Result of a (delta, beta)-regularity check of a pair at a base point.
struct GermCertificate {
  BallReal base;
  BallReal rho;  // renormalization factor
  double delta = 1.0;
  double beta = 1.0;
  int order = 0;
  int precision = 0;
  Verdict verdict = Verdict::undecidable;
  /// max over n >= 3 of upper(|Delta_n|) * beta^n across both deviations;
  /// the certificate is verified when this stays <= delta.
  double measured = 0.0;
};

struct RhoResult {
  BallReal rho;
  Verdict verdict = Verdict::undecidable;
};

/// The local quadratic normalization factor at a simple zero of f0:
/// rho = sqrt(2 - f1(x0)) * |f0'(x0) f1(x0)|, read off series centered at x0.
/// Refuted when f1(x0) >= 2 or f0 provably misses zero; undecidable when a
/// precondition ball straddles its threshold.
RhoResult germ_from_zero(const LocalSeries& f0, const LocalSeries& f1);

/// Certify (delta, beta)-regularity of the pair (prev, curr) at its center
/// with the given renormalization factor: build Q_{-1}, Q_0 by argument
/// rescaling, form the deviations from 2 cos, and run the coefficient
/// envelope check with start index 3.
GermCertificate check_regularity(const SeriesPair& pair, const BallReal& factor,
                                 const BallReal& delta, const BallReal& beta);
GermCertificate check_regularity(const SeriesPair& pair, const BallReal& factor,
                                 double delta, double beta);

/// Explicit output envelope of one propagation step under coefficient
/// hypotheses |Delta_{k-1,n}|, |Delta_{k,n}| <= delta (0 < delta <= 1):
/// delta * (4 x^3/2^3 + 4 x^4/2^4 + 9 sum_{n>=5} x^n/2^n).
GeometricMajorant propagate_bound_step(const BallReal& delta);

/// Shifted-variant propagation: hypotheses |D_{k,n}| <= delta beta^{-n} for
/// n >= 0 (0 < delta, beta <= 1) give the envelope (152 delta, 2 beta, 0).
GeometricMajorant propagate_bound_shifted(const BallReal& delta, const BallReal& beta);

/// alpha^m with alpha = 2^{-1/2}, as a ball.
BallReal alpha_pow(long m, int prec = BallReal::kDefaultPrec);

struct DecayCheck {
  GermCertificate cert;        // (9 alpha^{k-3}, 2)-regularity of (P_{k-1}, P_k)
  double measured_curr = 0.0;  // max_n upper(|Delta_{k,n}|) * 2^n
  double envelope_curr = 0.0;  // upper(9 alpha^{k-2})
  Tri envelope_ok = Tri::maybe;
};

/// Iterate the base pair to (P_{k-1}, P_k) in series arithmetic and certify
/// the decayed regularity (9 alpha^{k-3}, 2) at the same base point, with
/// renormalization factor 2^k * factor. k >= 2.
DecayCheck regularity_decay(const SeriesPair& base, const BallReal& factor, int k);

struct ConstantsTable {
  double delta0 = 0.01;
  double delta1 = 0.0005;
  double delta2 = 1e-10;
  int n_alpha = 40;
  BallReal delta3;      // 30^{-40} / 4000
  BallReal alpha;       // 2^{-1/2}
  BallReal beta_local;  // 2 - pi/2 - 0.01
  std::vector<BallReal> ctilde;
  std::vector<BallReal> c;
  long K = 0;  // minimal integer meeting all three depth constraints
  bool n_alpha_ok = false;      // 9 alpha^{n_alpha - 3} <= delta1
  double residual_tail = 0.0;   // upper(9 alpha^{K-7}), must be < delta2
  double residual_c6 = 0.0;     // upper(C_6 alpha^{K-4} / delta3), must be <= 1
};

/// The constants ladder: ctilde_0 = 9/(4 - pi), c_m = ctilde_m (2^{m-1} pi)^3,
/// ctilde_{m+1} = ctilde_m (1/(2 alpha) + (4 + c_m)^2 / (64 alpha^2)), and the
/// certified minimal K with K >= n_alpha + 4, 9 alpha^{K-7} < delta2,
/// c_6 alpha^{K-4} <= delta3. Requires m_max >= 6.
ConstantsTable constants_table(int m_max, int prec = BallReal::kDefaultPrec);

struct ConvergenceRow {
  int k = 0;
  double sup = 0.0;        // grid sup of upper(|Delta_k|)
  double sup_mid = 0.0;    // grid sup of midpoints
  double bound = 0.0;      // upper(c_m alpha^k)
  bool pointwise_ok = false;  // |Delta_k(x)| <= ctilde_m alpha^k |x|^3 at each node
};

struct ConvergenceReport {
  int m = 0;
  std::vector<ConvergenceRow> rows;
  double fitted_ratio = 0.0;  // sup_k S_{k+1}/S_k over consecutive rows
  bool all_pass() const;
};

/// Grid check of the exponential convergence bound on [-2^{m-1} pi,
/// 2^{m-1} pi] for k in [k_lo, k_hi]; requires k_lo >= 2m+1. Grid sups are
/// lower bounds of true sups.
ConvergenceReport convergence_report(const RenormPair& pair, int m, int k_lo,
                                     int k_hi, int grid_points,
                                     const ConstantsTable& table);

/// Retry a tri-state computation with doubled precision until decidable.
template <class F>
auto with_precision_ladder(int base_prec, int max_prec, F&& f) {
  int p = base_prec;
  for (;;) {
    auto r = f(p);
    if (r.verdict != Verdict::undecidable || p >= max_prec) return r;
    p *= 2;
  }
}

}  // namespace tmtrace
