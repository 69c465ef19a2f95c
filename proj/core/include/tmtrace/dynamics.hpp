#pragma once

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "tmtrace/ball.hpp"
#include "tmtrace/series.hpp"

namespace tmtrace {

/// Point-evaluation handle with the working precision baked in.
using PointFn = std::function<BallReal(const BallReal&)>;

/// (P_k, P_{k-1}) as truncated series about a common center.
struct SeriesPair {
  LocalSeries prev;  // P_{k-1}
  LocalSeries curr;  // P_k
  int index = 0;     // k
};

/// One application of the pair map: (P_{k+1}, P_k) with
/// P_{k+1} = P_{k-1}^2 (P_k - 2) + 2 in series arithmetic.
SeriesPair phi_step(const SeriesPair& pair);

/// Trace value h_n(x) by the O(n) point recurrence from h_1, h_2.
BallReal trace_eval(int n, const BallReal& lambda, const BallReal& x);
BallReal trace_eval(int n, double lambda, const BallReal& x);

/// Exact rational trace value (zero-width arithmetic), same recurrence.
mpq_class trace_eval_exact(int n, const mpq_class& lambda, const mpq_class& x);

/// Exact coefficient list of h_n (index = power of x). Degree is 2^n, so a
/// small cap guards against blowup; the expansion exists as a test oracle.
std::vector<mpq_class> trace_poly_expand(int n, const mpq_class& lambda,
                                         int cap = 10);

/// Series of h_n about an arbitrary center, computed by the recurrence in
/// series arithmetic. Coefficients up to the truncation order are exact
/// (polynomial products only push errors above the window).
LocalSeries trace_series(int n, const BallReal& lambda, const BallReal& center,
                         int order, int prec = BallReal::kDefaultPrec);

/// A pair (P_{-1}, P_0) with base point and renormalization factor, driving
/// the renormalized iterates Q_k(x) = P_k(x / (2^k factor) + x0).
struct RenormPair {
  PointFn pm1;
  PointFn p0;
  BallReal x0;
  BallReal factor;
  int prec = BallReal::kDefaultPrec;
};

/// rho(lambda) = (1 + 2 lambda^2) sqrt((1 + lambda^2)(2 + lambda^2)).
BallReal rho_of_lambda(const BallReal& lambda);

/// The pair P_k := h_{k+5} at base point sqrt(2 + lambda^2) with
/// renormalization factor 2^4 rho(lambda).
RenormPair trace_renorm_pair(double lambda, int prec = BallReal::kDefaultPrec);

/// The invariant family P_k(x) = 2 cos(2^k factor (x - x0)); its deviations
/// vanish identically.
RenormPair cosine_renorm_pair(const BallReal& x0, const BallReal& factor,
                              int prec = BallReal::kDefaultPrec);

/// P_k(x) via the point recurrence from the pair's handles (k >= -1).
BallReal iterate_eval(const RenormPair& pair, int k, const BallReal& x);

/// Delta_k(x) = Q_k(x) - 2 cos x.
BallReal renormalized_delta(const RenormPair& pair, int k, const BallReal& x);

/// |Delta_k(x) - RHS(Delta_{k-1}, Delta_{k-2})(x)| for the two-level
/// recurrence of the deviations; a consistency self-check (k >= 1).
BallReal delta_recurrence_residual(const RenormPair& pair, int k,
                                   const BallReal& x);

struct GrowthRow {
  int n = 0;
  double sup = 0.0;        // grid-measured midpoint sup
  double sup_lower = 0.0;  // certified lower bound of the grid sup
  double bound = 0.0;      // 30^{n-1} delta
  bool pass = false;
};

struct GrowthReport {
  bool precondition_ok = false;
  std::vector<GrowthRow> rows;
  bool all_pass() const;
};

/// Error-growth check for the iterated pair of perturbed cosines:
/// grid sup of |phi_n - 2 cos 2^{n+3} x| on [-pi/2^n, pi/2^n] against
/// 30^{n-1} delta, for 2 <= n <= N. The stated sup hypotheses on phi_0,
/// phi_1 are grid-checked first.
GrowthReport verify_error_growth(const PointFn& phi0, const PointFn& phi1,
                                 double delta, int N, int grid_points = 256,
                                 int prec = BallReal::kDefaultPrec);

}  // namespace tmtrace
