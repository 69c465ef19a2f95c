#pragma once

#include <vector>

#include "tmtrace/ball.hpp"
#include "tmtrace/dynamics.hpp"

namespace tmtrace {

enum class RootStatus { found, not_found, undecidable };

/// Certified sign-change bracket around a simple zero.
struct ZeroBracket {
  BallReal lo;
  BallReal hi;
};

struct RootResult {
  RootStatus status = RootStatus::not_found;
  BallReal zero;        // enclosure of the bracketed zero
  ZeroBracket bracket;  // final bracket with certified opposite signs
  double scan_step = 0.0;
};

/// Smallest zero of f in [lo, hi], by a left-to-right sign scan at scan_step
/// followed by bisection down to rel_width * (hi - lo). "Smallest" is
/// certified up to the scan resolution: a sign-preserving zero pair closer
/// than scan_step can be missed. Even-multiplicity zeros are not detected.
RootResult min_zero(const PointFn& f, const BallReal& lo, const BallReal& hi,
                    double scan_step, double rel_width = 0x1p-40);

/// Mirror of min_zero scanning right-to-left.
RootResult max_zero(const PointFn& f, const BallReal& lo, const BallReal& hi,
                    double scan_step, double rel_width = 0x1p-40);

struct GapReport {
  bool precondition_ok = false;
  RootResult xstar;  // min zero of phi in [0, pi]
  RootResult xsub;   // max zero of psi in (0, xstar)
  BallReal gap;      // xstar - xsub
  Tri pass = Tri::maybe;  // | gap - pi/16 | <= 2 delta, ball-aware
};

/// Zero-gap check for a near-cosine pair: phi tracks 2 cos x and psi tracks
/// 2 cos 8x on [0, pi] within delta < 0.01; the gap between phi's first zero
/// and psi's last zero below it stays within 2 delta of pi/16.
GapReport zero_gap_check(const PointFn& phi, const PointFn& psi, double delta,
                         int grid_points = 256, int prec = BallReal::kDefaultPrec);

struct SigmaZero {
  int n = 0;  // trace index with h_n(zero) = 0
  RootResult root;
};

/// Certified zero enclosures of h_n in [lo, hi] for each 1 <= n <= n_max,
/// with the scan step adapted to the expected local spacing.
std::vector<SigmaZero> sigma_sample(int n_max, double lambda, const BallReal& lo,
                                    const BallReal& hi,
                                    int prec = BallReal::kDefaultPrec);

}  // namespace tmtrace
