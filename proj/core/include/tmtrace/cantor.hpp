#pragma once

#include <string>
#include <vector>

#include "tmtrace/ball.hpp"
#include "tmtrace/germ.hpp"
#include "tmtrace/rootfind.hpp"

namespace tmtrace {

/// One interval I_w of the nested construction. New endpoints are certified
/// zeros of the designated trace polynomial; a_w0 = a_w and b_w1 = b_w are
/// inherited from the parent.
struct CantorNode {
  std::string word;  // "-" for the root
  BallReal a;
  BallReal b;
  int gen = 0;
  int a_level = 0;  // h-index n with h_n(a) = 0
  int b_level = 0;
  double ratio = 0.0;  // |I_w| / |I_parent|, 0 for the root
  bool ok = true;
  std::string note;
};

struct CantorTree {
  double lambda = 0.0;
  int K_sim = 5;
  int depth = 0;
  std::vector<CantorNode> nodes;  // breadth-first, siblings in word order
  bool complete = false;
};

struct DimensionReport {
  int K_used = 0;  // K_sim of the tree
  int depth = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double moran_bound = 0.0;   // ln 2 / (-ln min_ratio)
  double ksim_bound = 0.0;    // 2.1^{-K_sim} reference
  long paper_K = 0;           // certified depth constant
  double paper_bound = 0.0;   // ln 2 / (paper_K ln 2.1)
};

/// sqrt(2 + lambda^2), the zero of h_1 anchoring the construction.
BallReal base_point(double lambda, int prec = BallReal::kDefaultPrec);

struct InitialGermResult {
  GermCertificate cert;
  BallReal rho;              // (1 + 2 l^2) sqrt((1 + l^2)(2 + l^2))
  BallReal tau;              // t (t^2 - 6) sqrt(t^2 - 4), t = 2 x0
  bool factor_crosscheck = false;  // 2 tau and 2^4 rho overlap
  Verdict verdict = Verdict::undecidable;
};

/// (1,1)-regularity of (h_4, h_5) at the base point, with the
/// renormalization factor re-derived through the zero-normalization path and
/// cross-checked against the closed form 2^4 rho. Retries with doubled
/// precision on undecidable verdicts.
InitialGermResult initial_germ(double lambda, int prec = BallReal::kDefaultPrec,
                               int order = 64, int max_prec = 4096);

/// The nested-interval tree at desk scale: the root interval runs from the
/// base point to the first zero of P_{K_sim-4} (P_k := h_{k+5}), and a node
/// of generation k splits at the smallest/biggest zeros of P_{(k+2)K_sim-4}
/// inside it. Isolation failures annotate the node and prune its subtree.
CantorTree build_tree(double lambda, int K_sim, int depth,
                      int prec = BallReal::kDefaultPrec);

/// Child/parent length ratios across the tree plus the Moran-type dimension
/// bound, compared against the certified-K bound.
DimensionReport ratio_report(const CantorTree& tree,
                             const ConstantsTable* table = nullptr);

/// ln 2 / (K ln 2.1).
double dim_lower_bound(long K);
BallReal dim_lower_bound_ball(long K, int prec);

struct SingleStepRatios {
  bool ok = false;
  double right = 0.0;  // |I+_{-1}| / |I+_0| = 2 t_{-1} / t_0
  double left = 0.0;
};

/// First-zero ratio of a renormalized pair on both sides of 0: locates the
/// minimal (resp. maximal) zeros of Q_0 and Q_{-1} in (0, 2) (resp. (-2, 0))
/// and reports |I_{-1}| / |I_0| per side.
SingleStepRatios single_step_ratios(const PointFn& qm1, const PointFn& q0,
                                    int prec = BallReal::kDefaultPrec);

struct KeySpacingReport {
  bool ok = false;
  std::string note;
  BallReal theta_plus;   // minimal zero of P_{K-4} right of the base point
  BallReal theta_sub;    // maximal zero of P_{2K-4} below theta_plus
  double right_ratio = 0.0;  // (theta_plus - theta_sub) / (theta_plus - theta)
  double left_ratio = 0.0;   // mirrored construction
  double threshold = 0.0;    // 2.1^{-K_sim}
  bool right_pass = false;
  bool left_pass = false;
  GermCertificate handoff;   // (P_{K-1}, P_K) at theta_plus, (9 a^{K-7}, 2)
};

/// Spacing of consecutive-depth zeros around the base point at desk scale,
/// with the regularity handoff of the advanced pair at the new zero.
KeySpacingReport key_spacing_check(double lambda, int K_sim,
                                   int prec = BallReal::kDefaultPrec,
                                   int order = 64);

/// One line per node: word,gen,a_mid,a_rad,b_mid,b_rad,a_level,b_level,ratio,ok
/// in breadth-first word order; stable across runs at fixed configuration.
std::string serialize_tree(const CantorTree& tree, int digits = 40);

}  // namespace tmtrace
