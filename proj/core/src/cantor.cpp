#include "tmtrace/cantor.hpp"

#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace tmtrace {

BallReal base_point(double lambda, int prec) {
  BallReal l = BallReal::from_double(lambda, prec);
  return (BallReal::exact(2, prec) + l * l).sqrt();
}

namespace {

InitialGermResult initial_germ_attempt(double lambda, int prec, int order) {
  InitialGermResult res;
  BallReal l = BallReal::from_double(lambda, prec);
  BallReal x0 = base_point(lambda, prec);
  res.rho = rho_of_lambda(l);
  BallReal t = x0.mul_2exp(1);
  BallReal t2 = t * t;
  res.tau = t * (t2 - BallReal::exact(6, prec)) * (t2 - BallReal::exact(4, prec)).sqrt();

  LocalSeries h1s = trace_series(1, l, x0, order, prec);
  LocalSeries h2s = trace_series(2, l, x0, order, prec);
  RhoResult rr = germ_from_zero(h1s, h2s);
  if (rr.verdict != Verdict::verified) {
    res.verdict = rr.verdict;
    return res;
  }
  BallReal factor = rr.rho.mul_2exp(1);  // 2 tau = 2^4 rho
  res.factor_crosscheck = rr.rho.overlaps(res.tau) &&
                          factor.overlaps(res.rho.mul_2exp(4)) &&
                          factor.overlaps(res.tau.mul_2exp(1));

  SeriesPair pair{trace_series(4, l, x0, order, prec),
                  trace_series(5, l, x0, order, prec), 0};
  res.cert = check_regularity(pair, factor, 1.0, 1.0);
  res.verdict = res.factor_crosscheck ? res.cert.verdict : Verdict::refuted;
  return res;
}

}  // namespace

InitialGermResult initial_germ(double lambda, int prec, int order, int max_prec) {
  return with_precision_ladder(prec, max_prec, [&](int p) {
    return initial_germ_attempt(lambda, p, order);
  });
}

namespace {

// Expected x-space zero spacing of P_j near the base point: pi / (2^j a).
double level_spacing(int p_index, double factor_mid, double pi_mid) {
  return pi_mid / (std::ldexp(1.0, p_index) * factor_mid);
}

}  // namespace

CantorTree build_tree(double lambda, int K_sim, int depth, int prec) {
  if (K_sim < 5) throw std::invalid_argument("build_tree: K_sim must be >= 5");
  if (depth < 0) throw std::invalid_argument("build_tree: negative depth");
  int deepest = (depth + 1) * K_sim + 1;  // h-index used by the last splits
  if (depth > 0 && deepest > 27)
    throw std::invalid_argument("build_tree: trace index beyond feasibility cap");

  CantorTree tree;
  tree.lambda = lambda;
  tree.K_sim = K_sim;
  tree.depth = depth;

  BallReal l = BallReal::from_double(lambda, prec);
  BallReal x0 = base_point(lambda, prec);
  double factor_mid = rho_of_lambda(l).mul_2exp(4).mid_double();
  double pi_mid = BallReal::pi(prec).mid_double();
  auto P = [l](int k) {
    return PointFn([l, k](const BallReal& x) { return trace_eval(k + 5, l, x); });
  };

  // root: first zero of P_{K-4} right of the base point
  int j0 = K_sim - 4;
  double spacing = level_spacing(j0, factor_mid, pi_mid);
  BallReal hi = x0 + BallReal::from_double(1.4 * spacing, prec);
  RootResult b0 = min_zero(P(j0), x0, hi, spacing / 16, 0x1p-80);

  CantorNode root;
  root.word = "-";
  root.a = x0;
  root.gen = 0;
  root.a_level = 1;
  root.b_level = K_sim + 1;
  if (b0.status != RootStatus::found) {
    root.ok = false;
    root.note = b0.status == RootStatus::undecidable ? "root zero undecidable"
                                                     : "root zero not found";
    root.b = hi;
    tree.nodes.push_back(root);
    return tree;
  }
  root.b = b0.zero;
  tree.nodes.push_back(root);

  double step_rel = std::pow(2.1, -K_sim) / 8.0;
  std::deque<size_t> queue{0};
  bool all_ok = true;
  while (!queue.empty()) {
    size_t idx = queue.front();
    queue.pop_front();
    CantorNode node = tree.nodes[idx];
    if (!node.ok || node.gen >= depth) continue;

    int j = (node.gen + 2) * K_sim - 4;
    double width = (node.b - node.a).mid_double();
    double step = width * step_rel;
    RootResult bmin = min_zero(P(j), node.a, node.b, step, 0x1p-80);
    RootResult amax = max_zero(P(j), node.a, node.b, step, 0x1p-80);
    if (bmin.status != RootStatus::found || amax.status != RootStatus::found) {
      tree.nodes[idx].ok = false;
      tree.nodes[idx].note = "split zero isolation failed";
      all_ok = false;
      continue;
    }
    std::string base = node.word == "-" ? "" : node.word;
    CantorNode left;
    left.word = base + "0";
    left.a = node.a;
    left.b = bmin.zero;
    left.gen = node.gen + 1;
    left.a_level = node.a_level;
    left.b_level = j + 5;
    left.ratio = (left.b - left.a).mid_double() / width;
    CantorNode right;
    right.word = base + "1";
    right.a = amax.zero;
    right.b = node.b;
    right.gen = node.gen + 1;
    right.a_level = j + 5;
    right.b_level = node.b_level;
    right.ratio = (right.b - right.a).mid_double() / width;
    tree.nodes.push_back(left);
    queue.push_back(tree.nodes.size() - 1);
    tree.nodes.push_back(right);
    queue.push_back(tree.nodes.size() - 1);
  }
  size_t expected = (static_cast<size_t>(1) << (depth + 1)) - 1;
  tree.complete = all_ok && tree.nodes.size() == expected;
  return tree;
}

DimensionReport ratio_report(const CantorTree& tree, const ConstantsTable* table) {
  if (tree.nodes.empty() || tree.depth < 1)
    throw std::invalid_argument("ratio_report: tree depth must be >= 1");
  DimensionReport rep;
  rep.K_used = tree.K_sim;
  rep.depth = tree.depth;
  rep.min_ratio = 1.0;
  rep.max_ratio = 0.0;
  bool any = false;
  for (const auto& n : tree.nodes) {
    if (n.gen == 0 || !n.ok) continue;
    any = true;
    rep.min_ratio = std::min(rep.min_ratio, n.ratio);
    rep.max_ratio = std::max(rep.max_ratio, n.ratio);
  }
  if (!any) throw std::invalid_argument("ratio_report: no complete child nodes");
  rep.moran_bound = std::log(2.0) / (-std::log(rep.min_ratio));
  rep.ksim_bound = std::pow(2.1, -tree.K_sim);
  ConstantsTable local = table ? *table : constants_table(6);
  rep.paper_K = local.K;
  rep.paper_bound = dim_lower_bound(local.K);
  return rep;
}

double dim_lower_bound(long K) {
  if (K < 1) throw std::invalid_argument("dim_lower_bound: K must be >= 1");
  return std::log(2.0) / (static_cast<double>(K) * std::log(2.1));
}

BallReal dim_lower_bound_ball(long K, int prec) {
  if (K < 1) throw std::invalid_argument("dim_lower_bound: K must be >= 1");
  BallReal ln2 = BallReal::exact(2, prec).log();
  mpq_class q(21, 10);
  BallReal ln21 = BallReal::from_rational(q.get_mpq_t(), prec).log();
  return ln2 / (BallReal::exact(K, prec) * ln21);
}

SingleStepRatios single_step_ratios(const PointFn& qm1, const PointFn& q0, int prec) {
  SingleStepRatios out;
  BallReal zero = BallReal::exact(0, prec);
  BallReal reach = BallReal::from_double(1.9, prec);
  double step = 0.05;
  RootResult t0 = min_zero(q0, zero, reach, step);
  RootResult tm1 = min_zero(qm1, zero, reach, step);
  RootResult t0l = max_zero(q0, -reach, zero, step);
  RootResult tm1l = max_zero(qm1, -reach, zero, step);
  if (t0.status != RootStatus::found || tm1.status != RootStatus::found ||
      t0l.status != RootStatus::found || tm1l.status != RootStatus::found)
    return out;
  out.ok = true;
  out.right = (tm1.zero.mul_2exp(1) / t0.zero).mid_double();
  out.left = (tm1l.zero.mul_2exp(1) / t0l.zero).mid_double();
  return out;
}

KeySpacingReport key_spacing_check(double lambda, int K_sim, int prec, int order) {
  KeySpacingReport rep;
  if (K_sim < 5) throw std::invalid_argument("key_spacing_check: K_sim must be >= 5");
  BallReal l = BallReal::from_double(lambda, prec);
  BallReal theta = base_point(lambda, prec);
  double factor_mid = rho_of_lambda(l).mul_2exp(4).mid_double();
  double pi_mid = BallReal::pi(prec).mid_double();
  auto P = [l](int k) {
    return PointFn([l, k](const BallReal& x) { return trace_eval(k + 5, l, x); });
  };

  int j1 = K_sim - 4, j2 = 2 * K_sim - 4;
  double spacing = level_spacing(j1, factor_mid, pi_mid);
  BallReal reach = BallReal::from_double(1.4 * spacing, prec);
  RootResult tp = min_zero(P(j1), theta, theta + reach, spacing / 16, 0x1p-180);
  if (tp.status != RootStatus::found) {
    rep.note = "theta_plus isolation failed";
    return rep;
  }
  rep.theta_plus = tp.zero;
  double w = (rep.theta_plus - theta).mid_double();
  double step = w * std::pow(2.1, -K_sim) / 8.0;
  RootResult ts = max_zero(P(j2), theta, rep.theta_plus, step, 0x1p-60);
  if (ts.status != RootStatus::found) {
    rep.note = "theta_sub isolation failed";
    return rep;
  }
  rep.theta_sub = ts.zero;
  rep.threshold = std::pow(2.1, -K_sim);
  rep.right_ratio =
      ((rep.theta_plus - rep.theta_sub) / (rep.theta_plus - theta)).mid_double();
  rep.right_pass = rep.right_ratio >= rep.threshold;

  // mirrored construction on the left of the base point
  RootResult tm = max_zero(P(j1), theta - reach, theta, spacing / 16, 0x1p-60);
  if (tm.status == RootStatus::found) {
    double wl = (theta - tm.zero).mid_double();
    RootResult tsl =
        min_zero(P(j2), tm.zero, theta, wl * std::pow(2.1, -K_sim) / 8.0, 0x1p-60);
    if (tsl.status == RootStatus::found) {
      rep.left_ratio = ((tsl.zero - tm.zero) / (theta - tm.zero)).mid_double();
      rep.left_pass = rep.left_ratio >= rep.threshold;
    } else {
      rep.note = "left-side zero isolation failed";
    }
  } else {
    rep.note = "theta_minus isolation failed";
  }

  // regularity handoff of the advanced pair at the new base point
  LocalSeries f0 = trace_series(K_sim + 1, l, rep.theta_plus, order, prec);
  LocalSeries f1 = trace_series(K_sim + 2, l, rep.theta_plus, order, prec);
  RhoResult rr = germ_from_zero(f0, f1);
  if (rr.verdict != Verdict::verified) {
    rep.note = "handoff factor undecidable";
    rep.handoff.verdict = rr.verdict;
    return rep;
  }
  SeriesPair pair{trace_series(K_sim + 4, l, rep.theta_plus, order, prec),
                  trace_series(K_sim + 5, l, rep.theta_plus, order, prec), 0};
  BallReal delta = BallReal::exact(9, prec) * alpha_pow(K_sim - 7, prec);
  rep.handoff =
      check_regularity(pair, rr.rho.mul_2exp(1), delta, BallReal::exact(2, prec));
  rep.ok = rep.right_pass && rep.handoff.verdict == Verdict::verified;
  return rep;
}

std::string serialize_tree(const CantorTree& tree, int digits) {
  std::ostringstream os;
  os << "word,gen,a_mid,a_rad,b_mid,b_rad,a_level,b_level,ratio,ok\n";
  for (const auto& n : tree.nodes) {
    char ratio_buf[40];
    std::snprintf(ratio_buf, sizeof(ratio_buf), "%.17g", n.ratio);
    os << n.word << ',' << n.gen << ',' << n.a.mid_string(digits) << ','
       << n.a.rad_string() << ',' << n.b.mid_string(digits) << ','
       << n.b.rad_string() << ',' << n.a_level << ',' << n.b_level << ','
       << ratio_buf << ',' << (n.ok ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace tmtrace
