#include "tmtrace/germ.hpp"

#include <stdexcept>

namespace tmtrace {

RhoResult germ_from_zero(const LocalSeries& f0, const LocalSeries& f1) {
  RhoResult out;
  int prec = f0.coeff(0).precision();
  BallReal two = BallReal::exact(2, prec);
  const BallReal& v0 = f0.coeff(0);
  const BallReal& d0 = f0.coeff(1);
  const BallReal& v1 = f1.coeff(0);

  if (!v0.contains_zero()) {
    out.verdict = Verdict::refuted;  // f0 provably misses zero at the center
    return out;
  }
  Tri below_two = v1.lt(two);
  if (below_two == Tri::no) {
    out.verdict = Verdict::refuted;
    return out;
  }
  if (below_two == Tri::maybe || d0.contains_zero() || v1.contains_zero()) {
    out.verdict = Verdict::undecidable;
    return out;
  }
  out.rho = (two - v1).sqrt() * (d0 * v1).abs();
  out.verdict = Verdict::verified;
  return out;
}

GermCertificate check_regularity(const SeriesPair& pair, const BallReal& factor,
                                 const BallReal& delta, const BallReal& beta) {
  int prec = pair.curr.coeff(0).precision();
  int order = pair.curr.order();
  BallReal one = BallReal::exact(1, prec);
  LocalSeries qm1 = series_affine_arg(pair.prev, (one / factor).mul_2exp(1),
                                      BallReal::exact(0, prec));
  LocalSeries q0 = series_affine_arg(pair.curr, one / factor,
                                     BallReal::exact(0, prec));
  LocalSeries cosref =
      cos_series(order, BallReal::exact(0, prec), pair.curr.center(), prec);
  LocalSeries dm1 = series_sub(qm1, cosref);
  LocalSeries d0 = series_sub(q0, cosref);

  GeometricMajorant m(delta, beta, 3);
  Tri a = majorant_le(dm1, m);
  Tri b = majorant_le(d0, m);

  GermCertificate cert;
  cert.base = pair.curr.center();
  cert.rho = factor;
  cert.delta = delta.mid_double();
  cert.beta = beta.mid_double();
  cert.order = order;
  cert.precision = prec;
  if (a == Tri::no || b == Tri::no)
    cert.verdict = Verdict::refuted;
  else if (a == Tri::yes && b == Tri::yes)
    cert.verdict = Verdict::verified;
  else
    cert.verdict = Verdict::undecidable;

  BallReal bp = one;
  for (int n = 0; n <= order; ++n) {
    if (n >= 3) {
      double m1 = (dm1.coeff(n).abs() * bp).upper_double();
      double m2 = (d0.coeff(n).abs() * bp).upper_double();
      cert.measured = std::max({cert.measured, m1, m2});
    }
    bp = bp * beta;
  }
  return cert;
}

GermCertificate check_regularity(const SeriesPair& pair, const BallReal& factor,
                                 double delta, double beta) {
  int prec = pair.curr.coeff(0).precision();
  return check_regularity(pair, factor, BallReal::from_double(delta, prec),
                          BallReal::from_double(beta, prec));
}

GeometricMajorant propagate_bound_step(const BallReal& delta) {
  int prec = delta.precision();
  BallReal one = BallReal::exact(1, prec);
  if (delta.sign() == Tri::no || delta.le(one) == Tri::no)
    throw std::domain_error("propagate_bound_step: requires 0 <= delta <= 1");
  GeometricMajorant m(delta * BallReal::exact(9, prec), BallReal::exact(2, prec), 3);
  m.head.emplace_back(3, delta.mul_2exp(-1));  // 4 delta / 2^3
  m.head.emplace_back(4, delta.mul_2exp(-2));  // 4 delta / 2^4
  return m;
}

GeometricMajorant propagate_bound_shifted(const BallReal& delta, const BallReal& beta) {
  int prec = delta.precision();
  BallReal one = BallReal::exact(1, prec);
  if (delta.sign() == Tri::no || delta.le(one) == Tri::no ||
      beta.sign() != Tri::yes || beta.le(one) == Tri::no)
    throw std::domain_error(
        "propagate_bound_shifted: requires 0 <= delta <= 1 and 0 < beta <= 1");
  return GeometricMajorant(delta * BallReal::exact(152, prec), beta.mul_2exp(1), 0);
}

BallReal alpha_pow(long m, int prec) {
  BallReal half = BallReal::pow2(-1, prec);
  return half.sqrt().pow_int(m);
}

DecayCheck regularity_decay(const SeriesPair& base, const BallReal& factor, int k) {
  if (k < 2) throw std::invalid_argument("regularity_decay: k must be >= 2");
  int prec = base.curr.coeff(0).precision();
  int order = base.curr.order();

  SeriesPair pair = base;
  for (int j = 0; j < k; ++j) pair = phi_step(pair);  // now (P_{k-1}, P_k)
  BallReal shifted_factor = factor.mul_2exp(k);
  BallReal nine = BallReal::exact(9, prec);
  BallReal delta = nine * alpha_pow(k - 3, prec);

  DecayCheck out;
  out.cert = check_regularity(pair, shifted_factor, delta, BallReal::exact(2, prec));

  // per-k envelope: |Delta_{k,n}| <= 9 alpha^{k-2} / 2^n
  BallReal one = BallReal::exact(1, prec);
  LocalSeries qk = series_affine_arg(pair.curr, one / shifted_factor,
                                     BallReal::exact(0, prec));
  LocalSeries cosref =
      cos_series(order, BallReal::exact(0, prec), pair.curr.center(), prec);
  LocalSeries dk = series_sub(qk, cosref);
  BallReal envelope = nine * alpha_pow(k - 2, prec);
  out.envelope_curr = envelope.upper_double();
  Tri all = Tri::yes;
  for (int n = 3; n <= order; ++n) {
    BallReal scaled = dk.coeff(n).abs().mul_2exp(n);
    out.measured_curr = std::max(out.measured_curr, scaled.upper_double());
    Tri cmp = scaled.le(envelope);
    if (cmp == Tri::no) all = Tri::no;
    else if (cmp == Tri::maybe && all == Tri::yes) all = Tri::maybe;
  }
  out.envelope_ok = all;
  return out;
}

namespace {

BallReal exact_ratio(long num, const mpz_class& den, int prec) {
  mpq_class q(num, den);
  q.canonicalize();
  return BallReal::from_rational(q.get_mpq_t(), prec);
}

}  // namespace

ConstantsTable constants_table(int m_max, int prec) {
  if (m_max < 6) throw std::invalid_argument("constants_table: m_max must be >= 6");
  ConstantsTable t;
  BallReal pi = BallReal::pi(prec);
  BallReal four = BallReal::exact(4, prec);
  BallReal nine = BallReal::exact(9, prec);
  t.alpha = alpha_pow(1, prec);
  t.beta_local = BallReal::exact(2, prec) - pi.mul_2exp(-1) -
                 exact_ratio(1, mpz_class(100), prec);
  mpz_class den3;
  mpz_ui_pow_ui(den3.get_mpz_t(), 30, 40);
  den3 *= 4000;
  t.delta3 = exact_ratio(1, den3, prec);

  t.ctilde.push_back(nine / (four - pi));
  for (int m = 0; m <= m_max; ++m) {
    t.c.push_back(t.ctilde.back() * pi.mul_2exp(m - 1).pow_int(3));
    if (m < m_max) {
      BallReal grow = t.alpha +
          (four + t.c.back()).pow_int(2) / (t.alpha * t.alpha).mul_2exp(6);
      t.ctilde.push_back(t.ctilde.back() * grow);
    }
  }

  BallReal delta1 = exact_ratio(5, mpz_class(10000), prec);
  mpz_class den2;
  mpz_ui_pow_ui(den2.get_mpz_t(), 10, 10);
  BallReal delta2 = exact_ratio(1, den2, prec);
  t.n_alpha_ok = (nine * alpha_pow(t.n_alpha - 3, prec)).le(delta1) == Tri::yes;

  long K = t.n_alpha + 4;
  BallReal tail = nine * alpha_pow(K - 7, prec);
  BallReal c6term = t.c.at(6) * alpha_pow(K - 4, prec);
  for (;;) {
    if (tail.lt(delta2) == Tri::yes && c6term.le(t.delta3) == Tri::yes) break;
    ++K;
    tail = tail * t.alpha;
    c6term = c6term * t.alpha;
    if (K > 1000000) throw std::runtime_error("constants_table: K search diverged");
  }
  t.K = K;
  t.residual_tail = tail.upper_double();
  t.residual_c6 = (c6term / t.delta3).upper_double();
  return t;
}

bool ConvergenceReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pointwise_ok) return false;
  return !rows.empty();
}

ConvergenceReport convergence_report(const RenormPair& pair, int m, int k_lo,
                                     int k_hi, int grid_points,
                                     const ConstantsTable& table) {
  if (k_lo < 2 * m + 1)
    throw std::invalid_argument("convergence_report: requires k_lo >= 2m+1");
  int prec = pair.prec;
  BallReal halfwidth = BallReal::pi(prec).mul_2exp(m - 1);
  const BallReal& ctilde = table.ctilde.at(static_cast<size_t>(m));
  const BallReal& cm = table.c.at(static_cast<size_t>(m));

  ConvergenceReport report;
  report.m = m;
  for (int k = k_lo; k <= k_hi; ++k) {
    BallReal ak = alpha_pow(k, prec);
    ConvergenceRow row;
    row.k = k;
    row.bound = (cm * ak).upper_double();
    row.pointwise_ok = true;
    for (int i = 0; i <= grid_points; ++i) {
      BallReal x = halfwidth *
          BallReal::from_double(2.0 * i / grid_points - 1.0, prec);
      BallReal d = renormalized_delta(pair, k, x).abs();
      BallReal pointwise = ctilde * ak * x.abs().pow_int(3);
      if (d.le(pointwise) == Tri::no) row.pointwise_ok = false;
      row.sup = std::max(row.sup, d.upper_double());
      row.sup_mid = std::max(row.sup_mid, d.mid_double());
    }
    report.rows.push_back(row);
  }
  for (size_t i = 0; i + 1 < report.rows.size(); ++i) {
    if (report.rows[i].sup_mid > 0.0)
      report.fitted_ratio = std::max(
          report.fitted_ratio, report.rows[i + 1].sup_mid / report.rows[i].sup_mid);
  }
  return report;
}

}  // namespace tmtrace
