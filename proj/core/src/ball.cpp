#include "tmtrace/ball.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace tmtrace {

namespace {

struct Tmp {
  mpfr_t v;
  explicit Tmp(int prec) { mpfr_init2(v, prec); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

}  // namespace

void BallReal::init(int prec) {
  if (prec < 2) throw std::invalid_argument("BallReal: precision < 2");
  mpfr_init2(mid_, prec);
  mpfr_set_zero(mid_, 1);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(rad_, 1);
}

BallReal::BallReal() { init(kDefaultPrec); }
BallReal::BallReal(int prec) { init(prec); }

BallReal::BallReal(const BallReal& o) {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

BallReal::BallReal(BallReal&& o) noexcept {
  mpfr_init2(mid_, 2);
  mpfr_init2(rad_, 2);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

BallReal& BallReal::operator=(const BallReal& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }
  return *this;
}

BallReal& BallReal::operator=(BallReal&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  return *this;
}

BallReal::~BallReal() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void BallReal::bump_ulp() {
  if (mpfr_zero_p(mid_) || !mpfr_number_p(mid_)) return;
  Tmp u(kRadPrec);
  mpfr_set_ui_2exp(u.v, 1, mpfr_get_exp(mid_) - precision(), MPFR_RNDU);
  mpfr_add(rad_, rad_, u.v, MPFR_RNDU);
}

int BallReal::join_prec(const BallReal& a, const BallReal& b) {
  return std::max(a.precision(), b.precision());
}

BallReal BallReal::exact(long v, int prec) {
  BallReal r(prec);
  mpfr_set_si(r.mid_, v, MPFR_RNDN);
  return r;
}

BallReal BallReal::from_double(double v, int prec) {
  BallReal r(prec);
  int t = mpfr_set_d(r.mid_, v, MPFR_RNDN);
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::from_string(const std::string& s, int prec) {
  BallReal r(prec);
  char* end = nullptr;
  int inexact = mpfr_strtofr(r.mid_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("BallReal: unparsable number '" + s + "'");
  if (inexact != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::from_rational(const mpq_t q, int prec) {
  BallReal r(prec);
  int t = mpfr_set_q(r.mid_, q, MPFR_RNDN);
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::pi(int prec) {
  BallReal r(prec);
  mpfr_const_pi(r.mid_, MPFR_RNDN);
  r.bump_ulp();
  return r;
}

BallReal BallReal::pow2(long e, int prec) {
  BallReal r(prec);
  mpfr_set_ui_2exp(r.mid_, 1, e, MPFR_RNDN);
  return r;
}

BallReal operator+(const BallReal& a, const BallReal& b) {
  BallReal r(BallReal::join_prec(a, b));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal operator-(const BallReal& a, const BallReal& b) {
  BallReal r(BallReal::join_prec(a, b));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal operator*(const BallReal& a, const BallReal& b) {
  BallReal r(BallReal::join_prec(a, b));
  int t_mid = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // rad = |a.mid|*b.rad + |b.mid|*a.rad + a.rad*b.rad, rounded up
  Tmp am(BallReal::kRadPrec), bm(BallReal::kRadPrec), t(BallReal::kRadPrec);
  mpfr_abs(am.v, a.mid_, MPFR_RNDU);
  mpfr_abs(bm.v, b.mid_, MPFR_RNDU);
  mpfr_mul(t.v, am.v, b.rad_, MPFR_RNDU);
  mpfr_set(r.rad_, t.v, MPFR_RNDU);
  mpfr_mul(t.v, bm.v, a.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t.v, MPFR_RNDU);
  mpfr_mul(t.v, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t.v, MPFR_RNDU);
  if (t_mid != 0) r.bump_ulp();
  return r;
}

BallReal operator/(const BallReal& a, const BallReal& b) {
  if (b.contains_zero())
    throw std::domain_error("BallReal: division by ball containing zero");
  BallReal r(BallReal::join_prec(a, b));
  int t_mid = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |a'/b' - a/b| <= (|b|*ra + |a|*rb) / (|b| * (|b| - rb))
  Tmp am(BallReal::kRadPrec), bm(BallReal::kRadPrec);
  Tmp num(BallReal::kRadPrec), den(BallReal::kRadPrec), t(BallReal::kRadPrec);
  mpfr_abs(am.v, a.mid_, MPFR_RNDU);
  mpfr_abs(bm.v, b.mid_, MPFR_RNDU);
  mpfr_mul(num.v, bm.v, a.rad_, MPFR_RNDU);
  mpfr_mul(t.v, am.v, b.rad_, MPFR_RNDU);
  mpfr_add(num.v, num.v, t.v, MPFR_RNDU);
  mpfr_abs(bm.v, b.mid_, MPFR_RNDD);
  mpfr_sub(den.v, bm.v, b.rad_, MPFR_RNDD);
  mpfr_mul(den.v, den.v, bm.v, MPFR_RNDD);
  mpfr_div(r.rad_, num.v, den.v, MPFR_RNDU);
  if (t_mid != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::operator-() const {
  BallReal r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

BallReal BallReal::sqrt() const {
  Tmp lo(precision()), hi(precision());
  mpfr_sub(lo.v, mid_, rad_, MPFR_RNDD);
  if (mpfr_sgn(lo.v) < 0)
    throw std::domain_error("BallReal: sqrt of ball reaching below zero");
  mpfr_add(hi.v, mid_, rad_, MPFR_RNDU);
  BallReal r(precision());
  Tmp slo(precision()), shi(precision());
  mpfr_sqrt(slo.v, lo.v, MPFR_RNDD);
  mpfr_sqrt(shi.v, hi.v, MPFR_RNDU);
  mpfr_add(r.mid_, slo.v, shi.v, MPFR_RNDN);
  mpfr_div_2si(r.mid_, r.mid_, 1, MPFR_RNDN);
  Tmp d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.v, shi.v, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.v, r.mid_, slo.v, MPFR_RNDU);
  mpfr_max(r.rad_, d1.v, d2.v, MPFR_RNDU);
  r.bump_ulp();
  return r;
}

BallReal BallReal::abs() const {
  // |x| for x in [m-r, m+r] lies in [|m|-r, |m|+r]
  BallReal r(*this);
  mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

BallReal BallReal::cos() const {
  BallReal r(precision());
  int t = mpfr_cos(r.mid_, mid_, MPFR_RNDN);
  mpfr_set(r.rad_, rad_, MPFR_RNDU);  // |cos'| <= 1
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::sin() const {
  BallReal r(precision());
  int t = mpfr_sin(r.mid_, mid_, MPFR_RNDN);
  mpfr_set(r.rad_, rad_, MPFR_RNDU);
  if (t != 0) r.bump_ulp();
  return r;
}

BallReal BallReal::log() const {
  Tmp lo(precision()), hi(precision());
  mpfr_sub(lo.v, mid_, rad_, MPFR_RNDD);
  if (mpfr_sgn(lo.v) <= 0)
    throw std::domain_error("BallReal: log of ball reaching zero");
  mpfr_add(hi.v, mid_, rad_, MPFR_RNDU);
  BallReal r(precision());
  Tmp slo(precision()), shi(precision());
  mpfr_log(slo.v, lo.v, MPFR_RNDD);
  mpfr_log(shi.v, hi.v, MPFR_RNDU);
  mpfr_add(r.mid_, slo.v, shi.v, MPFR_RNDN);
  mpfr_div_2si(r.mid_, r.mid_, 1, MPFR_RNDN);
  Tmp d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.v, shi.v, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.v, r.mid_, slo.v, MPFR_RNDU);
  mpfr_max(r.rad_, d1.v, d2.v, MPFR_RNDU);
  r.bump_ulp();
  return r;
}

BallReal BallReal::pow_int(long n) const {
  if (n < 0) return BallReal::exact(1, precision()) / pow_int(-n);
  BallReal acc = BallReal::exact(1, precision());
  BallReal base(*this);
  unsigned long e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

BallReal BallReal::mul_2exp(long e) const {
  BallReal r(*this);
  mpfr_mul_2si(r.mid_, r.mid_, e, MPFR_RNDN);
  mpfr_mul_2si(r.rad_, r.rad_, e, MPFR_RNDU);
  return r;
}

bool BallReal::contains_zero() const {
  Tmp a(kRadPrec);
  mpfr_abs(a.v, mid_, MPFR_RNDD);
  return mpfr_cmp(a.v, rad_) <= 0;
}

Tri BallReal::sign() const {
  if (contains_zero()) return Tri::maybe;
  return mpfr_sgn(mid_) > 0 ? Tri::yes : Tri::no;
}

Tri BallReal::le(const BallReal& o) const {
  Tmp up(precision()), lo(o.precision());
  mpfr_add(up.v, mid_, rad_, MPFR_RNDU);
  mpfr_sub(lo.v, o.mid_, o.rad_, MPFR_RNDD);
  if (mpfr_cmp(up.v, lo.v) <= 0) return Tri::yes;
  mpfr_sub(up.v, mid_, rad_, MPFR_RNDD);
  mpfr_add(lo.v, o.mid_, o.rad_, MPFR_RNDU);
  if (mpfr_cmp(up.v, lo.v) > 0) return Tri::no;
  return Tri::maybe;
}

Tri BallReal::lt(const BallReal& o) const {
  Tmp up(precision()), lo(o.precision());
  mpfr_add(up.v, mid_, rad_, MPFR_RNDU);
  mpfr_sub(lo.v, o.mid_, o.rad_, MPFR_RNDD);
  if (mpfr_cmp(up.v, lo.v) < 0) return Tri::yes;
  mpfr_sub(up.v, mid_, rad_, MPFR_RNDD);
  mpfr_add(lo.v, o.mid_, o.rad_, MPFR_RNDU);
  if (mpfr_cmp(up.v, lo.v) >= 0) return Tri::no;
  return Tri::maybe;
}

bool BallReal::overlaps(const BallReal& o) const {
  Tmp d(kRadPrec), s(kRadPrec);
  Tmp diff(std::max(precision(), o.precision()));
  mpfr_sub(diff.v, mid_, o.mid_, MPFR_RNDA);
  mpfr_abs(d.v, diff.v, MPFR_RNDD);
  mpfr_add(s.v, rad_, o.rad_, MPFR_RNDU);
  return mpfr_cmp(d.v, s.v) <= 0;
}

bool BallReal::contains(const BallReal& o) const {
  Tmp d(kRadPrec), s(kRadPrec);
  Tmp diff(std::max(precision(), o.precision()));
  mpfr_sub(diff.v, mid_, o.mid_, MPFR_RNDA);
  mpfr_abs(d.v, diff.v, MPFR_RNDU);
  mpfr_add(d.v, d.v, o.rad_, MPFR_RNDU);
  return mpfr_cmp(d.v, rad_) <= 0;
}

double BallReal::mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
double BallReal::rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

double BallReal::upper_double() const {
  Tmp up(precision());
  mpfr_add(up.v, mid_, rad_, MPFR_RNDU);
  return mpfr_get_d(up.v, MPFR_RNDU);
}

double BallReal::lower_double() const {
  Tmp lo(precision());
  mpfr_sub(lo.v, mid_, rad_, MPFR_RNDD);
  return mpfr_get_d(lo.v, MPFR_RNDD);
}

BallReal BallReal::upper_bound() const {
  BallReal r(precision());
  mpfr_add(r.mid_, mid_, rad_, MPFR_RNDU);
  return r;
}

BallReal BallReal::lower_bound() const {
  BallReal r(precision());
  mpfr_sub(r.mid_, mid_, rad_, MPFR_RNDD);
  return r;
}

BallReal BallReal::mid_ball() const {
  BallReal r(precision());
  mpfr_set(r.mid_, mid_, MPFR_RNDN);
  return r;
}

std::string BallReal::mid_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, mid_);
  return std::string(buf.data());
}

std::string BallReal::rad_string() const {
  std::vector<char> buf(96);
  mpfr_snprintf(buf.data(), buf.size(), "%.3Rg", rad_);
  return std::string(buf.data());
}

BallReal hull(const BallReal& a, const BallReal& b) {
  int prec = BallReal::join_prec(a, b);
  Tmp lo(prec), hi(prec), t(prec);
  mpfr_sub(lo.v, a.mid_, a.rad_, MPFR_RNDD);
  mpfr_sub(t.v, b.mid_, b.rad_, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, t.v, MPFR_RNDD);
  mpfr_add(hi.v, a.mid_, a.rad_, MPFR_RNDU);
  mpfr_add(t.v, b.mid_, b.rad_, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, t.v, MPFR_RNDU);
  BallReal r(prec);
  mpfr_add(r.mid_, lo.v, hi.v, MPFR_RNDN);
  mpfr_div_2si(r.mid_, r.mid_, 1, MPFR_RNDN);
  Tmp d1(BallReal::kRadPrec), d2(BallReal::kRadPrec);
  mpfr_sub(d1.v, hi.v, r.mid_, MPFR_RNDU);
  mpfr_sub(d2.v, r.mid_, lo.v, MPFR_RNDU);
  mpfr_max(r.rad_, d1.v, d2.v, MPFR_RNDU);
  r.bump_ulp();
  return r;
}

}  // namespace tmtrace
