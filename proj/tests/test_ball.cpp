#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "tmtrace/ball.hpp"

using namespace tmtrace;

namespace {

BallReal rat(long num, long den, int prec = 256) {
  mpq_class q(num, den);
  q.canonicalize();
  return BallReal::from_rational(q.get_mpq_t(), prec);
}

bool contains_rat(const BallReal& b, const mpq_class& q) {
  BallReal d = b - BallReal::from_rational(q.get_mpq_t(), b.precision());
  return d.contains_zero();
}

}  // namespace

TEST_CASE("exact integers stay exact through ring operations") {
  BallReal a = BallReal::exact(3);
  BallReal b = BallReal::exact(5);
  CHECK((a + b).exact_p());
  CHECK((a * b).mid_double() == 15.0);
  CHECK((a - b).mid_double() == -2.0);
  CHECK((-a).mid_double() == -3.0);
  CHECK(BallReal::pow2(-3).mid_double() == 0.125);
  CHECK(a.mul_2exp(4).mid_double() == 48.0);
  CHECK(a.pow_int(4).mid_double() == 81.0);
}

TEST_CASE("enclosure soundness on random rational arithmetic") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    mpq_class qa(num(rng), den(rng)), qb(num(rng), den(rng));
    qa.canonicalize();
    qb.canonicalize();
    BallReal a = BallReal::from_rational(qa.get_mpq_t(), 64);
    BallReal b = BallReal::from_rational(qb.get_mpq_t(), 64);
    CHECK(contains_rat(a + b, qa + qb));
    CHECK(contains_rat(a - b, qa - qb));
    CHECK(contains_rat(a * b, qa * qb));
    if (qb != 0 && !b.contains_zero()) CHECK(contains_rat(a / b, qa / qb));
  }
}

TEST_CASE("sqrt and division containment") {
  BallReal two = BallReal::exact(2);
  BallReal r = two.sqrt();
  CHECK((r * r - two).contains_zero());
  CHECK(r.mid_double() == doctest::Approx(1.4142135623730951));
  CHECK_THROWS_AS((two / BallReal::exact(0)), std::domain_error);
  CHECK_THROWS_AS(BallReal::exact(-1).sqrt(), std::domain_error);
}

TEST_CASE("pi and trigonometric enclosures") {
  BallReal pi = BallReal::pi(256);
  CHECK(pi.mid_double() == doctest::Approx(3.14159265358979).epsilon(1e-12));
  CHECK(pi.cos().contains_zero() == false);  // cos(pi) = -1
  CHECK((pi.cos() + BallReal::exact(1)).contains_zero());
  CHECK(pi.sin().contains_zero());
  BallReal half_pi = pi.mul_2exp(-1);
  CHECK(half_pi.cos().contains_zero());
  // |cos| <= 1 for wildly large arguments
  BallReal big = BallReal::from_double(1e18, 256);
  CHECK(big.cos().upper_double() <= 1.0 + 1e-30);
}

TEST_CASE("tri-state comparisons and sign") {
  BallReal one = BallReal::exact(1);
  BallReal two = BallReal::exact(2);
  CHECK(one.le(two) == Tri::yes);
  CHECK(two.le(one) == Tri::no);
  CHECK(one.lt(one) == Tri::no);
  CHECK(one.le(one) == Tri::yes);
  CHECK(one.sign() == Tri::yes);
  CHECK((-one).sign() == Tri::no);
  CHECK(BallReal::exact(0).sign() == Tri::maybe);

  // a fat ball straddling the threshold is indeterminate, never false
  BallReal fat = BallReal::from_double(1.0, 64) + BallReal::pi(64).mul_2exp(-60);
  BallReal wide = hull(BallReal::exact(0), BallReal::exact(2));
  CHECK(wide.le(one) == Tri::maybe);
  CHECK(wide.contains_zero());
  CHECK(fat.contains_zero() == false);
}

TEST_CASE("hull contains both inputs") {
  BallReal a = BallReal::from_double(-1.5, 128);
  BallReal b = BallReal::from_double(2.25, 128);
  BallReal h = hull(a, b);
  CHECK(h.contains(a));
  CHECK(h.contains(b));
  CHECK(h.contains(BallReal::exact(0)));
  CHECK(hull(a, a).contains(a));
}

TEST_CASE("upper and lower bounds bracket the ball") {
  BallReal x = BallReal::from_double(1.0, 64) / BallReal::from_double(3.0, 64);
  CHECK(x.lower_double() <= x.mid_double());
  CHECK(x.mid_double() <= x.upper_double());
  CHECK(x.upper_bound().exact_p());
  CHECK(x.le(x.upper_bound()) == Tri::yes);
  CHECK(x.lower_bound().le(x) == Tri::yes);
}

TEST_CASE("log and abs") {
  BallReal e2 = BallReal::from_double(2.0, 256);
  CHECK(e2.log().mid_double() == doctest::Approx(0.6931471805599453));
  CHECK_THROWS_AS(BallReal::exact(0).log(), std::domain_error);
  CHECK((-BallReal::exact(7)).abs().mid_double() == 7.0);
}

TEST_CASE("from_string round trip") {
  BallReal x = BallReal::from_string("1.25", 128);
  CHECK(x.mid_double() == 1.25);
  CHECK_THROWS(BallReal::from_string("not-a-number", 128));
}
