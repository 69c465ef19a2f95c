#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <string>

namespace tmtrace {

/// Tri-state comparison outcome. `maybe` means the balls overlap and the
/// inequality cannot be decided at the current precision.
enum class Tri { yes, no, maybe };

enum class Verdict { verified, refuted, undecidable };

/// Midpoint-radius enclosure over MPFR. Every arithmetic result contains the
/// exact result applied to any members of the input balls. The midpoint
/// carries the working precision; the radius is a 64-bit upward-rounded
/// magnitude.
class BallReal {
 public:
  static constexpr int kRadPrec = 64;
  static constexpr int kDefaultPrec = 256;

  BallReal();                     // exact zero at default precision
  explicit BallReal(int prec);    // exact zero
  BallReal(const BallReal& o);
  BallReal(BallReal&& o) noexcept;
  BallReal& operator=(const BallReal& o);
  BallReal& operator=(BallReal&& o) noexcept;
  ~BallReal();

  static BallReal exact(long v, int prec = kDefaultPrec);
  static BallReal from_double(double v, int prec = kDefaultPrec);
  static BallReal from_string(const std::string& s, int prec);
  static BallReal from_rational(const mpq_t q, int prec);
  static BallReal pi(int prec);
  static BallReal pow2(long e, int prec = kDefaultPrec);  // exact 2^e

  int precision() const { return static_cast<int>(mpfr_get_prec(mid_)); }
  bool exact_p() const { return mpfr_zero_p(rad_); }

  friend BallReal operator+(const BallReal& a, const BallReal& b);
  friend BallReal operator-(const BallReal& a, const BallReal& b);
  friend BallReal operator*(const BallReal& a, const BallReal& b);
  friend BallReal operator/(const BallReal& a, const BallReal& b);
  BallReal operator-() const;

  BallReal sqrt() const;  // domain error if the ball reaches below zero
  BallReal abs() const;
  BallReal cos() const;
  BallReal sin() const;
  BallReal log() const;   // requires a strictly positive ball
  BallReal pow_int(long n) const;
  BallReal mul_2exp(long e) const;  // exact scaling by 2^e

  bool contains_zero() const;
  bool is_nonzero() const { return !contains_zero(); }
  Tri sign() const;  // yes: >0 certified, no: <0 certified, maybe otherwise
  Tri le(const BallReal& o) const;
  Tri lt(const BallReal& o) const;
  Tri ge(const BallReal& o) const { return o.le(*this); }

  bool overlaps(const BallReal& o) const;
  bool contains(const BallReal& o) const;

  double mid_double() const;
  double rad_double() const;
  double upper_double() const;
  double lower_double() const;
  BallReal upper_bound() const;  // exact point >= sup of the ball
  BallReal lower_bound() const;  // exact point <= inf of the ball
  BallReal mid_ball() const;     // exact point at the midpoint

  std::string mid_string(int digits = 30) const;
  std::string rad_string() const;

 private:
  mpfr_t mid_;
  mpfr_t rad_;
  void init(int prec);
  void bump_ulp();  // fold the midpoint rounding error into the radius
  static int join_prec(const BallReal& a, const BallReal& b);
  friend BallReal hull(const BallReal& a, const BallReal& b);
};

/// Smallest ball containing both inputs.
BallReal hull(const BallReal& a, const BallReal& b);

}  // namespace tmtrace
