#pragma once

#include <cstdint>
#include <string>

namespace lcf {

// Nonnegative real stored as significand in [1,2) times 2^exponent.
// Zero has significand 0. Infinity has significand 1 and exponent kInfExp.
class ScaledReal {
 public:
  static constexpr int64_t kInfExp = INT64_MAX;
  static constexpr double kRelTol = 1e-9;

  ScaledReal() = default;
  static ScaledReal from_double(double x);
  static ScaledReal from_parts(double sig, int64_t exp);
  // 2^x for a (possibly very negative) real exponent.
  static ScaledReal exp2(long double x);
  static ScaledReal infinity() { return ScaledReal(1.0, kInfExp); }
  static ScaledReal zero() { return ScaledReal(); }

  double significand() const { return sig_; }
  int64_t exponent() const { return exp_; }
  bool is_zero() const { return sig_ == 0.0; }
  bool is_inf() const { return exp_ == kInfExp; }

  // log2 of the value; -inf for zero, +inf for infinity.
  long double log2() const;
  // Clamped to double range (underflows to 0, overflows to +inf).
  double to_double() const;

  ScaledReal operator+(const ScaledReal& o) const;
  ScaledReal operator*(const ScaledReal& o) const;
  ScaledReal operator/(const ScaledReal& o) const;
  ScaledReal& operator+=(const ScaledReal& o) { return *this = *this + o; }
  ScaledReal& operator*=(const ScaledReal& o) { return *this = *this * o; }
  ScaledReal scaled(double c) const { return *this * from_double(c); }

  // Exact ordering.
  friend bool operator<(const ScaledReal& a, const ScaledReal& b);
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.sig_ == b.sig_ && a.exp_ == b.exp_;
  }
  friend bool operator>(const ScaledReal& a, const ScaledReal& b) { return b < a; }
  friend bool operator<=(const ScaledReal& a, const ScaledReal& b) { return !(b < a); }
  friend bool operator>=(const ScaledReal& a, const ScaledReal& b) { return !(a < b); }

  // a >= b up to relative tolerance; ties go to true.
  static bool approx_ge(const ScaledReal& a, const ScaledReal& b,
                        double tol = kRelTol);
  static bool approx_le(const ScaledReal& a, const ScaledReal& b,
                        double tol = kRelTol) {
    return approx_ge(b, a, tol);
  }
  // -1, 0, +1 with ties inside the tolerance band reported as 0.
  static int compare(const ScaledReal& a, const ScaledReal& b,
                     double tol = kRelTol);

  std::string to_string() const;

 private:
  ScaledReal(double sig, int64_t exp) : sig_(sig), exp_(exp) {}
  static ScaledReal normalize(double sig, int64_t exp);

  double sig_ = 0.0;
  int64_t exp_ = 0;
};

}  // namespace lcf
