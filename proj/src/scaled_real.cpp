#include "scaled_real.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lcf {

ScaledReal ScaledReal::normalize(double sig, int64_t exp) {
  if (sig == 0.0) return ScaledReal();
  assert(sig > 0.0 && std::isfinite(sig));
  int e = 0;
  double m = std::frexp(sig, &e);  // m in [0.5, 1)
  return ScaledReal(m * 2.0, exp + e - 1);
}

ScaledReal ScaledReal::from_double(double x) {
  if (std::isinf(x)) return infinity();
  return normalize(x, 0);
}

ScaledReal ScaledReal::from_parts(double sig, int64_t exp) {
  if (exp == kInfExp) return infinity();
  return normalize(sig, exp);
}

ScaledReal ScaledReal::exp2(long double x) {
  long double fl = std::floor(x);
  double frac = static_cast<double>(std::exp2(x - fl));
  return normalize(frac, static_cast<int64_t>(fl));
}

long double ScaledReal::log2() const {
  if (is_zero()) return -std::numeric_limits<long double>::infinity();
  if (is_inf()) return std::numeric_limits<long double>::infinity();
  return static_cast<long double>(exp_) + std::log2(static_cast<long double>(sig_));
}

double ScaledReal::to_double() const {
  if (is_zero()) return 0.0;
  if (is_inf()) return std::numeric_limits<double>::infinity();
  if (exp_ > 1100) return std::numeric_limits<double>::infinity();
  if (exp_ < -1100) return 0.0;
  return std::ldexp(sig_, static_cast<int>(exp_));
}

ScaledReal ScaledReal::operator+(const ScaledReal& o) const {
  if (is_inf() || o.is_inf()) return infinity();
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const ScaledReal& hi = exp_ >= o.exp_ ? *this : o;
  const ScaledReal& lo = exp_ >= o.exp_ ? o : *this;
  int64_t d = hi.exp_ - lo.exp_;
  if (d > 80) return hi;
  return normalize(hi.sig_ + std::ldexp(lo.sig_, -static_cast<int>(d)), hi.exp_);
}

ScaledReal ScaledReal::operator*(const ScaledReal& o) const {
  if (is_zero() || o.is_zero()) {
    return ScaledReal();
  }
  if (is_inf() || o.is_inf()) return infinity();
  return normalize(sig_ * o.sig_, exp_ + o.exp_);
}

ScaledReal ScaledReal::operator/(const ScaledReal& o) const {
  if (o.is_zero() || is_inf()) return infinity();
  if (is_zero() || o.is_inf()) return ScaledReal();
  return normalize(sig_ / o.sig_, exp_ - o.exp_);
}

bool operator<(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero()) return !b.is_zero();
  if (b.is_zero()) return false;
  if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
  return a.sig_ < b.sig_;
}

bool ScaledReal::approx_ge(const ScaledReal& a, const ScaledReal& b, double tol) {
  if (b.is_zero()) return true;
  if (a.is_inf()) return true;
  if (b.is_inf()) return false;
  return !(a < b * from_double(1.0 - tol));
}

int ScaledReal::compare(const ScaledReal& a, const ScaledReal& b, double tol) {
  bool ge = approx_ge(a, b, tol);
  bool le = approx_ge(b, a, tol);
  if (ge && le) return 0;
  return ge ? 1 : -1;
}

std::string ScaledReal::to_string() const {
  if (is_inf()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17gp%lld", sig_, static_cast<long long>(exp_));
  return buf;
}

}  // namespace lcf
