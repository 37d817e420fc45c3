#pragma once

#include <cmath>

namespace gmshadow {

/// x^e for a fixed exponent e, with fast paths for small integer and
/// half-integer exponents. Results agree with std::pow to a few ulp.
class PowerFn {
 public:
  PowerFn() = default;
  explicit PowerFn(double exponent) : e_(exponent) {
    const double twice = 2.0 * exponent;
    if (twice == std::round(twice) && std::abs(twice) <= 16.0) {
      const int k = static_cast<int>(std::round(twice));
      half_ = (k % 2 != 0);
      n_ = half_ ? (k - (k > 0 ? 1 : -1)) / 2 : k / 2;
      fast_ = true;
    }
  }

  double exponent() const { return e_; }

  double operator()(double x) const {
    if (!fast_) {
      return std::pow(x, e_);
    }
    // |x|^|e| first, then invert for negative exponents.
    double y = ipow(x, n_ < 0 ? -n_ : n_);
    if (half_) {
      y *= std::sqrt(x);
    }
    return e_ < 0.0 ? 1.0 / y : y;
  }

 private:
  static double ipow(double x, int n) {
    double result = 1.0;
    while (n > 0) {
      if (n & 1) result *= x;
      x *= x;
      n >>= 1;
    }
    return result;
  }

  double e_ = 1.0;
  int n_ = 1;
  bool half_ = false;
  bool fast_ = false;
};

/// Calls fn with a callable computing x^e, specialised at compile time for the
/// common small exponents so that node loops inline and vectorise.
template <typename Fn>
decltype(auto) visit_power(double e, Fn&& fn) {
  if (e == 1.0) return fn([](double x) { return x; });
  if (e == 2.0) return fn([](double x) { return x * x; });
  if (e == 3.0) return fn([](double x) { return x * x * x; });
  if (e == 4.0) return fn([](double x) {
      const double y = x * x;
      return y * y;
    });
  if (e == 0.0) return fn([](double) { return 1.0; });
  return fn([e](double x) { return std::pow(x, e); });
}

}  // namespace gmshadow
