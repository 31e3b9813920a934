#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "hgops/power_series.hpp"

namespace hgops {

namespace detail {

// exp(-1/x) for x > 0, with first and second derivatives.  The underflow of
// exp past x ~ 1/745 flushes the whole triple to zero, which is the correct
// limit.
struct ExpBump {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  explicit ExpBump(double x) {
    if (x <= 0.0) return;
    const double e = std::exp(-1.0 / x);
    if (e == 0.0) return;
    const double ix = 1.0 / x;
    v = e;
    d1 = e * ix * ix;
    d2 = e * (ix * ix * ix * ix - 2.0 * ix * ix * ix);
  }
};

// Smooth step u(x) = e(x) / (e(x) + e(1-x)): 0 for x <= 0, 1 for x >= 1.
struct SmoothStep {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  explicit SmoothStep(double x) {
    if (x <= 0.0) return;
    if (x >= 1.0) {
      v = 1.0;
      return;
    }
    const ExpBump a(x), b(1.0 - x);
    const double den = a.v + b.v;
    v = a.v / den;
    // b'(x) = -ExpBump::d1 at 1-x, b''(x) = +d2 at 1-x
    const double num1 = a.d1 * b.v + a.v * b.d1;
    d1 = num1 / (den * den);
    const double dden = a.d1 - b.d1;
    const double num2 = a.d2 * b.v - a.v * b.d2;
    d2 = (num2 * den - 2.0 * num1 * dden) / (den * den * den);
  }
};

}  // namespace detail

/// Compactly supported C^inf window with evaluators for its value and first
/// two derivatives, plus the amplitude A = max|Phi| + max|Phi''| taken over
/// a dense grid on the support.
class SmoothWindow {
 public:
  using Evaluator = std::function<double(double)>;

  SmoothWindow(double support_lo, double support_hi, Evaluator value, Evaluator deriv1,
               Evaluator deriv2, std::size_t grid_points = 4096)
      : lo_(support_lo),
        hi_(support_hi),
        value_(std::move(value)),
        deriv1_(std::move(deriv1)),
        deriv2_(std::move(deriv2)) {
    if (!(lo_ < hi_)) throw domain_error("SmoothWindow: empty support interval");
    if (grid_points < 2048) grid_points = 2048;
    double m0 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i <= grid_points; ++i) {
      const double s = lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(grid_points);
      m0 = std::max(m0, std::abs(value_(s)));
      m2 = std::max(m2, std::abs(deriv2_(s)));
    }
    amplitude_ = m0 + m2;
  }

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double amplitude() const { return amplitude_; }

  double operator()(double s) const { return value_(s); }
  double deriv1(double s) const { return deriv1_(s); }
  double deriv2(double s) const { return deriv2_(s); }

 private:
  double lo_, hi_;
  Evaluator value_, deriv1_, deriv2_;
  double amplitude_ = 0.0;
};

/// Standard exp(-1/x) bump: vanishes outside (s_lo, s_hi), equals 1 on
/// [flat_lo, flat_hi], and is C^inf everywhere.
inline SmoothWindow bump_window(double s_lo, double s_hi, double flat_lo, double flat_hi) {
  if (!(s_lo < flat_lo && flat_lo < flat_hi && flat_hi < s_hi)) {
    throw domain_error("bump_window: need s_lo < flat_lo < flat_hi < s_hi");
  }
  const double rise = flat_lo - s_lo;
  const double fall = s_hi - flat_hi;

  auto eval = [=](double s) -> detail::SmoothStep {
    if (s <= s_lo || s >= s_hi) return detail::SmoothStep(0.0);
    if (s < flat_lo) return detail::SmoothStep((s - s_lo) / rise);
    if (s <= flat_hi) return detail::SmoothStep(1.0);
    return detail::SmoothStep((s_hi - s) / fall);
  };
  auto scale1 = [=](double s) {
    if (s < flat_lo) return 1.0 / rise;
    if (s > flat_hi) return -1.0 / fall;
    return 0.0;
  };

  return SmoothWindow(
      s_lo, s_hi, [eval](double s) { return eval(s).v; },
      [eval, scale1](double s) { return eval(s).d1 * scale1(s); },
      [eval, scale1](double s) {
        const double c = scale1(s);
        return eval(s).d2 * c * c;
      });
}

/// Polynomial with coefficients Phi(k/N), optionally multiplied by an extra
/// profile evaluated at the same points.  Degree is at most ceil(N * s_hi);
/// trailing zeros within the support are kept.
inline PowerSeries window_poly(const SmoothWindow& window, unsigned N,
                               const std::optional<SmoothWindow::Evaluator>& profile = std::nullopt) {
  if (N < 1) throw domain_error("window_poly: N must be >= 1");
  const double dN = static_cast<double>(N);
  const auto max_k = static_cast<std::size_t>(std::ceil(dN * window.support_hi()));
  std::vector<cplx> c(max_k + 1, cplx(0.0, 0.0));
  for (std::size_t k = 0; k <= max_k; ++k) {
    const double s = static_cast<double>(k) / dN;
    if (s <= window.support_lo() || s >= window.support_hi()) continue;
    double v = window(s);
    if (profile) v *= (*profile)(s);
    c[k] = v;
  }
  return PowerSeries(std::move(c));
}

}  // namespace hgops
