#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "hgops/core.hpp"

namespace hgops {

/// Truncated Taylor series a_0 + a_1 z + ... + a_K z^K of an analytic
/// function on the unit disc.  Coefficients are stored densely; trailing
/// zeros are permitted, so degree() reports the truncation degree, not the
/// degree of the last nonzero term.  Values are immutable after
/// construction; all operations return new series.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1, cplx(0.0, 0.0)) {}

  explicit PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, cplx(0.0, 0.0));
    for (const cplx& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw domain_error("PowerSeries: coefficients must be finite");
      }
    }
  }

  static PowerSeries zero(std::size_t degree) {
    return PowerSeries(std::vector<cplx>(degree + 1, cplx(0.0, 0.0)));
  }

  static PowerSeries monomial(std::size_t m, cplx c = cplx(1.0, 0.0)) {
    std::vector<cplx> v(m + 1, cplx(0.0, 0.0));
    v[m] = c;
    return PowerSeries(std::move(v));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient a_k; zero beyond the truncation degree.
  cplx at(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx(0.0, 0.0); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::span<const cplx> view() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const cplx& c) { return c == cplx(0.0, 0.0); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Termwise derivative; degree drops by one (constants map to the zero
  /// series of degree 0).
  PowerSeries derivative() const {
    if (coeffs_.size() == 1) return PowerSeries();
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return PowerSeries(std::move(d));
  }

  /// z * f(z); degree grows by one.
  PowerSeries shifted_up() const {
    std::vector<cplx> s(coeffs_.size() + 1, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) s[k + 1] = coeffs_[k];
    return PowerSeries(std::move(s));
  }

  /// Truncation or zero-extension to exactly degree K.
  PowerSeries truncated(std::size_t K) const {
    std::vector<cplx> t(K + 1, cplx(0.0, 0.0));
    const std::size_t n = std::min(K + 1, coeffs_.size());
    std::copy_n(coeffs_.begin(), n, t.begin());
    return PowerSeries(std::move(t));
  }

  PowerSeries with_coefficient(std::size_t k, cplx value) const {
    std::vector<cplx> c = coeffs_;
    if (k >= c.size()) c.resize(k + 1, cplx(0.0, 0.0));
    c[k] = value;
    return PowerSeries(std::move(c));
  }

  /// Value at a point of the closed disc (Horner).
  cplx operator()(cplx z) const {
    cplx acc(0.0, 0.0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.at(k) + b.at(k);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.at(k) - b.at(k);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator*(cplx s, const PowerSeries& a) {
    std::vector<cplx> c = a.coeffs_;
    for (cplx& x : c) x *= s;
    return PowerSeries(std::move(c));
  }

  bool operator==(const PowerSeries& other) const = default;

 private:
  std::vector<cplx> coeffs_;
};

/// Index n marks the coefficient range I(n) = [2^n, 2^{n+1} - 1].
struct DyadicBlockIndex {
  unsigned n = 0;
  std::size_t first() const { return std::size_t{1} << n; }
  std::size_t last() const { return (std::size_t{2} << n) - 1; }
};

/// The part of f supported on I(n); coefficients outside the block vanish.
/// The result is trimmed to degree min(deg f, 2^{n+1}-1), which preserves
/// every norm used downstream while keeping FFT sizes proportional to the
/// block, and collapses to the zero series when the block lies beyond the
/// truncation.
inline PowerSeries dyadic_block(const PowerSeries& f, DyadicBlockIndex idx) {
  const std::size_t lo = idx.first();
  if (lo > f.degree()) return PowerSeries();
  const std::size_t hi = std::min(idx.last(), f.degree());
  std::vector<cplx> c(hi + 1, cplx(0.0, 0.0));
  for (std::size_t k = lo; k <= hi; ++k) c[k] = f.at(k);
  return PowerSeries(std::move(c));
}

inline PowerSeries dyadic_block(const PowerSeries& f, unsigned n) {
  return dyadic_block(f, DyadicBlockIndex{n});
}

/// Number of dyadic blocks intersecting [1, deg f].
inline unsigned dyadic_block_count(const PowerSeries& f) {
  unsigned n = 0;
  while ((std::size_t{1} << n) <= f.degree()) ++n;
  return n;
}

/// Hadamard (coefficientwise) product; degree = min of the degrees.
inline PowerSeries hadamard(const PowerSeries& W, const PowerSeries& f) {
  const std::size_t deg = std::min(W.degree(), f.degree());
  std::vector<cplx> c(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) c[k] = W.at(k) * f.at(k);
  return PowerSeries(std::move(c));
}

}  // namespace hgops
