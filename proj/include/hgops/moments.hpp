#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hgops/function_spec.hpp"
#include "hgops/power_series.hpp"
#include "hgops/quadrature.hpp"

namespace hgops {

enum class MomentMethod { closed_form, quadrature };

/// mu_k = int_0^1 t^k f(t) dt for k = 0..K, with provenance and a per-entry
/// absolute error estimate (machine-level for closed forms, the observed
/// refinement change for quadrature).
struct MomentSequence {
  std::vector<cplx> values;
  MomentMethod method = MomentMethod::closed_form;
  std::vector<double> abs_error;

  std::size_t cutoff() const { return values.empty() ? 0 : values.size() - 1; }
  cplx at(std::size_t k) const { return k < values.size() ? values[k] : cplx(0.0, 0.0); }
};

namespace detail {

// Closed form for polynomials: mu_k = sum_m a_m / (k+m+1).
inline MomentSequence polynomial_moments(std::span<const cplx> coeffs, std::size_t K) {
  MomentSequence seq;
  seq.method = MomentMethod::closed_form;
  seq.values.resize(K + 1);
  seq.abs_error.resize(K + 1);
  double abs_sum = 0.0;
  for (const cplx& c : coeffs) abs_sum += std::abs(c);
  std::vector<cplx> terms(coeffs.size());
  for (std::size_t k = 0; k <= K; ++k) {
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      terms[m] = coeffs[m] / static_cast<double>(k + m + 1);
    }
    seq.values[k] = pairwise_sum(terms);
    seq.abs_error[k] = 8e-16 * abs_sum / static_cast<double>(k + 1);
  }
  return seq;
}

inline MomentSequence quadrature_moments(const std::function<cplx(double)>& phi, std::size_t K,
                                         double abs_tol, const std::vector<double>& breakpoints = {},
                                         unsigned extra_depth = 0);

// Closed form for c/(1-a t)^2 via two coupled downward recurrences.
//   J_m = int t^m/(1-a t) dt:    J_{m-1} = a J_m + 1/m
//   I_m = int t^m/(1-a t)^2 dt:  I_{m-1} = a I_m + J_{m-1}
// All terms are positive, so the downward sweep has no cancellation and
// start-up error is damped by a factor a per step.
inline MomentSequence rational_moments(double scale, double a, std::size_t K) {
  MomentSequence seq;
  seq.method = MomentMethod::closed_form;
  seq.values.resize(K + 1);
  seq.abs_error.assign(K + 1, 0.0);
  if (a == 0.0) {
    for (std::size_t k = 0; k <= K; ++k) {
      seq.values[k] = scale / static_cast<double>(k + 1);
      seq.abs_error[k] = 4e-16 * std::abs(scale);
    }
    return seq;
  }
  const double start_damping = 46.0;  // a^extra <= e^{-46} ~ 1e-20
  const double extra_d = std::ceil(start_damping / -std::log(a)) + 4.0;
  if (extra_d > 5e7) {
    // pole absurdly close to 1: the geometric panels still resolve it
    const unsigned depth = static_cast<unsigned>(std::ceil(std::log2(1.0 / (1.0 - a)))) + 12;
    return quadrature_moments(
        [=](double t) { return cplx(scale / ((1.0 - a * t) * (1.0 - a * t)), 0.0); }, K, 1e-11, {},
        depth);
  }
  const auto extra = static_cast<std::size_t>(extra_d);
  const std::size_t M0 = K + extra;
  double J = 0.0, I = 0.0;
  std::vector<double> Ik(K + 1, 0.0);
  for (std::size_t m = M0; m >= 1; --m) {
    const double J_prev = a * J + 1.0 / static_cast<double>(m);
    const double I_prev = a * I + J_prev;
    J = J_prev;
    I = I_prev;
    if (m - 1 <= K) Ik[m - 1] = I;
  }
  for (std::size_t k = 0; k <= K; ++k) {
    seq.values[k] = scale * Ik[k];
    seq.abs_error[k] = std::abs(scale) * (1e-14 * Ik[k] + 1e-18);
  }
  return seq;
}

// Batched quadrature moments sharing one evaluation grid: phi is the
// (possibly complex) integrand factor, so mu_k ~= sum_i w_i t_i^k phi(t_i).
// The grid is refined (more panels toward 1, more nodes) until every entry
// is stable to abs_tol.
inline MomentSequence quadrature_moments(const std::function<cplx(double)>& phi, std::size_t K,
                                         double abs_tol, const std::vector<double>& breakpoints,
                                         unsigned extra_depth) {
  const unsigned base_depth =
      std::max<unsigned>(16, static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(K + 2)))) + 8) +
      extra_depth;

  auto evaluate = [&](unsigned depth, unsigned nodes) {
    const UnitGrid grid = UnitGrid::make(depth, nodes, breakpoints);
    std::vector<cplx> vals(grid.t.size());
    for (std::size_t i = 0; i < grid.t.size(); ++i) vals[i] = grid.w[i] * phi(grid.t[i]);
    std::vector<cplx> mus(K + 1);
    std::vector<cplx> powed = vals;  // w_i * t_i^k * phi(t_i), updated in k
    std::vector<cplx> terms(grid.t.size());
    for (std::size_t k = 0; k <= K; ++k) {
      mus[k] = pairwise_sum(powed);
      if (k < K) {
        for (std::size_t i = 0; i < grid.t.size(); ++i) powed[i] *= grid.t[i];
      }
    }
    return mus;
  };

  MomentSequence seq;
  seq.method = MomentMethod::quadrature;
  std::vector<cplx> prev = evaluate(base_depth, 16);
  std::vector<double> change(K + 1, 0.0);
  unsigned depth = base_depth, nodes = 16;
  for (int round = 0; round < 6; ++round) {
    nodes = nodes < 64 ? nodes * 2 : nodes;
    depth += 8;
    const std::vector<cplx> cur = evaluate(depth, nodes);
    double max_change = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
      change[k] = std::abs(cur[k] - prev[k]);
      max_change = std::max(max_change, change[k]);
    }
    prev = cur;
    if (max_change < abs_tol) break;
  }
  seq.values = std::move(prev);
  seq.abs_error = std::move(change);
  return seq;
}

// Real zeros of f on (0,1), used to split |f| integrands at their kinks.
// Only meaningful when f has (numerically) real coefficients.
inline std::vector<double> real_axis_zeros(const PowerSeries& f) {
  double scale = f.max_abs();
  if (scale == 0.0) return {};
  bool real_coeffs = true;
  for (const cplx& c : f.coeffs()) {
    if (std::abs(c.imag()) > 1e-14 * scale) {
      real_coeffs = false;
      break;
    }
  }
  if (!real_coeffs) return {};

  const std::size_t samples = std::max<std::size_t>(8 * f.size(), 256);
  std::vector<double> zeros;
  auto value = [&](double t) { return f(cplx(t, 0.0)).real(); };
  double t_prev = 0.0;
  double v_prev = value(0.0);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    const double v = value(t);
    if (v_prev == 0.0) {
      zeros.push_back(t_prev);
    } else if (v_prev * v < 0.0) {
      double lo = t_prev, hi = t;
      double v_lo = v_prev;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = value(mid);
        if (vm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (v_lo * vm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          v_lo = vm;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    t_prev = t;
    v_prev = v;
  }
  return zeros;
}

}  // namespace detail

/// Moments of a truncated series (polynomial route, exact).
inline MomentSequence moments(const PowerSeries& f, std::size_t K) {
  return detail::polynomial_moments(f.view(), K);
}

/// Moments of a named function.  Polynomials and rational kernels take the
/// closed-form route; other specs go through adaptive quadrature with
/// geometric refinement toward t = 1 (per-entry error target 1e-11).
inline MomentSequence moments(const FunctionSpec& spec, std::size_t K) {
  return std::visit(
      [&](const auto& s) -> MomentSequence {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return detail::polynomial_moments(s.coeffs, K);
        } else if constexpr (std::is_same_v<T, RationalKernel>) {
          detail::validate(s);
          return detail::rational_moments(s.scale, s.pole, K);
        } else if constexpr (std::is_same_v<T, LogKernel>) {
          // integrable log singularity at t = 1
          return detail::quadrature_moments(
              [](double t) { return cplx(-std::log1p(-t), 0.0); }, K, 1e-11, {}, 16);
        } else if constexpr (std::is_same_v<T, CauchyTransform>) {
          detail::validate(s);
          for (const CauchyNode& n : s.nodes) {
            if (std::abs(n.node - cplx(1.0, 0.0)) < 1e-9) {
              throw domain_error("moments: Cauchy node at 1 is not integrable on [0,1)");
            }
          }
          auto eval = [nodes = s.nodes](double t) {
            cplx acc(0.0, 0.0);
            for (const CauchyNode& n : nodes) acc += n.weight / (1.0 - std::conj(n.node) * t);
            return acc;
          };
          return detail::quadrature_moments(eval, K, 1e-11);
        } else {
          throw domain_error("moments: coefficient-rule specs must be materialized first");
        }
      },
      spec);
}

/// mu_j = int_0^1 t^j |f(t)| dt by quadrature (|f| is not analytic, so no
/// closed form exists).  Kinks of |f| at real zeros of f become explicit
/// panel breakpoints.  Error target 1e-10 per entry.
inline MomentSequence abs_moments(const PowerSeries& f, std::size_t K) {
  const std::vector<double> zeros = detail::real_axis_zeros(f);
  return detail::quadrature_moments(
      [&f](double t) { return cplx(std::abs(f(cplx(t, 0.0))), 0.0); }, K, 1e-10, zeros);
}

/// Moments of t * f(t); polynomial specs stay closed-form, everything else
/// is evaluated by quadrature.  This is the independent route used by the
/// derivative-identity check.
inline MomentSequence shifted_moments(const FunctionSpec& spec, std::size_t K) {
  return std::visit(
      [&](const auto& s) -> MomentSequence {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          std::vector<cplx> shifted(s.coeffs.size() + 1, cplx(0.0, 0.0));
          std::copy(s.coeffs.begin(), s.coeffs.end(), shifted.begin() + 1);
          return detail::polynomial_moments(shifted, K);
        } else if constexpr (std::is_same_v<T, RationalKernel>) {
          detail::validate(s);
          return detail::quadrature_moments(
              [=](double t) { return cplx(t * s.scale / ((1.0 - s.pole * t) * (1.0 - s.pole * t)), 0.0); },
              K, 1e-11, {}, static_cast<unsigned>(std::ceil(std::log2(1.0 / (1.0 - s.pole)))) + 8);
        } else if constexpr (std::is_same_v<T, LogKernel>) {
          return detail::quadrature_moments(
              [](double t) { return cplx(-t * std::log1p(-t), 0.0); }, K, 1e-11, {}, 16);
        } else if constexpr (std::is_same_v<T, CauchyTransform>) {
          detail::validate(s);
          auto eval = [nodes = s.nodes](double t) {
            cplx acc(0.0, 0.0);
            for (const CauchyNode& n : nodes) acc += n.weight / (1.0 - std::conj(n.node) * t);
            return t * acc;
          };
          return detail::quadrature_moments(eval, K, 1e-11);
        } else {
          throw domain_error("shifted_moments: coefficient-rule specs must be materialized first");
        }
      },
      spec);
}

}  // namespace hgops
