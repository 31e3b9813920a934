#pragma once

#include <cmath>
#include <vector>

#include "hgops/moments.hpp"
#include "hgops/norms.hpp"

namespace hgops {

/// Classical Hilbert operator in coefficient space:
/// output coefficient n is sum_k a_k / (n+k+1).
inline PowerSeries hilbert_classic(const PowerSeries& f, std::size_t K_out) {
  std::vector<cplx> out(K_out + 1);
  std::vector<cplx> terms(f.size());
  for (std::size_t n = 0; n <= K_out; ++n) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      terms[k] = f.at(k) / static_cast<double>(n + k + 1);
    }
    out[n] = detail::pairwise_sum(terms);
  }
  return PowerSeries(std::move(out));
}

/// H_g from a precomputed moment sequence: coefficient k is
/// (k+1) b_{k+1} mu_k.  Requires deg(g) >= K_out + 1 so every b_{k+1} is a
/// stored coefficient rather than an implicit zero.
inline PowerSeries apply_hg(const PowerSeries& g, const MomentSequence& mu, std::size_t K_out) {
  if (g.degree() < K_out + 1) {
    throw precondition_error("apply_hg: degree(g) must be at least K_out + 1");
  }
  if (mu.cutoff() < K_out) {
    throw precondition_error("apply_hg: moment sequence too short");
  }
  std::vector<cplx> out(K_out + 1);
  for (std::size_t k = 0; k <= K_out; ++k) {
    out[k] = static_cast<double>(k + 1) * g.at(k + 1) * mu.at(k);
  }
  return PowerSeries(std::move(out));
}

inline PowerSeries apply_hg(const PowerSeries& g, const PowerSeries& f, std::size_t K_out) {
  return apply_hg(g, moments(f, K_out), K_out);
}

inline PowerSeries apply_hg(const PowerSeries& g, const FunctionSpec& f, std::size_t K_out) {
  return apply_hg(g, moments(f, K_out), K_out);
}

/// Sublinear operator: coefficient j is int_0^1 t^j |f(t)| dt; all outputs
/// are nonnegative and nonincreasing.
inline PowerSeries apply_hg_sublinear(const PowerSeries& f, std::size_t K_out) {
  const MomentSequence mu = abs_moments(f, K_out);
  std::vector<cplx> out(K_out + 1);
  for (std::size_t j = 0; j <= K_out; ++j) out[j] = cplx(mu.at(j).real(), 0.0);
  return PowerSeries(std::move(out));
}

/// Max coefficient discrepancy between (H_g f)' and H_{g'}(t f), computed
/// through independent moment routes where the spec allows one.  Contract:
/// <= 1e-9 when both routes are closed-form, <= 1e-7 with quadrature.
inline double derivative_identity_check(const PowerSeries& g, const FunctionSpec& f, std::size_t K) {
  if (g.degree() < K + 2) {
    throw precondition_error("derivative_identity_check: degree(g) must be at least K + 2");
  }
  const PowerSeries lhs = apply_hg(g, moments(f, K + 1), K + 1).derivative();
  const PowerSeries rhs = apply_hg(g.derivative(), shifted_moments(f, K), K);
  double worst = 0.0;
  for (std::size_t k = 0; k <= K; ++k) worst = std::max(worst, std::abs(lhs.at(k) - rhs.at(k)));
  return worst;
}

/// psi_{N,alpha}(s) = N^{-(3-(2+alpha)/p)} int_0^1 t^{sN} / (1-a_N t)^2 dt,
/// a_N = 1 - 1/N.  phi = 1/psi is available via the accessor.
struct PsiEvaluation {
  unsigned N = 1;
  double p = 2.0;
  double alpha = 0.0;
  double s = 1.0;
  double a_N = 0.0;
  double value = 0.0;
  double phi() const { return 1.0 / value; }
  double normalized() const {
    return value * std::pow(static_cast<double>(N), 2.0 - (2.0 + alpha) / p);
  }
};

inline PsiEvaluation psi(unsigned N, double p, double alpha, double s) {
  if (N < 1) throw domain_error("psi: N must be >= 1");
  if (!(s > 0.0)) throw domain_error("psi: s must be positive");
  if (!(p > 0.0)) throw domain_error("psi: p must be positive");
  if (!(alpha > -1.0)) throw domain_error("psi: alpha must exceed -1");
  PsiEvaluation ev;
  ev.N = N;
  ev.p = p;
  ev.alpha = alpha;
  ev.s = s;
  ev.a_N = 1.0 - 1.0 / static_cast<double>(N);
  const double sN = s * static_cast<double>(N);
  const double aN = ev.a_N;
  auto integrand = [=](double t) {
    const double d = 1.0 - aN * t;
    return std::pow(t, sN) / (d * d);
  };
  const unsigned depth =
      std::max<unsigned>(20, static_cast<unsigned>(std::ceil(std::log2(sN + 2.0))) + 12);
  const double integral = integrate_unit(integrand, 1e-13, depth);
  ev.value = std::pow(static_cast<double>(N), -(3.0 - (2.0 + alpha) / p)) * integral;
  return ev;
}

enum class TestFamily { hardy, dirichlet };

/// The paper's compactness test functions: rational kernels at a_N = 1-1/N
/// scaled so the family is bounded in the target space.
inline FunctionSpec test_function(TestFamily kind, unsigned N, double p, double alpha = 0.0) {
  if (N < 1) throw domain_error("test_function: N must be >= 1");
  if (!(p > 0.0)) throw domain_error("test_function: p must be positive");
  RationalKernel r;
  r.pole = 1.0 - 1.0 / static_cast<double>(N);
  if (kind == TestFamily::hardy) {
    r.scale = std::pow(static_cast<double>(N), -(2.0 - 1.0 / p));
  } else {
    if (!(alpha < 3.0 * p - 2.0)) {
      throw domain_error("test_function: dirichlet family needs alpha < 3p - 2");
    }
    r.scale = std::pow(static_cast<double>(N), -(3.0 - (2.0 + alpha) / p));
  }
  return r;
}

enum class HsSpace { H2, Bergman, Dirichlet };

/// Hilbert-Schmidt partial sums S_1..S_K.
///   H2:        S_m = sum_{k<m} (k+1) |b_{k+1}|^2
///   Bergman:   S_m = sum_{n<m} ||H_g(e_n)||^2 with the double sum truncated
///              at k < K, using exact Gamma-ratio basis weights (log-Gamma).
///   Dirichlet: same with the D^2_alpha basis.
/// Trend fitting (log K versus constant) is left to callers; finite
/// truncations cannot witness divergence.
inline std::vector<double> hs_sum(const PowerSeries& g, HsSpace space, double alpha, std::size_t K) {
  if (K < 1) throw domain_error("hs_sum: cutoff must be >= 1");
  if (K + 1 > g.degree()) {
    throw precondition_error("hs_sum: cutoff must be <= degree(g) - 1");
  }
  std::vector<double> partial(K);
  if (space == HsSpace::H2) {
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      acc += static_cast<double>(k + 1) * std::norm(g.at(k + 1));
      partial[k] = acc;
    }
    return partial;
  }

  if (space == HsSpace::Bergman && !(alpha > -1.0 && alpha < 0.0)) {
    throw domain_error("hs_sum: Bergman variant needs alpha in (-1, 0)");
  }
  if (space == HsSpace::Dirichlet && !(alpha > 0.0 && alpha <= 1.0)) {
    throw domain_error("hs_sum: Dirichlet variant needs alpha in (0, 1]");
  }

  const double lg_a2 = std::lgamma(2.0 + alpha);
  std::vector<double> basis_sq(K);   // 1/||e_n-direction||: c_n^2 or d_n^2
  std::vector<double> column_w(K);   // ||z^k||^2-type weight per output index
  if (space == HsSpace::Bergman) {
    for (std::size_t n = 0; n < K; ++n) {
      const double dn = static_cast<double>(n);
      // c_n^2 = Gamma(n+2+alpha) / (n! Gamma(2+alpha))
      basis_sq[n] = std::exp(std::lgamma(dn + 2.0 + alpha) - std::lgamma(dn + 1.0) - lg_a2);
      // ||z^n||^2_{A^2_alpha} = 1 / c_n^2
      column_w[n] = 1.0 / basis_sq[n];
    }
  } else {
    for (std::size_t n = 0; n < K; ++n) {
      if (n == 0) {
        basis_sq[n] = 1.0;  // e_0 = 1, ||1||_{D^2_alpha} = 1
        column_w[n] = 1.0;
      } else {
        const double dn = static_cast<double>(n);
        // d_n^2 = Gamma(n+1+alpha) / (n^2 (n-1)! Gamma(2+alpha))
        basis_sq[n] =
            std::exp(std::lgamma(dn + 1.0 + alpha) - std::lgamma(dn) - lg_a2) / (dn * dn);
        column_w[n] = 1.0 / basis_sq[n];
      }
    }
  }

  // v_k = column weight * (k+1)^2 |b_{k+1}|^2; row n contributes
  // basis_sq[n] * sum_k v_k / (n+k+1)^2.
  std::vector<double> v(K);
  for (std::size_t k = 0; k < K; ++k) {
    v[k] = column_w[k] * static_cast<double>((k + 1) * (k + 1)) * std::norm(g.at(k + 1));
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < K; ++n) {
    double row = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double d = static_cast<double>(n + k + 1);
      row += v[k] / (d * d);
    }
    acc += basis_sq[n] * row;
    partial[n] = acc;
  }
  return partial;
}

}  // namespace hgops
