#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Dense>

#include "hgops/core.hpp"

namespace hgops {
namespace detail {

struct QuadRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule on [-1, 1].  Boost ships the tables (non-negative half
// only); unfold once and cache.
inline const QuadRule& gauss_legendre(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadRule rule;
  auto fill = [&rule](const auto& abscissa, const auto& weights) {
    const bool has_zero = abscissa[0] == 0.0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      rule.x.push_back(abscissa[i]);
      rule.w.push_back(weights[i]);
      if (!(has_zero && i == 0)) {
        rule.x.push_back(-abscissa[i]);
        rule.w.push_back(weights[i]);
      }
    }
  };
  switch (n) {
    case 8:
      fill(boost::math::quadrature::gauss<double, 8>::abscissa(),
           boost::math::quadrature::gauss<double, 8>::weights());
      break;
    case 16:
      fill(boost::math::quadrature::gauss<double, 16>::abscissa(),
           boost::math::quadrature::gauss<double, 16>::weights());
      break;
    case 32:
      fill(boost::math::quadrature::gauss<double, 32>::abscissa(),
           boost::math::quadrature::gauss<double, 32>::weights());
      break;
    case 64:
      fill(boost::math::quadrature::gauss<double, 64>::abscissa(),
           boost::math::quadrature::gauss<double, 64>::weights());
      break;
    default:
      throw std::logic_error("gauss_legendre: unsupported rule size");
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace detail

/// Shared quadrature grid on [0, 1] built from geometric panels whose right
/// endpoints are 1 - 2^{-j}; integrands of the form t^k f(t) concentrate
/// toward t = 1, which the panel ladder resolves.  Optional interior
/// breakpoints (e.g. real zeros of the integrand's kink) split the leading
/// panel so Gauss rules see smooth pieces.
struct UnitGrid {
  std::vector<double> t;
  std::vector<double> w;

  static UnitGrid make(unsigned depth, unsigned nodes_per_panel,
                       const std::vector<double>& breakpoints = {}) {
    const detail::QuadRule& rule = detail::gauss_legendre(nodes_per_panel);
    std::vector<double> edges;
    edges.push_back(0.0);
    for (unsigned j = 1; j <= depth; ++j) {
      edges.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));
    }
    for (const double b : breakpoints) {
      if (b > 1e-15 && b < 1.0 - 1e-15) edges.push_back(b);
    }
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                edges.end());

    UnitGrid grid;
    grid.t.reserve(edges.size() * rule.x.size());
    grid.w.reserve(edges.size() * rule.x.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double a = edges[p], b = edges[p + 1];
      if (!(b > a)) continue;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        grid.t.push_back(mid + half * rule.x[i]);
        grid.w.push_back(half * rule.w[i]);
      }
    }
    return grid;
  }
};

/// Adaptive integral of phi over [0,1] with geometric panel subdivision
/// toward t = 1 and per-panel node escalation until the whole-grid value is
/// stable to the requested absolute tolerance.  Returns the value and writes
/// the last observed change (an error estimate) to *err_out when given.
template <typename F>
double integrate_unit(F&& phi, double abs_tol, unsigned start_depth = 16,
                      const std::vector<double>& breakpoints = {}, double* err_out = nullptr) {
  auto evaluate = [&](unsigned depth, unsigned nodes) {
    const UnitGrid grid = UnitGrid::make(depth, nodes, breakpoints);
    std::vector<double> terms(grid.t.size());
    for (std::size_t i = 0; i < grid.t.size(); ++i) terms[i] = grid.w[i] * phi(grid.t[i]);
    return detail::pairwise_sum(terms);
  };

  unsigned depth = std::max(8u, start_depth);
  unsigned nodes = 16;
  double prev = evaluate(depth, nodes);
  double change = std::abs(prev);
  for (int round = 0; round < 8; ++round) {
    const unsigned next_nodes = nodes < 64 ? nodes * 2 : nodes;
    const unsigned next_depth = depth + 8;
    const double cur = evaluate(next_depth, next_nodes);
    change = std::abs(cur - prev);
    prev = cur;
    nodes = next_nodes;
    depth = next_depth;
    if (change < abs_tol) break;
  }
  if (err_out) *err_out = change;
  return prev;
}

/// Gauss-Jacobi rule for integrals over [0,1] against the weight (1-u)^alpha:
///   integral_0^1 F(u) (1-u)^alpha du  ~=  sum_i w_i F(u_i).
/// Nodes and weights come from the Golub-Welsch eigenvalue construction for
/// the Jacobi(alpha, 0) recurrence, mapped from [-1,1] to [0,1].
struct JacobiRule {
  std::vector<double> u;
  std::vector<double> w;
};

inline const JacobiRule& gauss_jacobi_unit(double alpha, unsigned n) {
  if (!(alpha > -1.0)) throw domain_error("gauss_jacobi_unit: alpha must exceed -1");
  static std::mutex mutex;
  static std::map<std::pair<long long, unsigned>, JacobiRule> cache;
  const auto key = std::make_pair(static_cast<long long>(std::llround(alpha * 1e12)), n);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Jacobi(alpha, beta=0) three-term recurrence: diagonal a_j, off-diagonal
  // c_j = sqrt(b_{j+1}) of the symmetric Jacobi matrix.
  Eigen::VectorXd diag(n), sub(std::max(1u, n - 1));
  diag[0] = -alpha / (alpha + 2.0);
  for (unsigned j = 1; j < n; ++j) {
    const double t = 2.0 * j + alpha;
    diag[j] = -(alpha * alpha) / (t * (t + 2.0));
  }
  if (n > 1) {
    sub[0] = std::sqrt(4.0 * (1.0 + alpha) / ((2.0 + alpha) * (2.0 + alpha) * (3.0 + alpha)));
    for (unsigned j = 2; j < n; ++j) {
      const double t = 2.0 * j + alpha;
      const double b2 = 4.0 * j * j * (j + alpha) * (j + alpha) / (t * t * (t + 1.0) * (t - 1.0));
      sub[j - 1] = std::sqrt(b2);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n > 1 ? n - 1 : 0), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("gauss_jacobi_unit: tridiagonal eigensolve failed");
  }

  // Golub-Welsch weights via the Christoffel function: for an eigenvalue x
  // the unnormalized eigenvector is q_0 = 1, q_{j+1} = ((x-a_j)q_j -
  // c_{j-1}q_{j-1})/c_j, and the weight is mu0 / sum_j q_j^2.  O(n) memory.
  const double mu0 = std::pow(2.0, alpha + 1.0) / (alpha + 1.0);  // int_{-1}^{1} (1-x)^alpha dx
  JacobiRule rule;
  rule.u.resize(n);
  rule.w.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    const double x = solver.eigenvalues()[i];
    double q_prev = 0.0, q = 1.0, sum = 1.0;
    double descale = 1.0;  // squared factor accumulated by overflow guards
    for (unsigned j = 0; j + 1 < n; ++j) {
      const double c_jm1 = (j > 0) ? sub[j - 1] : 0.0;
      const double q_next = ((x - diag[j]) * q - c_jm1 * q_prev) / sub[j];
      q_prev = q;
      q = q_next;
      sum += q * q;
      if (sum > 1e280) {
        const double f = 1e-140;
        q_prev *= f;
        q *= f;
        sum *= f * f;
        descale *= f * f;
      }
    }
    rule.u[i] = 0.5 * (1.0 + x);
    // map [-1,1] -> [0,1]: du = dx/2 and (1-x)^alpha = (2(1-u))^alpha
    rule.w[i] = (mu0 * descale / sum) * std::pow(2.0, -(alpha + 1.0));
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace hgops
