#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "hgops/operators.hpp"

namespace hgops {

/// Coefficient matrix of the truncated generalized Hilbert operator:
/// entry (k, n) = (k+1) b_{k+1} / (n+k+1) for 0 <= k, n < N.  The matrix is
/// diag((k+1)b_{k+1}) times the Hankel kernel 1/(k+n+1), so matrix-vector
/// products run in O(N log N) through an FFT circular convolution; N = 4096
/// ladders stay cheap without ever materializing N^2 entries.
class TruncatedOperatorMatrix {
 public:
  TruncatedOperatorMatrix(const PowerSeries& g, std::size_t N) : n_(N) {
    if (N < 1) throw domain_error("truncated_matrix: N must be >= 1");
    if (g.degree() < N) {
      throw precondition_error("truncated_matrix: degree(g) must be at least N");
    }
    weights_.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
      weights_[k] = static_cast<double>(k + 1) * g.at(k + 1);
    }
    fft_size_ = detail::next_pow2(3 * N);
    kernel_fft_.assign(fft_size_, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < 2 * N - 1; ++m) {
      kernel_fft_[m] = cplx(1.0 / static_cast<double>(m + 1), 0.0);
    }
    detail::fft_pow2(kernel_fft_, -1);
  }

  std::size_t size() const { return n_; }
  const std::vector<cplx>& row_weights() const { return weights_; }

  cplx entry(std::size_t k, std::size_t n) const {
    if (k >= n_ || n >= n_) throw domain_error("truncated_matrix: index out of range");
    return weights_[k] / static_cast<double>(n + k + 1);
  }

  /// y_k = sum_n M_{k,n} x_n
  std::vector<cplx> apply(std::span<const cplx> x) const {
    std::vector<cplx> y = hankel_apply(x);
    for (std::size_t k = 0; k < n_; ++k) y[k] *= weights_[k];
    return y;
  }

  /// y_n = sum_k conj(M_{k,n}) x_k
  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const {
    std::vector<cplx> scaled(n_);
    for (std::size_t k = 0; k < n_; ++k) scaled[k] = std::conj(weights_[k]) * x[k];
    return hankel_apply(scaled);
  }

 private:
  // y_k = sum_n h_{k+n} x_n with h_m = 1/(m+1): circular convolution of the
  // kernel with the reversed input, read off at offset N-1.
  std::vector<cplx> hankel_apply(std::span<const cplx> x) const {
    std::vector<cplx> buf(fft_size_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_; ++i) buf[i] = x[n_ - 1 - i];
    detail::fft_pow2(buf, -1);
    for (std::size_t i = 0; i < fft_size_; ++i) buf[i] *= kernel_fft_[i];
    detail::fft_pow2(buf, +1);
    const double scale = 1.0 / static_cast<double>(fft_size_);
    std::vector<cplx> y(n_);
    for (std::size_t k = 0; k < n_; ++k) y[k] = buf[k + n_ - 1] * scale;
    return y;
  }

  std::size_t n_ = 0;
  std::size_t fft_size_ = 0;
  std::vector<cplx> weights_;
  std::vector<cplx> kernel_fft_;
};

inline TruncatedOperatorMatrix truncated_matrix(const PowerSeries& g, std::size_t N) {
  return TruncatedOperatorMatrix(g, N);
}

template <typename M>
concept LinearOperatorLike = requires(const M& m, std::span<const cplx> x) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.apply(x) } -> std::convertible_to<std::vector<cplx>>;
  { m.apply_adjoint(x) } -> std::convertible_to<std::vector<cplx>>;
};

/// Dense square matrix adapter satisfying LinearOperatorLike (row-major).
class DenseOperator {
 public:
  DenseOperator(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_) throw domain_error("DenseOperator: size mismatch");
  }
  std::size_t size() const { return n_; }
  cplx entry(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::vector<cplx> apply(std::span<const cplx> x) const {
    std::vector<cplx> y(n_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_; ++i) {
      cplx acc(0.0, 0.0);
      for (std::size_t j = 0; j < n_; ++j) acc += a_[i * n_ + j] * x[j];
      y[i] = acc;
    }
    return y;
  }
  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const {
    std::vector<cplx> y(n_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) y[j] += std::conj(a_[i * n_ + j]) * x[i];
    }
    return y;
  }

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

struct OperatorNormResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value by power iteration on M*M: deterministic all-ones
/// start, Rayleigh quotient stopping at relative change <= tol, iteration
/// cap 1e5.  Non-convergence is reported, not thrown; callers decide.
template <LinearOperatorLike M>
OperatorNormResult l2_operator_norm(const M& m, double tol = 1e-10, std::size_t cap = 100000) {
  const std::size_t n = m.size();
  std::vector<cplx> x(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  OperatorNormResult res;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= cap; ++it) {
    const std::vector<cplx> y = m.apply_adjoint(m.apply(x));
    double dot = 0.0;  // x^H y is real for the PSD operator M*M
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += (std::conj(x[i]) * y[i]).real();
      norm_sq += std::norm(y[i]);
    }
    res.iterations = it;
    const double norm_y = std::sqrt(norm_sq);
    if (norm_y == 0.0) {
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    const double lambda_new = dot;
    if (it > 1 && std::abs(lambda_new - lambda) <= tol * std::abs(lambda_new)) {
      res.value = std::sqrt(std::max(lambda_new, 0.0));
      res.converged = true;
      return res;
    }
    lambda = lambda_new;
    const double inv = 1.0 / norm_y;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] * inv;
  }
  res.value = std::sqrt(std::max(lambda, 0.0));
  res.converged = false;
  return res;
}

namespace detail {

// Ratio ||H_g f||_S / ||f||_S for one candidate; zero candidates rate 0.
inline double rayleigh_ratio(const PowerSeries& g, const SpaceParams& S, const PowerSeries& f,
                             std::size_t K_out) {
  const double denom = space_norm(f, S);
  if (!(denom > 0.0)) return 0.0;
  if (g.degree() < 1) return 0.0;
  const PowerSeries image = apply_hg(g, f, std::min(K_out, g.degree() - 1));
  return space_norm(image, S) / denom;
}

// Test family matched to the space: Hardy uses the f_N family, Dirichlet
// its alpha-shifted variant, Bergman the Dirichlet family at alpha + p.
inline FunctionSpec matched_test_function(const SpaceParams& S, unsigned N) {
  switch (S.kind) {
    case SpaceKind::Hardy:
      return test_function(TestFamily::hardy, N, S.p);
    case SpaceKind::DirichletType:
      return test_function(TestFamily::dirichlet, N, S.p, S.alpha);
    case SpaceKind::Bergman:
      return test_function(TestFamily::dirichlet, N, S.p, S.alpha + S.p);
  }
  throw domain_error("matched_test_function: unknown space kind");
}

}  // namespace detail

struct LowerBoundOptions {
  std::size_t f_degree = 256;    // truncation degree of candidate functions
  std::size_t K_out = 4096;      // cap on the image truncation
  unsigned ascent_rounds = 20;
  unsigned threads = 1;
};

/// Best Rayleigh quotient found over monomials, the matched f_N family,
/// `budget` seeded random damped polynomials, and coordinate ascent from the
/// best candidate.  Deterministic for a fixed seed at any thread count; a
/// lower bound for the operator norm, never a certificate.
inline double norm_lower_bound(const PowerSeries& g, const SpaceParams& S, std::size_t budget,
                               std::uint64_t seed, const LowerBoundOptions& opt = {}) {
  if (!S.hg_well_defined()) {
    throw domain_error("norm_lower_bound: operator is not well defined on " + S.label());
  }
  if (g.degree() < 1 || g.is_zero()) return 0.0;
  const std::size_t K_out = std::min(opt.K_out, g.degree() - 1);

  std::vector<PowerSeries> candidates;
  for (std::size_t m = 0; m <= std::min<std::size_t>(8, opt.f_degree); ++m) {
    candidates.push_back(PowerSeries::monomial(m));
  }
  for (std::size_t m = 16; m <= opt.f_degree; m *= 2) {
    candidates.push_back(PowerSeries::monomial(m));
  }
  for (unsigned N = 2; N <= std::max<std::size_t>(4, K_out / 4); N *= 2) {
    candidates.push_back(materialize(detail::matched_test_function(S, N), opt.f_degree));
  }
  const std::size_t family_count = candidates.size();
  candidates.resize(family_count + budget);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    TrialRng rng(seed, trial);
    const double damping = 0.5 * static_cast<double>(trial % 4);
    std::vector<cplx> c(opt.f_degree + 1);
    for (std::size_t k = 0; k <= opt.f_degree; ++k) {
      c[k] = rng.complex_gaussian() * std::pow(static_cast<double>(k + 1), -damping);
    }
    candidates[family_count + trial] = PowerSeries(std::move(c));
  }

  std::vector<double> ratios(candidates.size(), 0.0);
  parallel_for(candidates.size(), opt.threads, [&](std::size_t i) {
    ratios[i] = detail::rayleigh_ratio(g, S, candidates[i], K_out);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i] > ratios[best]) best = i;
  }
  double best_ratio = ratios[best];
  PowerSeries best_f = candidates[best];

  // Coordinate ascent with step halving; directions +-1, +-i per coefficient.
  double step = 0.5 * std::max(best_f.max_abs(), 1.0);
  const std::size_t stride = std::max<std::size_t>(1, best_f.size() / 24);
  for (unsigned round = 0; round < opt.ascent_rounds; ++round) {
    bool improved = false;
    for (std::size_t k = 0; k < best_f.size(); k += stride) {
      const cplx base = best_f.at(k);
      const cplx dirs[4] = {cplx(step, 0.0), cplx(-step, 0.0), cplx(0.0, step), cplx(0.0, -step)};
      std::vector<double> trial_ratios(4, 0.0);
      std::vector<PowerSeries> trials;
      trials.reserve(4);
      for (const cplx& d : dirs) trials.push_back(best_f.with_coefficient(k, base + d));
      parallel_for(4, opt.threads, [&](std::size_t i) {
        trial_ratios[i] = detail::rayleigh_ratio(g, S, trials[i], K_out);
      });
      for (std::size_t i = 0; i < 4; ++i) {
        if (trial_ratios[i] > best_ratio * (1.0 + 1e-12)) {
          best_ratio = trial_ratios[i];
          best_f = trials[i];
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best_ratio;
}

struct CompactnessResult {
  std::vector<unsigned> N_list;
  std::vector<double> values;  // ||H_g(f_N)||_S
  double slope = 0.0;          // log-log decay exponent
  double decay_factor = 0.0;   // values.front() / values.back()
  bool compact_candidate = false;
  bool degenerate = false;     // all image norms vanished
};

/// Image norms of the matched test family over an N ladder plus a fitted
/// log-log slope.  compact-candidate when the sequence decays by at least
/// `decay_threshold` from the smallest to the largest N.
inline CompactnessResult compactness_probe(const PowerSeries& g, const SpaceParams& S,
                                           std::vector<unsigned> N_list, std::size_t K_out = 0,
                                           double decay_threshold = 2.0, unsigned threads = 1) {
  if (!S.hg_well_defined()) {
    throw domain_error("compactness_probe: operator is not well defined on " + S.label());
  }
  if (N_list.empty()) throw domain_error("compactness_probe: empty N ladder");
  std::sort(N_list.begin(), N_list.end());
  CompactnessResult res;
  res.N_list = N_list;
  res.values.assign(N_list.size(), 0.0);
  if (K_out == 0) K_out = 8 * static_cast<std::size_t>(N_list.back());
  const std::size_t K_eff = g.degree() >= 1 ? std::min(K_out, g.degree() - 1) : 0;

  parallel_for(N_list.size(), threads, [&](std::size_t i) {
    if (g.degree() < 1 || g.is_zero()) return;
    const FunctionSpec f = detail::matched_test_function(S, N_list[i]);
    const PowerSeries image = apply_hg(g, f, K_eff);
    res.values[i] = space_norm(image, S);
  });

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    if (res.values[i] > 0.0) {
      xs.push_back(std::log(static_cast<double>(res.N_list[i])));
      ys.push_back(std::log(res.values[i]));
    }
  }
  res.degenerate = xs.empty();
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double n = static_cast<double>(xs.size());
    res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  if (res.degenerate) {
    res.compact_candidate = true;
  } else {
    res.decay_factor = res.values.front() / res.values.back();
    res.compact_candidate = res.decay_factor >= decay_threshold;
  }
  return res;
}

enum class ProbeVerdict { bounded_candidate, unbounded_candidate, compact_candidate, inconclusive };

inline std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::bounded_candidate:
      return "bounded-candidate";
    case ProbeVerdict::unbounded_candidate:
      return "unbounded-candidate";
    case ProbeVerdict::compact_candidate:
      return "compact-candidate";
    case ProbeVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct ProbeConfig {
  std::vector<std::size_t> truncation_ladder{128, 512, 2048};
  std::vector<unsigned> compact_N{16, 64, 256, 1024};
  std::size_t budget = 32;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double tau = 0.1;
  double decay_threshold = 2.0;
  double growth_threshold = 1.25;  // lower-bound growth flagged as unbounded
  int profile_n_min = 4;
  int profile_n_max = 10;
  std::size_t compact_K_out = 0;  // 0: 8 * max(compact_N)
  std::size_t f_degree = 0;       // 0: a quarter of each truncation rung
  bool compact_only = false;
  std::function<void(const std::string&)> progress;  // phase notes (stderr in the CLI)
};

struct ProbeReport {
  std::string operator_desc;
  SpaceParams space;
  ProbeConfig config;
  LipschitzProfile profile;
  bool profile_ran = false;
  std::vector<std::size_t> truncations;
  std::vector<double> lower_bounds;
  double lower_bound_growth = 0.0;
  CompactnessResult compactness;
  bool compactness_ran = false;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
  std::string prediction;        // theorem-side expectation, or "open"
  bool prediction_open = false;  // Hardy p > 2 sufficiency question
  bool agreement = true;
  double wall_clock_seconds = 0.0;  // excluded from determinism comparisons
};

/// End-to-end experiment: dyadic growth profile of g, lower-bound ladder
/// across truncations, compactness probe, and a trend verdict cross-checked
/// against what the boundedness theory predicts for this g and space.
/// Disagreements are flagged, never corrected.
inline ProbeReport verdict_report(const FunctionSpec& g_spec, const SpaceParams& S,
                                  const ProbeConfig& config) {
  if (!S.hg_well_defined()) {
    throw domain_error("verdict_report: operator is not well defined on " + S.label());
  }
  const auto t_start = std::chrono::steady_clock::now();
  ProbeReport report;
  report.operator_desc = describe(g_spec);
  report.space = S;
  report.config = config;

  const auto note = [&config](const std::string& msg) {
    if (config.progress) config.progress(msg);
  };

  const std::size_t profile_degree = std::size_t{2} << config.profile_n_max;
  std::size_t max_degree = profile_degree;
  for (const std::size_t d : config.truncation_ladder) max_degree = std::max(max_degree, d);
  const PowerSeries g_full = materialize(g_spec, max_degree);

  note("dyadic growth profile");
  report.profile = lipschitz_profile(g_full, S.p, config.profile_n_min, config.profile_n_max,
                                     config.tau);
  report.profile_ran = true;

  if (!config.compact_only) {
    for (const std::size_t d : config.truncation_ladder) {
      note("lower bound at truncation " + std::to_string(d));
      LowerBoundOptions opt;
      opt.f_degree = config.f_degree ? std::min(config.f_degree, d)
                                     : std::max<std::size_t>(16, d / 4);
      opt.K_out = d;
      opt.threads = config.threads;
      const PowerSeries g_trunc = g_full.truncated(d);
      report.truncations.push_back(d);
      report.lower_bounds.push_back(norm_lower_bound(g_trunc, S, config.budget, config.seed, opt));
    }
    if (!report.lower_bounds.empty() && report.lower_bounds.front() > 0.0) {
      report.lower_bound_growth = report.lower_bounds.back() / report.lower_bounds.front();
    }
  }

  note("compactness probe");
  report.compactness = compactness_probe(g_full, S, config.compact_N, config.compact_K_out,
                                         config.decay_threshold, config.threads);
  report.compactness_ran = true;

  const bool grew = report.lower_bound_growth > config.growth_threshold;
  if (!config.compact_only && grew) {
    report.verdict = ProbeVerdict::unbounded_candidate;
  } else if (report.compactness.compact_candidate) {
    report.verdict = ProbeVerdict::compact_candidate;
  } else {
    report.verdict = ProbeVerdict::bounded_candidate;
  }

  // Theorem-side prediction.  The critical class is Lambda(p, 1/p) in every
  // space; for Hardy with p > 2 its sufficiency is the paper's open
  // conjecture, so the prediction is labeled OPEN instead of decided.
  // Cauchy transforms and bounded k b_k classes get their unconditional
  // boundedness routes.
  const bool in_class_K = std::holds_alternative<CauchyTransform>(g_spec) ||
                          std::holds_alternative<LogKernel>(g_spec);
  const bool in_class_C =
      in_class_K || (std::holds_alternative<CoefficientRule>(g_spec) &&
                     std::get<CoefficientRule>(g_spec).exponent >= 1.0);
  const bool class_route =
      in_class_K || (in_class_C && S.kind == SpaceKind::Hardy && S.p >= 2.0);
  const bool growth_ok = report.profile.within_growth;
  if (S.kind == SpaceKind::Hardy && S.p > 2.0 && growth_ok && !class_route) {
    report.prediction = "open";
    report.prediction_open = true;
  } else if (growth_ok || class_route) {
    report.prediction = "bounded";
  } else {
    report.prediction = "unbounded";
  }

  if (report.prediction_open) {
    report.agreement = true;  // nothing to check against
  } else if (report.prediction == "bounded") {
    report.agreement = report.verdict != ProbeVerdict::unbounded_candidate;
  } else {
    report.agreement = report.verdict == ProbeVerdict::unbounded_candidate;
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

}  // namespace hgops
