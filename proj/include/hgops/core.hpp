#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hgops {

using cplx = std::complex<double>;

/// Invalid parameter values (bad pole, inadmissible space, negative exponent).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an operation's stated precondition (e.g. series too short).
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme failed to reach its tolerance within its budget.
struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Pairwise summation: evaluation-order independent and O(log n) error growth.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.size() <= 16) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// x^q for x >= 0 where 4q is a small integer: sqrt chains instead of pow.
// Falls back to std::pow otherwise.  Used in hot loops over |f|^p samples.
struct PowKernel {
  double q;                // the exponent applied to |f|^2
  int m = -1;              // 4q when integral and small
  explicit PowKernel(double exponent) : q(exponent) {
    const double m4 = 4.0 * q;
    if (m4 > 0 && m4 < 64.5 && std::abs(m4 - std::round(m4)) < 1e-12) {
      m = static_cast<int>(std::round(m4));
    }
  }
  double operator()(double x) const {
    if (m < 0) return std::pow(x, q);
    switch (m) {
      case 2: return std::sqrt(x);                     // q = 1/2
      case 3: return std::sqrt(x * std::sqrt(x));      // q = 3/4
      case 4: return x;                                // q = 1
      case 6: return x * std::sqrt(x);                 // q = 3/2
      case 8: return x * x;                            // q = 2
      case 12: return x * x * x;                       // q = 3
      default: {
        const double r = std::sqrt(std::sqrt(x));
        double acc = 1.0;
        double base = r;
        int e = m;
        while (e > 0) {
          if (e & 1) acc *= base;
          base *= base;
          e >>= 1;
        }
        return acc;
      }
    }
  }
};

// splitmix64: the stream-splitting hash behind per-trial RNG derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic random stream for one trial.  Streams for distinct trial
/// indices are derived by counter-based splitting from a single seed, so a
/// batch of trials gives identical results at any worker count.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream) {
    state_ = seed ^ (0x5851f42d4c957f2dull * (stream + 1));
    // warm up so nearby streams decorrelate
    for (int i = 0; i < 4; ++i) detail::splitmix64(state_);
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  double uniform() {  // in [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  std::uint64_t state_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers.  Each index is
/// processed exactly once; callers write results into slot i, so the outcome
/// does not depend on scheduling.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> counter{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = counter.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hgops
