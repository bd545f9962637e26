#include "bootlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "bootlab/dynamics.hpp"
#include "bootlab/error.hpp"
#include "bootlab/structure.hpp"

namespace bootlab {
namespace {

std::seed_seq make_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return std::seed_seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                       static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw DomainError("at least one trial is required");
}

// Runs fn(trial) for every trial on a pool of workers; results are stored
// per trial so the outcome does not depend on scheduling.
template <class T, class F>
std::vector<T> run_trials(std::uint64_t trials, int threads, F&& fn) {
  std::vector<T> out(trials);
  const auto workers = static_cast<std::uint64_t>(std::max(1, worker_count(threads)));
  const auto n = std::min(workers, trials);
  std::atomic<std::uint64_t> next{0};
  const auto work = [&]() {
    for (std::uint64_t t = next++; t < trials; t = next++) out[t] = fn(t);
  };
  if (n <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(n - 1);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto guarded = [&]() {
    try {
      work();
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
      next = trials;
    }
  };
  for (std::uint64_t i = 1; i < n; ++i) pool.emplace_back(guarded);
  guarded();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

TrialReport make_report(const std::vector<std::uint8_t>& hits, std::uint64_t master_seed, double p) {
  TrialReport r;
  r.trials = hits.size();
  r.successes = static_cast<std::uint64_t>(std::count(hits.begin(), hits.end(), std::uint8_t{1}));
  r.estimate = static_cast<double>(r.successes) / static_cast<double>(r.trials);
  r.half_width = 1.96 * std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(r.trials));
  r.master_seed = master_seed;
  r.p = p;
  return r;
}

}  // namespace

TrialStream::TrialStream(std::uint64_t master_seed, std::uint64_t trial) {
  auto seq = make_seed(master_seed, trial);
  engine_.seed(seq);
}

std::vector<double> trial_uniforms(const LatticeSpec& spec, std::uint64_t master_seed, std::uint64_t trial) {
  TrialStream stream(master_seed, trial);
  std::vector<double> u(spec.volume());
  for (auto& x : u) x = stream.uniform();
  return u;
}

CellSet threshold_set(const LatticeSpec& spec, const std::vector<double>& uniforms, double p) {
  check_p(p);
  if (uniforms.size() != spec.volume()) throw DomainError("one uniform per cell is required");
  CellSet s(spec.volume());
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    if (uniforms[i] < p) s.insert(i);
  }
  return s;
}

CellSet sample_set(const LatticeSpec& spec, double p, std::uint64_t master_seed, std::uint64_t trial) {
  return threshold_set(spec, trial_uniforms(spec, master_seed, trial), p);
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("BOOTLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

TrialReport percolation_prob(const LatticeSpec& spec, double p, std::uint64_t trials, std::uint64_t master_seed,
                             int threads) {
  check_p(p);
  check_trials(trials);
  const BootstrapProcess proc(spec);
  const auto hits = run_trials<std::uint8_t>(trials, threads, [&](std::uint64_t t) -> std::uint8_t {
    return proc.run_local(sample_set(spec, p, master_seed, t)).count == spec.volume();
  });
  return make_report(hits, master_seed, p);
}

PcEstimate pc_estimate(const LatticeSpec& spec, std::uint64_t trials_per_probe, double tol,
                       std::uint64_t master_seed, double target, int threads) {
  check_trials(trials_per_probe);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(target > 0.0 && target <= 1.0)) throw DomainError("target must lie in (0,1]");
  const BootstrapProcess proc(spec);
  const std::size_t volume = spec.volume();

  // Under common random numbers a trial percolates at p iff p exceeds its
  // own critical uniform, found by binary search over the sorted uniforms.
  const auto critical = run_trials<double>(trials_per_probe, threads, [&](std::uint64_t t) {
    const auto u = trial_uniforms(spec, master_seed, t);
    std::vector<std::size_t> order(volume);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
    std::size_t lo = 0;
    std::size_t hi = volume;
    while (lo + 1 < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      CellSet s(volume);
      for (std::size_t i = 0; i < mid; ++i) s.insert(order[i]);
      if (proc.run_local(s).count == volume) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return u[order[hi - 1]];
  });

  const auto estimate = [&](double p) {
    const auto hits = std::count_if(critical.begin(), critical.end(), [p](double c) { return c < p; });
    return static_cast<double>(hits) / static_cast<double>(critical.size());
  };

  PcEstimate out;
  out.trials_per_probe = trials_per_probe;
  out.target = target;
  out.master_seed = master_seed;
  while (out.p_hi - out.p_lo > tol) {
    const double mid = 0.5 * (out.p_lo + out.p_hi);
    ++out.probes;
    if (estimate(mid) >= target) {
      out.p_hi = mid;
    } else {
      out.p_lo = mid;
    }
  }
  out.p_mid = 0.5 * (out.p_lo + out.p_hi);
  return out;
}

TrialReport crossing_prob(const LatticeSpec& spec, const Rect& rect, double p, int axis, std::uint64_t trials,
                          std::uint64_t master_seed, int threads) {
  check_p(p);
  check_trials(trials);
  check_rect(spec, rect);
  if (axis < 1 || axis > spec.d()) throw DomainError("axis must be a long axis");
  const auto hits = run_trials<std::uint8_t>(trials, threads, [&](std::uint64_t t) -> std::uint8_t {
    return crossed(spec, rect, sample_set(spec, p, master_seed, t), axis);
  });
  return make_report(hits, master_seed, p);
}

TrialReport diam_event_prob(const LatticeSpec& spec, double p, int threshold_len, std::uint64_t trials,
                            std::uint64_t master_seed, int threads) {
  check_p(p);
  check_trials(trials);
  if (threshold_len < 1) throw DomainError("threshold length must be positive");
  const BootstrapProcess proc(spec);
  const auto hits = run_trials<std::uint8_t>(trials, threads, [&](std::uint64_t t) -> std::uint8_t {
    return diam(spec, proc.run(sample_set(spec, p, master_seed, t)).closure) >= threshold_len;
  });
  return make_report(hits, master_seed, p);
}

MeanReport gamma_expectation(const LatticeSpec& spec, double p, int m, const Cell& x, std::uint64_t trials,
                             std::uint64_t master_seed, int threads) {
  check_p(p);
  check_trials(trials);
  const auto sizes = run_trials<double>(trials, threads, [&](std::uint64_t t) {
    return static_cast<double>(gamma_set(spec, sample_set(spec, p, master_seed, t), m, x).size());
  });
  MeanReport r;
  r.trials = trials;
  r.master_seed = master_seed;
  r.p = p;
  const double n = static_cast<double>(trials);
  for (double s : sizes) r.mean += s;
  r.mean /= n;
  if (trials > 1) {
    double ss = 0.0;
    for (double s : sizes) ss += (s - r.mean) * (s - r.mean);
    r.half_width = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  }
  return r;
}

}  // namespace bootlab
