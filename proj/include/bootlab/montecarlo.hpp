#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bootlab/lattice.hpp"

namespace bootlab {

// Random stream of one trial, fully determined by (master_seed, trial).
class TrialStream {
 public:
  TrialStream(std::uint64_t master_seed, std::uint64_t trial);

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// One uniform per cell, in linear cell order.
std::vector<double> trial_uniforms(const LatticeSpec& spec, std::uint64_t master_seed, std::uint64_t trial);
// Cells with uniform < p; one array of uniforms couples every p.
CellSet threshold_set(const LatticeSpec& spec, const std::vector<double>& uniforms, double p);
CellSet sample_set(const LatticeSpec& spec, double p, std::uint64_t master_seed, std::uint64_t trial);

// Worker count: `requested` if positive, else the hardware concurrency,
// capped by BOOTLAB_THREADS when set.
int worker_count(int requested = 0);

struct TrialReport {
  double estimate = 0.0;
  double half_width = 0.0;  // 1.96 sqrt(est (1-est) / trials)
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t master_seed = 0;
  double p = 0.0;

  bool operator==(const TrialReport&) const = default;
};

struct MeanReport {
  double mean = 0.0;
  double half_width = 0.0;  // 1.96 sample sd / sqrt(trials)
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  double p = 0.0;

  bool operator==(const MeanReport&) const = default;
};

struct PcEstimate {
  double p_lo = 0.0;
  double p_hi = 1.0;
  double p_mid = 0.5;
  std::uint64_t trials_per_probe = 0;
  double target = 0.5;
  std::uint64_t master_seed = 0;
  int probes = 0;

  bool operator==(const PcEstimate&) const = default;
};

TrialReport percolation_prob(const LatticeSpec& spec, double p, std::uint64_t trials,
                             std::uint64_t master_seed, int threads = 0);

// Bisection on p with the same trial streams at every probe.
PcEstimate pc_estimate(const LatticeSpec& spec, std::uint64_t trials_per_probe, double tol,
                       std::uint64_t master_seed, double target = 0.5, int threads = 0);

TrialReport crossing_prob(const LatticeSpec& spec, const Rect& rect, double p, int axis,
                          std::uint64_t trials, std::uint64_t master_seed, int threads = 0);

TrialReport diam_event_prob(const LatticeSpec& spec, double p, int threshold_len, std::uint64_t trials,
                            std::uint64_t master_seed, int threads = 0);

MeanReport gamma_expectation(const LatticeSpec& spec, double p, int m, const Cell& x, std::uint64_t trials,
                             std::uint64_t master_seed, int threads = 0);

}  // namespace bootlab
