#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qherm/types.hpp"

namespace qherm {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// psi(t) = sum_n exp(-i lambda_n t) |psi_n><phi_n|psi0>, via the
/// biorthonormal eigendecomposition of H.
Trajectory propagate(const Operator& h, const StateVector& psi0,
                     const std::vector<double>& times);

/// `count` equally spaced samples on [0, t_max], endpoints included.
std::vector<double> uniform_times(double t_max, int count);

struct TraceSample {
  double time = 0.0;
  std::string name;
  double value = 0.0;  // Re <psi|M|psi>
  double imag = 0.0;   // Hermiticity diagnostic
};

using NamedMetric = std::pair<std::string, Operator>;

/// <psi(t)|M|psi(t)> for every sample and metric, time-major order.
/// Throws NonHermitianMetric if any M fails the Hermiticity check.
std::vector<TraceSample> norm_traces(const Trajectory& traj,
                                     const std::vector<NamedMetric>& metrics);

/// Values of one named series, in time order.
std::vector<double> series(const std::vector<TraceSample>& traces,
                           const std::string& name);

/// max_t |v(t) - v(0)| / |v(0)|.
double relative_drift(const std::vector<double>& values);

/// max / min of a positive series.
double max_min_ratio(const std::vector<double>& values);

/// Least-squares slope of log(value) against time over samples with
/// time >= t_from.
double log_growth_rate(const std::vector<double>& times,
                       const std::vector<double>& values, double t_from);

}  // namespace qherm
