#include "qherm/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"
#include "qherm/spectral.hpp"

namespace qherm {

Trajectory propagate(const Operator& h, const StateVector& psi0,
                     const std::vector<double>& times) {
  require_operator(h, "Hamiltonian");
  if (psi0.size() != h.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "initial state does not match Hamiltonian dimension");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::InvalidOperator, "times must be increasing");
    }
  }
  const SpectralData s = eigendecompose(h);
  const StateVector coeff = s.left.adjoint() * psi0;
  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  const Complex minus_i(0.0, -1.0);
  for (double t : times) {
    const StateVector phase =
        (minus_i * t * s.eigenvalues.array()).exp().matrix();
    traj.states.push_back(s.right * phase.cwiseProduct(coeff));
  }
  return traj;
}

std::vector<double> uniform_times(double t_max, int count) {
  if (count < 2 || !(t_max > 0.0)) {
    throw Error(ErrorCode::InvalidOperator,
                "need t_max > 0 and at least two samples");
  }
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] = t_max * i / (count - 1);
  }
  return t;
}

std::vector<TraceSample> norm_traces(const Trajectory& traj,
                                     const std::vector<NamedMetric>& metrics) {
  std::vector<Operator> accepted;
  accepted.reserve(metrics.size());
  for (const auto& [name, m] : metrics) accepted.push_back(accept_hermitian(m));

  std::vector<TraceSample> out;
  out.reserve(traj.times.size() * metrics.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      const Complex v = inner(accepted[k], traj.states[i], traj.states[i]);
      out.push_back({traj.times[i], metrics[k].first, v.real(), v.imag()});
    }
  }
  return out;
}

std::vector<double> series(const std::vector<TraceSample>& traces,
                           const std::string& name) {
  std::vector<double> v;
  for (const auto& s : traces) {
    if (s.name == name) v.push_back(s.value);
  }
  return v;
}

double relative_drift(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double drift = 0.0;
  for (double v : values) drift = std::max(drift, std::abs(v - values.front()));
  const double ref = std::abs(values.front());
  return ref > 0.0 ? drift / ref : drift;
}

double max_min_ratio(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi / *lo;
}

double log_growth_rate(const std::vector<double>& times,
                       const std::vector<double>& values, double t_from) {
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_from) continue;
    const double y = std::log(values[i]);
    n += 1;
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace qherm
