#include "ringgyro/statistics.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ringgyro/errors.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/parallel.hpp"
#include "ringgyro/random.hpp"

namespace ringgyro {

TrajectoryEnsemble TrajectoryEnsemble::sample(const ComplexField& mean_plus, const ComplexField& mean_minus,
                                              std::size_t count, std::uint64_t master_seed,
                                              unsigned threads) {
  if (count < 2) throw InsufficientStatistics("TrajectoryEnsemble: need at least two trajectories");
  require_same_grid(mean_plus, mean_minus, "TrajectoryEnsemble");
  TrajectoryEnsemble e;
  e.master_seed = master_seed;
  e.seeds.resize(count);
  std::vector<std::optional<TwoComponentField>> slots(count);
  parallel_for(count, threads, [&](std::size_t i) {
    e.seeds[i] = derive_seed(master_seed, i);
    GaussianStream rng(e.seeds[i]);
    auto p = sample_wigner_coherent(mean_plus, rng);
    auto m = sample_wigner_coherent(mean_minus, rng);
    slots[i].emplace(std::move(p), std::move(m));
  });
  e.trajectories.reserve(count);
  for (auto& s : slots) e.trajectories.push_back(std::move(*s));
  return e;
}

NumberDifferenceStats summarize(std::span<const double> samples, double ordering_correction) {
  const std::size_t n = samples.size();
  if (n < 2) {
    std::ostringstream msg;
    msg << "summarize: need at least two samples, got " << n;
    throw InsufficientStatistics(msg.str());
  }
  CompensatedSum s1;
  for (double v : samples) s1.add(v);
  const double nd = static_cast<double>(n);
  const double mean = s1.value() / nd;
  CompensatedSum s2, s4;
  for (double v : samples) {
    const double d = (v - mean) * (v - mean);
    s2.add(d);
    s4.add(d * d);
  }
  NumberDifferenceStats st;
  st.count = n;
  st.mean = mean;
  st.variance = s2.value() / (nd - 1.0);
  st.mean_stderr = std::sqrt(st.variance / nd);
  const double m4 = s4.value() / nd;
  const double var_of_var = (m4 - (nd - 3.0) / (nd - 1.0) * st.variance * st.variance) / nd;
  st.variance_stderr = std::sqrt(std::max(var_of_var, 0.0));
  st.ordering_correction = ordering_correction;
  return st;
}

double number_difference(const TwoComponentField& field) {
  return norm_particles(field.plus) - norm_particles(field.minus);
}

double split_number_difference(const ComplexField& field, double partition) {
  const Grid1D& g = field.grid();
  CompensatedSum left, right;
  std::size_t m_left = 0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double rho = std::norm(field[i]);
    if (g.x(i) < partition) {
      left.add(rho);
      ++m_left;
    } else {
      right.add(rho);
    }
  }
  const double dx = g.spacing();
  const double m_right = static_cast<double>(field.size() - m_left);
  return (left.value() * dx - 0.5 * static_cast<double>(m_left)) - (right.value() * dx - 0.5 * m_right);
}

double two_component_ordering_correction(const Grid1D& grid) noexcept {
  return 0.5 * static_cast<double>(grid.size());
}

double split_ordering_correction(const Grid1D& grid) noexcept {
  return 0.25 * static_cast<double>(grid.size());
}

NumberDifferenceStats number_difference_stats(const TrajectoryEnsemble& ensemble) {
  if (ensemble.count() < 2) throw InsufficientStatistics("number_difference_stats: need at least two trajectories");
  std::vector<double> nd;
  nd.reserve(ensemble.count());
  for (const auto& t : ensemble.trajectories) nd.push_back(number_difference(t));
  return summarize(nd, two_component_ordering_correction(ensemble.trajectories.front().grid()));
}

SensitivityEstimate sensitivity(const OmegaScan& scan) {
  if (!(scan.d_omega > 0.0)) throw ContractViolation("sensitivity: d_omega must be positive");
  SensitivityEstimate r;
  r.at_zero = summarize(scan.zero, scan.ordering_correction);
  const double scale = 1.0 / (2.0 * scan.d_omega);
  if (scan.plus.size() == scan.minus.size()) {
    std::vector<double> diff(scan.plus.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (scan.plus[i] - scan.minus[i]) * scale;
    const auto d = summarize(diff);
    r.slope = d.mean;
    r.slope_stderr = d.mean_stderr;
  } else {
    const auto p = summarize(scan.plus);
    const auto m = summarize(scan.minus);
    r.slope = (p.mean - m.mean) * scale;
    r.slope_stderr = std::hypot(p.mean_stderr, m.mean_stderr) * scale;
  }
  const double var = std::max(r.at_zero.quantum_variance(), 0.0);
  if (std::abs(r.slope) <= 2.0 * r.slope_stderr || r.slope == 0.0) {
    r.infinite = true;
    r.delta_omega = std::numeric_limits<double>::infinity();
    r.delta_omega_stderr = std::numeric_limits<double>::infinity();
    return r;
  }
  r.delta_omega = std::sqrt(var) / std::abs(r.slope);
  const double rel_var = var > 0.0 ? r.at_zero.variance_stderr / (2.0 * var) : 0.0;
  const double rel_slope = r.slope_stderr / std::abs(r.slope);
  r.delta_omega_stderr = r.delta_omega * std::hypot(rel_var, rel_slope);
  return r;
}

}  // namespace ringgyro
