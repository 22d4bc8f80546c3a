#include "ringgyro/theta_search.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "ringgyro/errors.hpp"

namespace ringgyro {

std::vector<double> theta_grid(std::size_t n) {
  if (n < 3) throw ContractViolation("theta_grid: need at least three points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  }
  return g;
}

namespace {

double rank(const ObjectiveValue& v) {
  return std::isfinite(v.value) ? v.value : std::numeric_limits<double>::infinity();
}

}  // namespace

ThetaSearchResult optimize_theta(const std::function<ObjectiveValue(double)>& objective,
                                 std::span<const double> grid, double tolerance,
                                 std::span<const double> candidates) {
  if (grid.size() < 3) throw ContractViolation("optimize_theta: grid needs at least three points");
  if (!(tolerance > 0.0)) throw ContractViolation("optimize_theta: tolerance must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ContractViolation("optimize_theta: grid must be increasing");
  }
  if (grid.front() < -std::numbers::pi - 1e-12 || grid.back() >= std::numbers::pi) {
    throw ContractViolation("optimize_theta: grid must lie in [-pi, pi)");
  }

  ThetaSearchResult r;
  auto eval = [&](double theta) {
    const ObjectiveValue v = objective(theta);
    r.evaluations.emplace_back(theta, v);
    return v;
  };

  const std::size_t n = grid.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = rank(eval(grid[i]));
  for (double c : candidates) eval(c);

  std::size_t imin = 0;
  int minima = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] < values[imin]) imin = i;
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] < prev && values[i] < next) ++minima;
  }
  r.multimodal = minima > 1;
  if (r.multimodal) r.warnings.emplace_back("objective has several local minima on the theta grid");

  std::size_t seed = 0;
  for (std::size_t i = 1; i < r.evaluations.size(); ++i) {
    if (rank(r.evaluations[i].second) < rank(r.evaluations[seed].second)) seed = i;
  }

  if (std::isfinite(values[imin]) || std::isfinite(rank(r.evaluations[seed].second))) {
    const double period = 2.0 * std::numbers::pi;
    double a = imin > 0 ? grid[imin - 1] : grid[n - 1] - period;
    double b = imin + 1 < n ? grid[imin + 1] : grid[0] + period;
    if (seed >= n) {
      // A candidate beat the grid: refine in a narrow window around it.
      const double h = period / static_cast<double>(n) / 8.0;
      a = r.evaluations[seed].first - h;
      b = r.evaluations[seed].first + h;
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = rank(eval(c));
    double fd = rank(eval(d));
    while (b - a > tolerance) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = rank(eval(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = rank(eval(d));
      }
    }
  } else {
    r.warnings.emplace_back("objective is non-finite on the whole grid");
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < r.evaluations.size(); ++i) {
    if (rank(r.evaluations[i].second) < rank(r.evaluations[best].second)) best = i;
  }
  r.theta = std::remainder(r.evaluations[best].first, 2.0 * std::numbers::pi);
  if (r.theta >= std::numbers::pi) r.theta -= 2.0 * std::numbers::pi;
  r.best = r.evaluations[best].second;
  return r;
}

PretwistOptimum optimize_pretwist_theta(const RingConfig& config, std::span<const double> grid,
                                        double tolerance, std::span<const double> candidates) {
  std::map<double, SensitivityRecord> records;
  auto objective = [&](double theta) {
    SensitivityRecord rec = run_pretwist_loop(config, theta);
    ObjectiveValue v{rec.delta_omega, rec.delta_omega_stderr};
    records.insert_or_assign(theta, std::move(rec));
    return v;
  };
  PretwistOptimum out;
  out.search = optimize_theta(objective, grid, tolerance, candidates);
  const auto& evals = out.search.evaluations;
  std::size_t best = 0;
  for (std::size_t i = 1; i < evals.size(); ++i) {
    if (rank(evals[i].second) < rank(evals[best].second)) best = i;
  }
  out.record = records.at(evals[best].first);
  out.record.theta = out.search.theta;
  for (const auto& w : out.search.warnings) out.record.warnings.push_back(w);
  return out;
}

}  // namespace ringgyro
