#include "ringgyro/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "ringgyro/barrier_scattering.hpp"
#include "ringgyro/csv.hpp"
#include "ringgyro/errors.hpp"
#include "ringgyro/fock.hpp"
#include "ringgyro/interferometer.hpp"
#include "ringgyro/theta_search.hpp"
#include "ringgyro/two_mode.hpp"
#include "ringgyro/two_mode_tw.hpp"

#ifndef RINGGYRO_VERSION
#define RINGGYRO_VERSION "unknown"
#endif

namespace ringgyro {

namespace fs = std::filesystem;

namespace {

// Fock oracle is skipped above this atom number (the basis grows as N^2).
constexpr double kFockLimit = 1000.0;

class Recipe {
 public:
  Recipe(const ExperimentConfig& config, fs::path dir) : c_(config), dir_(std::move(dir)) {}

  std::ofstream open(const std::string& name) {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    summary_.outputs.push_back(p);
    return out;
  }

  void warn(const std::string& point, const std::vector<std::string>& ws) {
    for (const auto& w : ws) summary_.warnings.push_back(point + ": " + w);
  }

  void seed(const std::string& point) { summary_.seeds.emplace_back(point, *c_.master_seed); }

  RunSummary take() { return std::move(summary_); }

  const ExperimentConfig& c_;
  fs::path dir_;
  RunSummary summary_;
};

std::string g0_label(double g0) { return "g0=" + format_double(g0); }

CsvCell optional_cell(std::optional<double> v) {
  if (v) return *v;
  return std::string();
}

const std::vector<std::string> kSweepColumns = {"g0", "scheme", "theta", "delta_omega", "delta_omega_stderr",
                                                "n_traj", "d_omega_step", "seed", "chi_t", "delta_omega_two_mode"};

void sweep_row(CsvWriter& w, const ExperimentConfig& c, const SensitivityRecord& r) {
  const double chi_t = chi_t_from_g0(r.g0, c.n_total, c.winding, c.radius);
  w.row({r.g0, std::string(to_string(r.scheme)), optional_cell(r.theta), r.delta_omega, r.delta_omega_stderr,
         static_cast<std::uint64_t>(r.n_traj), r.d_omega, r.master_seed, chi_t,
         delta_omega_two_mode({c.n_total, chi_t}, c.radius).delta_omega});
}

std::optional<double> theta_chi_or_none(const TwoModeParams& p) {
  if (std::sin(p.chi_t) == 0.0) return std::nullopt;
  return theta_chi(p);
}

void run_barrier_tune(Recipe& r) {
  const auto& c = r.c_;
  const auto setup = line_scattering_setup(c.k, c.barrier_width, c.sigma, c.x0, c.line_length, c.line_points, c.line_dt);
  const BarrierTuning t = tune_barrier(setup);
  auto out = r.open("barrier_tune.csv");
  CsvWriter w(out, {"k", "barrier_width", "sigma", "V0", "reflection", "evaluations"});
  w.row({c.k, c.barrier_width, c.sigma, t.height, t.reflection, static_cast<std::int64_t>(t.evaluations)});
}

void run_barrier_fisher(Recipe& r) {
  const auto& c = r.c_;
  double height = c.barrier_height;
  if (!(height > 0.0)) {
    const auto setup =
        line_scattering_setup(c.k, c.barrier_width, c.sigma, c.x0, c.line_length, c.line_points, c.line_dt);
    height = tune_barrier(setup).height;
  }
  std::vector<CollisionCase> cases;
  if (c.collisions != CollisionSelection::attractive_soliton) cases.push_back(CollisionCase::noninteracting_gaussian);
  if (c.collisions != CollisionSelection::noninteracting_gaussian) cases.push_back(CollisionCase::attractive_soliton);

  for (CollisionCase kind : cases) {
    const std::string name = kind == CollisionCase::noninteracting_gaussian ? "noninteracting" : "soliton";
    CollisionConfig cc = c.collision(kind);
    cc.barrier_height = height;
    const CollisionSeries s = collision_fisher_series(cc);
    {
      auto out = r.open("fisher_" + name + ".csv");
      CsvWriter w(out, {"t", "F_Q", "F_C", "F_C_x", "p_left", "qcrb_violation", "qfi_growth"});
      w.comment("V0=" + format_double(s.barrier_height) + " phi=" + format_double(s.phi));
      for (const auto& f : s.samples) {
        w.row({f.t, f.qfi, f.cfi, f.cfi_density, f.p_left, static_cast<std::int64_t>(f.qcrb_violation),
               static_cast<std::int64_t>(f.qfi_growth)});
      }
    }
    std::vector<double> phis(c.phi_points);
    for (std::size_t i = 0; i < phis.size(); ++i) {
      phis[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(phis.size());
    }
    const auto curve = collision_population_curve(cc, height, phis);
    auto out = r.open("population_" + name + ".csv");
    CsvWriter w(out, {"phi", "p_left_minus_p_right"});
    for (std::size_t i = 0; i < phis.size(); ++i) w.row({phis[i], curve[i]});
  }
}

void run_ring_sweep(Recipe& r) {
  const auto& c = r.c_;
  auto out = r.open("sweep.csv");
  CsvWriter w(out, kSweepColumns);
  for (double g0 : c.g0_list) {
    const RingConfig rc = c.ring(g0);
    const SensitivityRecord rec =
        c.scheme == Scheme::single_component_barrier ? run_single_component_barrier_loop(rc) : run_single_loop(rc);
    sweep_row(w, c, rec);
    r.seed(g0_label(g0));
    r.warn(g0_label(g0), rec.warnings);
  }
}

void run_pretwist_sweep(Recipe& r) {
  const auto& c = r.c_;
  auto out = r.open("sweep.csv");
  CsvWriter w(out, kSweepColumns);
  for (double g0 : c.g0_list) {
    const RingConfig rc = c.ring(g0);
    const TwoModeParams p{c.n_total, chi_t_from_g0(g0, c.n_total, c.winding, c.radius)};
    const auto tc = theta_chi_or_none(p);
    SensitivityRecord rec;
    if (c.theta_policy == ThetaPolicy::optimize) {
      std::vector<double> cands{c.theta};
      if (tc) cands.push_back(*tc);
      const auto grid = theta_grid(c.theta_grid_points);
      rec = optimize_pretwist_theta(rc, grid, c.theta_tolerance, cands).record;
    } else {
      double theta = c.theta;
      if (c.theta_policy == ThetaPolicy::theta_chi) {
        if (tc) {
          theta = *tc;
        } else {
          theta = 0.0;
          r.warn(g0_label(g0), {"theta_chi undefined without twisting; using theta = 0 (double loop)"});
        }
      }
      rec = run_pretwist_loop(rc, theta);
    }
    sweep_row(w, c, rec);
    r.seed(g0_label(g0));
    r.warn(g0_label(g0), rec.warnings);
  }
}

void run_theta_opt(Recipe& r) {
  const auto& c = r.c_;
  auto sum_out = r.open("theta_opt.csv");
  CsvWriter sum(sum_out, {"g0", "chi_t", "theta_chi", "delta_omega_theta_chi", "theta_opt", "delta_omega_opt",
                          "delta_omega_opt_stderr", "multimodal", "evaluations"});
  const auto grid = theta_grid(c.theta_grid_points);
  for (std::size_t i = 0; i < c.g0_list.size(); ++i) {
    const double g0 = c.g0_list[i];
    const TwoModeParams p{c.n_total, chi_t_from_g0(g0, c.n_total, c.winding, c.radius)};
    const auto tc = theta_chi_or_none(p);
    std::vector<double> cands;
    if (tc) cands.push_back(*tc);
    const PretwistOptimum opt = optimize_pretwist_theta(c.ring(g0), grid, c.theta_tolerance, cands);

    std::optional<double> at_tc;
    auto scan_out = r.open("theta_scan_" + std::to_string(i) + ".csv");
    CsvWriter scan(scan_out, {"theta", "delta_omega", "delta_omega_stderr"});
    scan.comment(g0_label(g0));
    for (const auto& [theta, v] : opt.search.evaluations) {
      scan.row({theta, v.value, v.standard_error});
      if (tc && theta == *tc) at_tc = v.value;
    }
    sum.row({g0, p.chi_t, optional_cell(tc), optional_cell(at_tc), opt.search.theta, opt.record.delta_omega,
             opt.record.delta_omega_stderr, static_cast<std::int64_t>(opt.search.multimodal),
             static_cast<std::uint64_t>(opt.search.evaluations.size())});
    r.seed(g0_label(g0));
    r.warn(g0_label(g0), opt.record.warnings);
  }
}

void run_two_mode_curves(Recipe& r) {
  const auto& c = r.c_;
  auto out = r.open("two_mode_curves.csv");
  CsvWriter w(out, {"chi_t", "delta_omega_analytic", "g0", "theta_chi", "delta_omega_pretwist_tw",
                    "delta_omega_pretwist_tw_stderr", "theta_opt", "delta_omega_opt_tw", "delta_omega_opt_tw_stderr"});
  const auto grid = theta_grid(c.theta_grid_points);
  const std::uint64_t seed = *c.master_seed;
  for (double chi_t : c.chi_t_list) {
    const TwoModeParams p{c.n_total, chi_t};
    const double g0 = chi_t == 0.0 ? 0.0 : g0_from_chi_t(chi_t, c.n_total, c.winding, c.radius);
    const auto tc = theta_chi_or_none(p);
    const double theta_fixed = tc.value_or(0.0);
    const SensitivityEstimate pre =
        two_mode_tw_sensitivity(p, theta_fixed, c.two_mode_traj, seed, c.phi_omega_step, c.radius, c.threads);
    auto objective = [&](double theta) {
      const auto e = two_mode_tw_sensitivity(p, theta, c.two_mode_traj, seed, c.phi_omega_step, c.radius, c.threads);
      return ObjectiveValue{e.delta_omega, e.delta_omega_stderr};
    };
    const std::vector<double> cands{theta_fixed};
    const ThetaSearchResult opt = optimize_theta(objective, grid, c.theta_tolerance, cands);
    w.row({chi_t, delta_omega_two_mode(p, c.radius).delta_omega, g0, optional_cell(tc), pre.delta_omega,
           pre.delta_omega_stderr, opt.theta, opt.best.value, opt.best.standard_error});
    r.seed("chi_t=" + format_double(chi_t));
  }
}

void moment_rows(CsvWriter& w, double n_total, double chi_t, const std::string& stage,
                 const std::optional<SpinMoments>& analytic, const std::optional<SpinMoments>& oracle,
                 const SpinMomentsEstimate& tw) {
  struct Item {
    const char* name;
    double SpinMoments::*field;
    MomentEstimate SpinMomentsEstimate::*estimate;
  };
  static const Item items[] = {
      {"jz2", &SpinMoments::jz2, &SpinMomentsEstimate::jz2},
      {"jy2", &SpinMoments::jy2, &SpinMomentsEstimate::jy2},
      {"jzjy_sym", &SpinMoments::jzjy_sym, &SpinMomentsEstimate::jzjy_sym},
      {"jx_mean", &SpinMoments::jx_mean, &SpinMomentsEstimate::jx_mean},
      {"jy_var", &SpinMoments::jy_var, &SpinMomentsEstimate::jy_var},
      {"jz_var", &SpinMoments::jz_var, &SpinMomentsEstimate::jz_var},
  };
  for (const auto& it : items) {
    w.row({n_total, chi_t, stage + "." + it.name,
           analytic ? CsvCell((*analytic).*it.field) : CsvCell(std::string()),
           oracle ? CsvCell((*oracle).*it.field) : CsvCell(std::string()), (tw.*it.estimate).value,
           (tw.*it.estimate).standard_error});
  }
}

void run_quasiprob(Recipe& r) {
  const auto& c = r.c_;
  auto mom_out = r.open("moments.csv");
  CsvWriter mom(mom_out, {"N_t", "chiT", "quantity", "analytic", "oracle", "tw_estimate", "tw_stderr"});
  const bool use_oracle = c.n_total <= kFockLimit;
  if (!use_oracle) r.warn("quasiprob", {"N_t above the Fock oracle limit; oracle column left empty"});
  const char* stages[] = {"initial", "twist", "rotate", "revival"};

  for (double chi_t : c.chi_t_list) {
    const TwoModeParams p{c.n_total, chi_t};
    double theta = c.theta;
    if (c.theta_policy != ThetaPolicy::fixed) {
      const auto tc = theta_chi_or_none(p);
      if (!tc) throw ConfigError("chi_t_list: theta_chi is undefined at chi T = 0; use theta_policy = fixed");
      theta = *tc;
    }
    const TwoModeStage seq[] = {TwoModeStage::twist(chi_t), TwoModeStage::rotate(theta), TwoModeStage::twist(chi_t)};
    const TwoModeTwResult tw = two_mode_tw(p, seq, c.two_mode_traj, *c.master_seed, c.threads);

    {
      auto out = r.open("cloud_chiT_" + format_double(chi_t) + ".csv");
      CsvWriter w(out, {"trajectory_index", "stage", "Jx", "Jy", "Jz"});
      w.comment("theta=" + format_double(theta));
      for (std::size_t s = 0; s < tw.clouds.size(); ++s) {
        for (std::size_t i = 0; i < tw.clouds[s].size(); ++i) {
          const auto& pt = tw.clouds[s][i];
          w.row({static_cast<std::uint64_t>(i), std::string(stages[s]), pt.jx, pt.jy, pt.jz});
        }
      }
    }

    std::optional<SpinMoments> oracle[4];
    if (use_oracle) {
      const FockState2 s0 = audited_twisted_state({c.n_total, 0.0});
      const FockState2 s1 = s0.twist(chi_t);
      const FockState2 s2 = s1.rotate_x(theta);
      const FockState2 s3 = s2.twist(chi_t);
      oracle[0] = spin_moments(s0);
      oracle[1] = spin_moments(s1);
      oracle[2] = spin_moments(s2);
      oracle[3] = spin_moments(s3);
    }
    const std::optional<SpinMoments> analytic[4] = {assemble_spin_moments(coherent_moments({c.n_total, 0.0})),
                                                    assemble_spin_moments(coherent_moments(p)), std::nullopt,
                                                    std::nullopt};
    for (std::size_t s = 0; s < 4; ++s) moment_rows(mom, c.n_total, chi_t, stages[s], analytic[s], oracle[s], tw.moments[s]);
    r.seed("chi_t=" + format_double(chi_t));
  }
}

}  // namespace

const char* version() noexcept { return RINGGYRO_VERSION; }

fs::path resolve_out_dir(const std::string& cli_out, const ExperimentConfig& config) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("RINGGYRO_OUT_DIR"); env && *env) return env;
  if (!config.out_dir.empty()) return config.out_dir;
  return "out";
}

RunSummary run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  const auto t0 = std::chrono::steady_clock::now();
  Recipe r(config, out_dir);
  switch (config.experiment) {
    case Experiment::barrier_fisher: run_barrier_fisher(r); break;
    case Experiment::ring_sweep: run_ring_sweep(r); break;
    case Experiment::pretwist_sweep: run_pretwist_sweep(r); break;
    case Experiment::two_mode_curves: run_two_mode_curves(r); break;
    case Experiment::quasiprob: run_quasiprob(r); break;
    case Experiment::theta_opt: run_theta_opt(r); break;
    case Experiment::barrier_tune: run_barrier_tune(r); break;
  }
  RunSummary summary = r.take();
  summary.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::ordered_json m;
  m["experiment"] = to_string(config.experiment);
  m["version"] = version();
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config.echo()) cfg[k] = v;
  m["config"] = cfg;
  m["config_text"] = config.echo_text();
  m["wall_time_seconds"] = summary.wall_time_seconds;
  m["trajectory_seed_rule"] = "derive_seed(master_seed, trajectory_index, stream)";
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  for (const auto& [point, seed] : summary.seeds) seeds.push_back({{"point", point}, {"master_seed", seed}});
  m["seeds"] = seeds;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& p : summary.outputs) outputs.push_back(p.filename().string());
  m["outputs"] = outputs;
  m["warnings"] = summary.warnings;

  const fs::path manifest = out_dir / "manifest.json";
  std::ofstream out(manifest);
  if (!out) throw Error("cannot write " + manifest.string());
  out << m.dump(2) << '\n';
  summary.outputs.push_back(manifest);
  return summary;
}

}  // namespace ringgyro
