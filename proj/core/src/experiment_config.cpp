#include "ringgyro/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ringgyro/csv.hpp"
#include "ringgyro/errors.hpp"

namespace ringgyro {

namespace {

constexpr std::pair<Experiment, const char*> kExperiments[] = {
    {Experiment::barrier_fisher, "barrier_fisher"},   {Experiment::ring_sweep, "ring_sweep"},
    {Experiment::pretwist_sweep, "pretwist_sweep"},   {Experiment::two_mode_curves, "two_mode_curves"},
    {Experiment::quasiprob, "quasiprob"},             {Experiment::theta_opt, "theta_opt"},
    {Experiment::barrier_tune, "barrier_tune"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end || !std::isfinite(x)) throw ConfigError("expected a finite number, got '" + v + "'");
  return x;
}

template <typename T>
T to_integer(const std::string& v) {
  T x{};
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end) throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  if (v.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(v);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError("range must read start:stop:count, got '" + v + "'");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const auto n = to_integer<std::size_t>(parts[2]);
    if (n < 1) throw ConfigError("range count must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
  }
  std::stringstream ss(v);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(trim(p)));
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

template <typename E, std::size_t N>
E to_enum(const std::string& v, const std::pair<E, const char*> (&table)[N]) {
  for (const auto& [e, name] : table) {
    if (v == name) return e;
  }
  std::string allowed;
  for (const auto& [e, name] : table) allowed += std::string(allowed.empty() ? "" : ", ") + name;
  throw ConfigError("expected one of {" + allowed + "}, got '" + v + "'");
}

template <typename E, std::size_t N>
std::string enum_text(E e, const std::pair<E, const char*> (&table)[N]) {
  for (const auto& [x, name] : table) {
    if (x == e) return name;
  }
  return "?";
}

constexpr std::pair<Scheme, const char*> kSchemes[] = {
    {Scheme::single_loop, "single_loop"}, {Scheme::pretwist, "pretwist"},
    {Scheme::single_component_barrier, "single_component_barrier"}};
constexpr std::pair<PacketShape, const char*> kShapes[] = {
    {PacketShape::soliton, "soliton"}, {PacketShape::gaussian, "gaussian"}, {PacketShape::sech, "sech"}};
constexpr std::pair<ThetaConvention, const char*> kConventions[] = {
    {ThetaConvention::spin, "spin"}, {ThetaConvention::field, "field"}};
constexpr std::pair<ThetaPolicy, const char*> kPolicies[] = {
    {ThetaPolicy::fixed, "fixed"}, {ThetaPolicy::theta_chi, "theta_chi"}, {ThetaPolicy::optimize, "optimize"}};
constexpr std::pair<CollisionSelection, const char*> kCollisions[] = {
    {CollisionSelection::noninteracting_gaussian, "noninteracting_gaussian"},
    {CollisionSelection::attractive_soliton, "attractive_soliton"},
    {CollisionSelection::both, "both"}};

struct Key {
  const char* name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define RG_DOUBLE(field) \
  Key{#field, [](ExperimentConfig& c, const std::string& v) { c.field = to_double(v); }, \
      [](const ExperimentConfig& c) { return format_double(c.field); }}
#define RG_INT(field, T) \
  Key{#field, [](ExperimentConfig& c, const std::string& v) { c.field = to_integer<T>(v); }, \
      [](const ExperimentConfig& c) { return std::to_string(c.field); }}
#define RG_BOOL(field) \
  Key{#field, [](ExperimentConfig& c, const std::string& v) { c.field = to_bool(v); }, \
      [](const ExperimentConfig& c) { return std::string(c.field ? "true" : "false"); }}
#define RG_LIST(field) \
  Key{#field, [](ExperimentConfig& c, const std::string& v) { c.field = to_list(v); }, \
      [](const ExperimentConfig& c) { return list_text(c.field); }}
#define RG_ENUM(field, table) \
  Key{#field, [](ExperimentConfig& c, const std::string& v) { c.field = to_enum(v, table); }, \
      [](const ExperimentConfig& c) { return enum_text(c.field, table); }}

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      Key{"experiment", [](ExperimentConfig& c, const std::string& v) { c.experiment = parse_experiment(v); },
          [](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); }},
      Key{"master_seed",
          [](ExperimentConfig& c, const std::string& v) { c.master_seed = to_integer<std::uint64_t>(v); },
          [](const ExperimentConfig& c) { return c.master_seed ? std::to_string(*c.master_seed) : std::string(); }},
      Key{"out_dir", [](ExperimentConfig& c, const std::string& v) { c.out_dir = v; },
          [](const ExperimentConfig& c) { return c.out_dir; }},
      RG_INT(threads, unsigned),
      RG_DOUBLE(n_total),
      RG_INT(winding, long),
      RG_DOUBLE(radius),
      RG_LIST(g0_list),
      RG_ENUM(scheme, kSchemes),
      RG_ENUM(shape, kShapes),
      RG_DOUBLE(packet_width),
      RG_INT(n_points, std::size_t),
      RG_INT(barrier_n_points, std::size_t),
      RG_INT(steps_per_loop, std::size_t),
      RG_INT(n_traj, std::size_t),
      RG_DOUBLE(phi_omega_step),
      RG_BOOL(common_random_numbers),
      RG_ENUM(theta_convention, kConventions),
      RG_DOUBLE(launch_offset),
      RG_DOUBLE(barrier_bias_phase),
      RG_ENUM(theta_policy, kPolicies),
      RG_DOUBLE(theta),
      RG_INT(theta_grid_points, std::size_t),
      RG_DOUBLE(theta_tolerance),
      RG_DOUBLE(sigma),
      RG_DOUBLE(k),
      RG_DOUBLE(barrier_width),
      RG_DOUBLE(barrier_height),
      RG_DOUBLE(x0),
      RG_DOUBLE(line_length),
      RG_INT(line_points, std::size_t),
      RG_DOUBLE(line_dt),
      RG_DOUBLE(g0n),
      RG_DOUBLE(t_final),
      RG_INT(n_samples, std::size_t),
      RG_DOUBLE(dphi),
      RG_INT(phi_points, std::size_t),
      RG_ENUM(collisions, kCollisions),
      RG_LIST(chi_t_list),
      RG_INT(two_mode_traj, std::size_t),
  };
  return keys;
}

#undef RG_DOUBLE
#undef RG_INT
#undef RG_BOOL
#undef RG_LIST
#undef RG_ENUM

}  // namespace

const char* to_string(Experiment e) noexcept {
  for (const auto& [x, name] : kExperiments) {
    if (x == e) return name;
  }
  return "?";
}

const char* to_string(ThetaPolicy p) noexcept {
  for (const auto& [x, name] : kPolicies) {
    if (x == p) return name;
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  try {
    return to_enum(std::string(name), kExperiments);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("experiment: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::quasiprob:
      c.n_total = 100.0;
      c.chi_t_list = {-0.03, -0.06};
      c.two_mode_traj = 2000;
      break;
    case Experiment::two_mode_curves:
      c.chi_t_list = to_list("0:-0.0076:39");
      break;
    case Experiment::ring_sweep:
    case Experiment::pretwist_sweep:
      c.g0_list = to_list("0:-0.0088:9");
      break;
    case Experiment::theta_opt:
      c.g0_list = {-0.0055};
      c.theta_policy = ThetaPolicy::optimize;
      break;
    default:
      break;
  }
  return c;
}

RingConfig ExperimentConfig::ring(double g0) const {
  RingConfig r;
  r.n_points = scheme == Scheme::single_component_barrier ? barrier_n_points : n_points;
  r.radius = radius;
  r.n_total = n_total;
  r.winding = winding;
  r.g0 = g0;
  r.shape = shape;
  r.packet_width = packet_width;
  r.n_traj = n_traj;
  r.master_seed = master_seed.value_or(0);
  r.steps_per_loop = steps_per_loop;
  r.phi_omega_step = phi_omega_step;
  r.threads = threads;
  r.common_random_numbers = common_random_numbers;
  r.theta_convention = theta_convention;
  r.barrier_width = barrier_width;
  r.barrier_height = barrier_height;
  r.launch_offset = launch_offset;
  r.barrier_bias_phase = barrier_bias_phase;
  return r;
}

CollisionConfig ExperimentConfig::collision(CollisionCase kind) const {
  CollisionConfig c;
  c.kind = kind;
  c.n_points = line_points;
  c.length = line_length;
  c.x0 = x0;
  c.sigma = sigma;
  c.k = k;
  c.barrier_width = barrier_width;
  c.barrier_height = barrier_height;
  c.g0n = g0n;
  c.dt = line_dt;
  c.t_final = t_final;
  c.n_samples = n_samples;
  c.dphi = dphi;
  return c;
}

void ExperimentConfig::validate() const {
  if (!master_seed) throw ConfigError("master_seed: required (set it in the config or pass --seed)");
  if (!(n_total > 0.0)) throw ConfigError("n_total: must be positive");
  if (!(radius > 0.0)) throw ConfigError("radius: must be positive");
  if (winding < 1) throw ConfigError("winding: must be a positive integer");
  if (!(theta_tolerance > 0.0)) throw ConfigError("theta_tolerance: must be positive");
  if (theta_grid_points < 3) throw ConfigError("theta_grid_points: need at least 3");
  if (phi_points < 2) throw ConfigError("phi_points: need at least 2");
  if (two_mode_traj < 2) throw ConfigError("two_mode_traj: need at least 2");
  switch (experiment) {
    case Experiment::ring_sweep:
    case Experiment::pretwist_sweep:
    case Experiment::theta_opt:
      if (g0_list.empty()) throw ConfigError("g0_list: must not be empty");
      if (experiment != Experiment::ring_sweep && scheme == Scheme::single_component_barrier) {
        throw ConfigError("scheme: the barrier scheme has no pre-twist variant");
      }
      for (double g : g0_list) ring(g).validate();
      break;
    case Experiment::two_mode_curves:
    case Experiment::quasiprob:
      if (chi_t_list.empty()) throw ConfigError("chi_t_list: must not be empty");
      break;
    case Experiment::barrier_fisher:
      collision(CollisionCase::noninteracting_gaussian).validate();
      break;
    case Experiment::barrier_tune:
      if (!(k > 0.0)) throw ConfigError("k: must be positive");
      if (!(barrier_width > 0.0)) throw ConfigError("barrier_width: must be positive");
      if (!(sigma > 0.0)) throw ConfigError("sigma: must be positive");
      break;
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& key : registry()) out.emplace_back(key.name, key.get(*this));
  return out;
}

std::string ExperimentConfig::echo_text() const {
  std::ostringstream s;
  for (const auto& [k, v] : echo()) {
    if (k == "master_seed" && v.empty()) continue;
    s << k << " = " << v << '\n';
  }
  return s.str();
}

ExperimentConfig parse_experiment_config(std::istream& in, const ExperimentConfig& base, std::string_view source) {
  ExperimentConfig c = base;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto& keys = registry();
    const auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return key == k.name; });
    if (it == keys.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": " + key + ": set twice");
    try {
      it->set(c, value);
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind(key + ":", 0) == 0) throw ConfigError(where + ": " + msg);
      throw ConfigError(where + ": " + key + ": " + msg);
    }
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path, Experiment expected) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig c = parse_experiment_config(in, ExperimentConfig::defaults(expected), path);
  if (c.experiment != expected) {
    throw ConfigError(std::string("experiment: file asks for ") + to_string(c.experiment) + " but the command is " +
                      to_string(expected));
  }
  return c;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> names;
  for (const auto& key : registry()) names.emplace_back(key.name);
  return names;
}

}  // namespace ringgyro
