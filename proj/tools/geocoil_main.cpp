// geocoil command-line harness: geodesic runs, slow-flow runs, stationary
// analysis, separatrix nets, the coefficient region map, and the
// exact-vs-slow comparison.  All numerics live behind the C API; this file
// only parses arguments/config, moves strings to disk, and maps status codes
// to exit statuses (0 ok, 2 config/usage, 3 marginal/degenerate input,
// 4 numerical failure).

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geocoil/geocoil.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMarginal = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(geocoil_status st) {
  switch (st) {
    case GEOCOIL_OK:
      return kExitOk;
    case GEOCOIL_ERR_INVALID_ARGUMENT:
    case GEOCOIL_ERR_VARIANT_MISMATCH:
    case GEOCOIL_ERR_IO:
      return kExitUsage;
    case GEOCOIL_ERR_MARGINAL:
    case GEOCOIL_ERR_DEGENERATE_EPSILON:
    case GEOCOIL_ERR_ALL_ZERO:
      return kExitMarginal;
    default:
      return kExitNumerical;
  }
}

/// Prints the library's failure message and converts the status to an exit code.
int report(geocoil_status st) {
  if (st != GEOCOIL_OK)
    std::fprintf(stderr, "error: %s (%s)\n", geocoil_last_error_message(),
                 geocoil_status_name(st));
  return exit_code_for(st);
}

/// RAII wrapper for C-API handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
  T** out() { return &p; }
  operator T*() const { return p; }
};

struct Str {
  char* p = nullptr;
  Str() = default;
  Str(const Str&) = delete;
  Str& operator=(const Str&) = delete;
  ~Str() { geocoil_string_free(p); }
  char** out() { return &p; }
};

using SurfaceH = Handle<geocoil_surface, geocoil_surface_free>;
using TrajectoryH = Handle<geocoil_trajectory, geocoil_trajectory_free>;
using PathH = Handle<geocoil_path, geocoil_path_free>;
using StationaryH = Handle<geocoil_stationary_set, geocoil_stationary_set_free>;
using GraphH = Handle<geocoil_graph, geocoil_graph_free>;
using RegionMapH = Handle<geocoil_region_map, geocoil_region_map_free>;
using ComparisonH = Handle<geocoil_comparison, geocoil_comparison_free>;

/// Thrown for malformed config/flags; always maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open config file: " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError("malformed config " + path + ": " + e.what());
  }
}

std::array<double, 3> as_triple(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number())
    throw UsageError("config field '" + key + "' must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

/// One value assembled from (highest priority first) a CLI flag, a config
/// field, or a built-in default.
std::array<double, 3> resolve_triple(const CLI::Option* opt,
                                     const std::vector<double>& flag,
                                     const json& cfg, const std::string& key) {
  if (opt->count() > 0) {
    if (flag.size() != 3) throw UsageError("--" + key + " needs 3 numbers");
    return {flag[0], flag[1], flag[2]};
  }
  if (cfg.contains(key)) return as_triple(cfg.at(key), key);
  throw UsageError("missing '" + key + "' (flag or config)");
}

double resolve_real(const CLI::Option* opt, double flag, const json& cfg,
                    const std::string& key, std::optional<double> fallback) {
  if (opt->count() > 0) return flag;
  if (cfg.contains(key)) {
    if (!cfg.at(key).is_number())
      throw UsageError("config field '" + key + "' must be a number");
    return cfg.at(key).get<double>();
  }
  if (fallback) return *fallback;
  throw UsageError("missing '" + key + "' (flag or config)");
}

void write_output(const std::string& dir, const std::string& name,
                  const char* content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << content;
  if (!f) throw UsageError("short write: " + path.string());
}

/// Builds a surface handle from --eps/--axes flags or the config's
/// surface/eps blocks.  Quartic and ellipsoid variants.
geocoil_status make_surface(const CLI::Option* eps_opt,
                            const std::vector<double>& eps_flag,
                            const CLI::Option* axes_opt,
                            const std::vector<double>& axes_flag, const json& cfg,
                            SurfaceH& out) {
  if (eps_opt->count() > 0 && axes_opt->count() > 0)
    throw UsageError("--eps and --axes are mutually exclusive");
  if (eps_opt->count() > 0) {
    if (eps_flag.size() != 3) throw UsageError("--eps needs 3 numbers");
    const double e[3] = {eps_flag[0], eps_flag[1], eps_flag[2]};
    return geocoil_surface_create_quartic(e, out.out());
  }
  if (axes_opt->count() > 0) {
    if (axes_flag.size() != 3) throw UsageError("--axes needs 3 numbers");
    const double a[3] = {axes_flag[0], axes_flag[1], axes_flag[2]};
    return geocoil_surface_create_ellipsoid(a, out.out());
  }
  if (cfg.contains("surface")) {
    const json& s = cfg.at("surface");
    if (!s.is_object() || !s.contains("type"))
      throw UsageError("config 'surface' must be an object with a 'type'");
    const std::string type = s.at("type").get<std::string>();
    if (type == "quartic") {
      const auto e = as_triple(s.at("eps"), "surface.eps");
      return geocoil_surface_create_quartic(e.data(), out.out());
    }
    if (type == "ellipsoid") {
      const auto a = as_triple(s.at("axes"), "surface.axes");
      return geocoil_surface_create_ellipsoid(a.data(), out.out());
    }
    throw UsageError("unknown surface type: " + type);
  }
  if (cfg.contains("eps")) {
    const auto e = as_triple(cfg.at("eps"), "eps");
    return geocoil_surface_create_quartic(e.data(), out.out());
  }
  throw UsageError("missing surface (--eps, --axes, or config)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "geocoil: geodesics on gently deformed spheres and their slow momentum "
      "flow"};
  app.require_subcommand(1);
  app.fallthrough();  // let the global flags appear after the subcommand

  std::string config_path;
  std::string out_dir = ".";
  double tol = 1e-10;
  app.add_option("--config", config_path, "JSON config file")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* tol_opt =
      app.add_option("--tol", tol, "integrator tolerance")->capture_default_str();

  // geodesic
  auto* cmd_geo = app.add_subcommand(
      "geodesic", "integrate the exact geodesic flow; writes trajectory.csv "
                  "and trajectory_stats.json");
  std::vector<double> geo_eps, geo_axes, geo_x0, geo_v0;
  double geo_t_end = 100.0;
  auto* geo_eps_opt = cmd_geo->add_option("--eps", geo_eps, "quartic coefficients");
  auto* geo_axes_opt = cmd_geo->add_option("--axes", geo_axes, "ellipsoid semi-axes");
  auto* geo_x0_opt = cmd_geo->add_option("--x0", geo_x0, "initial point");
  auto* geo_v0_opt = cmd_geo->add_option("--v0", geo_v0, "initial velocity");
  auto* geo_t_opt = cmd_geo->add_option("--t-end", geo_t_end, "time horizon");

  // averaged
  auto* cmd_avg = app.add_subcommand(
      "averaged", "integrate the slow momentum flow; writes averaged.csv and "
                  "averaged_stats.json");
  std::vector<double> avg_eps, avg_L0;
  double avg_t_end = 1000.0;
  auto* avg_eps_opt = cmd_avg->add_option("--eps", avg_eps, "quartic coefficients");
  auto* avg_L0_opt = cmd_avg->add_option("--L0", avg_L0, "initial momentum");
  auto* avg_t_opt = cmd_avg->add_option("--t-end", avg_t_end, "time horizon");

  // stationary
  auto* cmd_stat = app.add_subcommand(
      "stationary", "enumerate and classify stationary momenta; writes "
                    "stationary.json");
  std::vector<double> stat_eps;
  auto* stat_eps_opt =
      cmd_stat->add_option("eps", stat_eps, "quartic coefficients")->expected(3);

  // net
  auto* cmd_net = app.add_subcommand(
      "net", "trace the separatrix net on the projective quotient; writes "
             "net.json and net.svg");
  std::vector<double> net_eps;
  double net_L_norm = 1.0;
  auto* net_eps_opt =
      cmd_net->add_option("eps", net_eps, "quartic coefficients")->expected(3);
  auto* net_L_opt = cmd_net->add_option("--L-norm", net_L_norm, "momentum radius");

  // atlas
  auto* cmd_atlas = app.add_subcommand(
      "atlas", "classify the coefficient disk; writes region_map.csv and "
               "region_map.svg");
  int atlas_res = 128;
  auto* atlas_res_opt =
      cmd_atlas->add_option("resolution", atlas_res, "grid resolution (>= 16)");

  // compare
  auto* cmd_cmp = app.add_subcommand(
      "compare", "per-loop momentum directions of an exact geodesic vs the "
                 "slow flow; writes comparison.json and comparison.svg");
  std::vector<double> cmp_eps, cmp_x0, cmp_v0;
  double cmp_t_end = 200.0;
  auto* cmp_eps_opt = cmd_cmp->add_option("--eps", cmp_eps, "quartic coefficients");
  auto* cmp_x0_opt = cmd_cmp->add_option("--x0", cmp_x0, "initial point");
  auto* cmp_v0_opt = cmd_cmp->add_option("--v0", cmp_v0, "initial velocity");
  auto* cmp_t_opt = cmd_cmp->add_option("--t-end", cmp_t_end, "time horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!cfg.is_object()) throw UsageError("config root must be an object");
    const double tol_v =
        resolve_real(tol_opt, tol, cfg, "tol", 1e-10);

    if (cmd_geo->parsed()) {
      SurfaceH surface;
      if (auto st = make_surface(geo_eps_opt, geo_eps, geo_axes_opt, geo_axes,
                                 cfg, surface))
        return report(st);
      const auto x0 = resolve_triple(geo_x0_opt, geo_x0, cfg, "x0");
      const auto v0 = resolve_triple(geo_v0_opt, geo_v0, cfg, "v0");
      const double t_end = resolve_real(geo_t_opt, geo_t_end, cfg, "t_end", 100.0);
      TrajectoryH traj;
      if (auto st = geocoil_geodesic_run(surface, x0.data(), v0.data(), t_end,
                                         tol_v, traj.out()))
        return report(st);
      Str csv, stats;
      if (auto st = geocoil_trajectory_csv(traj, csv.out())) return report(st);
      if (auto st = geocoil_trajectory_stats_json(traj, stats.out()))
        return report(st);
      write_output(out_dir, "trajectory.csv", csv.p);
      write_output(out_dir, "trajectory_stats.json", stats.p);
      std::printf("samples=%zu\n", geocoil_trajectory_size(traj));
      return kExitOk;
    }

    if (cmd_avg->parsed()) {
      const auto eps = resolve_triple(avg_eps_opt, avg_eps, cfg, "eps");
      const auto L0 = resolve_triple(avg_L0_opt, avg_L0, cfg, "L0");
      const double t_end =
          resolve_real(avg_t_opt, avg_t_end, cfg, "t_end", 1000.0);
      PathH path;
      if (auto st = geocoil_averaged_run(eps.data(), L0.data(), t_end, tol_v,
                                         path.out()))
        return report(st);
      Str csv, stats;
      if (auto st = geocoil_path_csv(path, csv.out())) return report(st);
      if (auto st = geocoil_path_stats_json(path, stats.out())) return report(st);
      write_output(out_dir, "averaged.csv", csv.p);
      write_output(out_dir, "averaged_stats.json", stats.p);
      std::printf("samples=%zu\n", geocoil_path_size(path));
      return kExitOk;
    }

    if (cmd_stat->parsed()) {
      std::array<double, 3> eps{};
      if (stat_eps_opt->count() > 0)
        eps = {stat_eps[0], stat_eps[1], stat_eps[2]};
      else
        eps = resolve_triple(stat_eps_opt, stat_eps, cfg, "eps");
      StationaryH set;
      if (auto st = geocoil_stationary_enumerate(eps.data(), set.out()))
        return report(st);
      Str js;
      if (auto st = geocoil_stationary_json(set, js.out())) return report(st);
      write_output(out_dir, "stationary.json", js.p);
      std::printf("points=%zu\n", geocoil_stationary_count(set));
      return kExitOk;
    }

    if (cmd_net->parsed()) {
      std::array<double, 3> eps{};
      if (net_eps_opt->count() > 0)
        eps = {net_eps[0], net_eps[1], net_eps[2]};
      else
        eps = resolve_triple(net_eps_opt, net_eps, cfg, "eps");
      const double L_norm =
          resolve_real(net_L_opt, net_L_norm, cfg, "L_norm", 1.0);
      SurfaceH surface;
      if (auto st = geocoil_surface_create_quartic(eps.data(), surface.out()))
        return report(st);
      GraphH sphere_graph;
      if (auto st = geocoil_net_trace(surface, L_norm, tol_v, sphere_graph.out()))
        return report(st);
      GraphH quotient;
      if (auto st = geocoil_graph_quotient(sphere_graph, quotient.out()))
        return report(st);
      Str type_name;
      if (auto st = geocoil_net_verify(quotient, eps.data(), type_name.out()))
        return report(st);
      int foci = 0, saddles = 0;
      if (auto st = geocoil_graph_counts(quotient, &foci, &saddles, nullptr,
                                         nullptr))
        return report(st);
      Str js, svg;
      if (auto st = geocoil_graph_json(quotient, js.out())) return report(st);
      if (auto st = geocoil_graph_svg(quotient, svg.out())) return report(st);
      write_output(out_dir, "net.json", js.p);
      write_output(out_dir, "net.svg", svg.p);
      std::printf("type=%s foci=%d saddles=%d\n", type_name.p, foci, saddles);
      return kExitOk;
    }

    if (cmd_atlas->parsed()) {
      int res = atlas_res;
      if (atlas_res_opt->count() == 0 && cfg.contains("resolution")) {
        if (!cfg.at("resolution").is_number_integer())
          throw UsageError("config field 'resolution' must be an integer");
        res = cfg.at("resolution").get<int>();
      }
      RegionMapH map;
      if (auto st = geocoil_region_map_run(res, map.out())) return report(st);
      Str csv, svg;
      if (auto st = geocoil_region_map_csv(map, csv.out())) return report(st);
      if (auto st = geocoil_region_map_svg(map, svg.out())) return report(st);
      write_output(out_dir, "region_map.csv", csv.p);
      write_output(out_dir, "region_map.svg", svg.p);
      std::printf("resolution=%d\n", res);
      return kExitOk;
    }

    if (cmd_cmp->parsed()) {
      const auto eps = resolve_triple(cmp_eps_opt, cmp_eps, cfg, "eps");
      const auto x0 = resolve_triple(cmp_x0_opt, cmp_x0, cfg, "x0");
      const auto v0 = resolve_triple(cmp_v0_opt, cmp_v0, cfg, "v0");
      const double t_end = resolve_real(cmp_t_opt, cmp_t_end, cfg, "t_end", 200.0);
      ComparisonH cmp;
      if (auto st = geocoil_compare_run(eps.data(), x0.data(), v0.data(), t_end,
                                        tol_v, cmp.out()))
        return report(st);
      double max_angle = 0.0;
      if (auto st = geocoil_comparison_max_angle(cmp, &max_angle))
        return report(st);
      Str js, svg;
      if (auto st = geocoil_comparison_json(cmp, js.out())) return report(st);
      if (auto st = geocoil_comparison_svg(cmp, svg.out())) return report(st);
      write_output(out_dir, "comparison.json", js.p);
      write_output(out_dir, "comparison.svg", svg.p);
      std::printf("max_angle_error=%.17g\n", max_angle);
      return kExitOk;
    }

    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
