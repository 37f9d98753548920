// Acceptance checklist runner: executes the nine release criteria and prints
// one PASS/FAIL line per criterion.  Exit code = number of failures.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/atlas.hpp"
#include "core/averaged.hpp"
#include "core/compare.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/io.hpp"
#include "core/separatrix.hpp"
#include "core/stationary.hpp"
#include "core/surface.hpp"

namespace fs = std::filesystem;
using namespace geocoil;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the command-line tool with the given arguments, capturing stdout.
CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + GEOCOIL_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  CliResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int rc = pclose(pipe);
  r.exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return std::string(buf);
}

fs::path out_base() { return fs::current_path() / "acceptance_out"; }

fs::path fresh_dir(const std::string& name) {
  const fs::path d = out_base() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int g_failures = 0;

void report(int n, bool ok, const std::string& label, const std::string& detail) {
  if (ok) {
    std::printf("PASS %d %s\n", n, label.c_str());
  } else {
    std::printf("FAIL %d %s: %s\n", n, label.c_str(), detail.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

void run_criterion(int n, const std::string& label, const std::function<std::string()>& body) {
  std::string detail;
  try {
    detail = body();  // empty string means pass
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  } catch (...) {
    detail = "unknown exception";
  }
  report(n, detail.empty(), label, detail);
}

// ---------------------------------------------------------------- criteria

/// 1: the four reference triples classify as types I..IV, each call < 1 ms.
std::string criterion_classification() {
  const std::array<EpsTriple, 4> triples = {EpsTriple{0.02, 0.03, 0.04},
                                            EpsTriple{0.01, 0.03, 0.04},
                                            EpsTriple{-0.02, 0.03, 0.04},
                                            EpsTriple{-0.01, 0.0, 0.01}};
  const std::array<TopType, 4> expected = {TopType::I, TopType::II, TopType::III, TopType::IV};

  for (int warm = 0; warm < 256; ++warm) (void)classify_type(triples[warm % 4]);
  for (int i = 0; i < 4; ++i) {
    Timer t;
    const TopType got = classify_type(triples[i]);
    const double dt = t.seconds();
    if (got != expected[i])
      return std::string("triple ") + std::to_string(i + 1) + " classified as " +
             top_type_name(got) + ", expected " + top_type_name(expected[i]);
    if (dt >= 1e-3) return fmt("triple classification took %.3g s", dt);
  }
  return {};
}

/// 2: the net command reproduces the quotient counts of all four types.
std::string criterion_net_counts() {
  struct Case {
    const char* args_or_eps;  // positional args, or nullptr to use a config
    EpsTriple eps;
    const char* expected;
  };
  const Case cases[4] = {
      {"0.02 0.03 0.04", {}, "type=I foci=7 saddles=6"},
      {"0.01 0.03 0.04", {}, "type=II foci=5 saddles=4"},
      {nullptr, {-0.02, 0.03, 0.04}, "type=III foci=3 saddles=2"},
      {nullptr, {-0.01, 0.0, 0.01}, "type=IV foci=2 saddles=1"},
  };
  for (int i = 0; i < 4; ++i) {
    const fs::path dir = fresh_dir("c2_" + std::to_string(i));
    std::string invocation;
    if (cases[i].args_or_eps) {
      invocation = std::string("net ") + cases[i].args_or_eps;
    } else {
      nlohmann::json cfg;
      cfg["eps"] = {cases[i].eps[0], cases[i].eps[1], cases[i].eps[2]};
      const fs::path cfg_path = dir / "net_config.json";
      write_text_file(cfg_path.string(), cfg.dump(2) + "\n");
      invocation = "net --config \"" + cfg_path.string() + "\"";
    }
    Timer t;
    const CliResult r =
        run_cli(invocation + " --tol 1e-10 --out \"" + dir.string() + "\"");
    const double dt = t.seconds();
    if (r.exit_code != 0)
      return "net run " + std::to_string(i + 1) + " exited with code " +
             std::to_string(r.exit_code);
    if (trimmed(r.out) != cases[i].expected)
      return "net run " + std::to_string(i + 1) + " printed \"" + trimmed(r.out) +
             "\", expected \"" + cases[i].expected + "\"";
    if (!fs::exists(dir / "net.json") || !fs::exists(dir / "net.svg"))
      return "net run " + std::to_string(i + 1) + " did not write net.json/net.svg";
    if (dt > 60.0) return fmt("net run took %.1f s (budget 60 s)", dt);
  }
  return {};
}

/// 3: the closed-form slow field equals the numeric phase average.
std::string criterion_phase_average() {
  Timer t;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Vec3 L{comp(rng), comp(rng), comp(rng)};
    while (norm(L) < 0.1) L = Vec3{comp(rng), comp(rng), comp(rng)};
    L = radius(rng) * normalized(L);
    const EpsTriple eps{small(rng), small(rng), small(rng)};
    const Vec3 diff = average_over_phase(L, eps) - averaged_rhs(MomentumPoint{L, eps});
    worst = std::max(worst, norm(diff));
  }
  if (worst > 1e-10) return fmt("max |phase average - closed form| = %.3g", worst);
  if (t.seconds() > 10.0) return fmt("took %.1f s (budget 10 s)", t.seconds());
  return {};
}

/// 4: conservation along both integrators at their reference horizons.
std::string criterion_conservation() {
  Timer t;
  const EpsTriple eps{0.02, 0.03, 0.04};

  const Vec3 L0 = normalized(Vec3{0.2, 0.9, 0.38});
  const MomentumPath path = integrate_averaged(MomentumPoint{L0, eps}, 1000.0, 1e-10);
  const double c0 = norm2(L0);
  const double h0 = hamiltonian(MomentumPoint{L0, eps});
  double casimir_drift = 0.0, h_drift = 0.0;
  for (const Vec3& L : path.L) {
    casimir_drift = std::max(casimir_drift, std::abs(norm2(L) - c0) / c0);
    h_drift = std::max(h_drift,
                       std::abs(hamiltonian(MomentumPoint{L, eps}) - h0) / std::abs(h0));
  }
  if (casimir_drift > 1e-8) return fmt("|L|^2 relative drift %.3g > 1e-8", casimir_drift);
  if (h_drift > 1e-8) return fmt("energy relative drift %.3g > 1e-8", h_drift);

  const Surface s = Surface::quartic(eps);
  const Vec3 x = s.project_to_surface(Vec3{0.3, -0.5, 0.8});
  const Vec3 v = s.project_velocity(x, Vec3{1.0, 0.4, -0.1});
  const Trajectory traj = integrate_geodesic(s, make_phase_state(s, x, v), 100.0, 1e-10);
  if (traj.stats.max_constraint_drift > 1e-9)
    return fmt("surface residual %.3g > 1e-9", traj.stats.max_constraint_drift);
  if (traj.stats.max_energy_drift > 1e-8)
    return fmt("speed drift %.3g > 1e-8", traj.stats.max_energy_drift);

  if (t.seconds() > 30.0) return fmt("took %.1f s (budget 30 s)", t.seconds());
  return {};
}

/// 5: focus minus saddle count is 1 on the quotient, for random coefficients.
std::string criterion_index_sum() {
  Timer t;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> comp(-0.3, 0.3);
  int done = 0;
  while (done < 50) {
    const EpsTriple eps{comp(rng), comp(rng), comp(rng)};
    try {
      if (classify_type(eps) == TopType::Marginal) continue;
    } catch (const Error&) {
      continue;  // all-zero draw
    }
    const SeparatrixGraph q = quotient_antipodal(trace_separatrices(eps, 1.0));
    int foci = 0, saddles = 0;
    for (const auto& vtx : q.vertices)
      (vtx.stability == Stability::Focus ? foci : saddles) += 1;
    if (foci - saddles != 1)
      return fmt("draw with %g foci and %g saddles", static_cast<double>(foci),
                 static_cast<double>(saddles)) +
             fmt(" (eps scale %.3g)", std::max({std::abs(eps[0]), std::abs(eps[1]),
                                                std::abs(eps[2])}));
    ++done;
  }
  if (t.seconds() > 600.0) return fmt("took %.1f s (budget 600 s)", t.seconds());
  return {};
}

/// 6: per-loop normals of the exact flow track the slow solution.
std::string criterion_tracking() {
  Timer t;
  const Surface s = Surface::quartic({0.02, 0.03, 0.04});
  const Vec3 ics[3][2] = {
      {Vec3{0.3, -0.5, 0.8}, Vec3{1.0, 0.4, -0.1}},
      {Vec3{0.1, 0.8, -0.55}, Vec3{-0.9, 0.1, -0.3}},
      {Vec3{-0.6, 0.25, 0.75}, Vec3{0.3, 1.1, 0.0}},
  };
  for (int i = 0; i < 3; ++i) {
    const ComparisonReport rep = run_comparison(s, ics[i][0], ics[i][1], 200.0, 1e-10);
    if (rep.max_angle_error > 0.09)
      return fmt("initial condition %g: max angle %.4g rad > 0.09",
                 static_cast<double>(i + 1), rep.max_angle_error);
  }
  if (t.seconds() > 120.0) return fmt("took %.1f s (budget 120 s)", t.seconds());
  return {};
}

/// 7: stationary points satisfy the field equations; both stability methods agree.
std::string criterion_stationary() {
  Timer t;
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> comp(-0.3, 0.3);
  int done = 0;
  while (done < 1000) {
    const EpsTriple eps{comp(rng), comp(rng), comp(rng)};
    std::vector<StationaryPoint> pts;
    try {
      if (classify_type(eps) == TopType::Marginal) continue;
      pts = enumerate_stationary(eps);
    } catch (const Error&) {
      continue;  // marginal or degenerate draw
    }
    for (const StationaryPoint& p : pts) {
      const double residual = norm(averaged_rhs(MomentumPoint{p.L0, eps}));
      if (residual > 1e-12) return fmt("field residual %.3g > 1e-12", residual);
      try {
        const Stability a = classify_stability(p, eps, ClassifyMethod::Inequality);
        const Stability b = classify_stability(p, eps, ClassifyMethod::Spectrum);
        if (a != b)
          return std::string("stability disagreement: sign test ") + stability_name(a) +
                 ", spectrum " + stability_name(b);
      } catch (const Error&) {
        continue;  // point within tolerance of a stability boundary
      }
    }
    ++done;
  }
  if (t.seconds() > 30.0) return fmt("took %.1f s (budget 30 s)", t.seconds());
  return {};
}

/// 8: the two ellipsoid regressions run clean, and the precessing loop
/// normals of the near-separatrix run stay inside a separatrix tube.
std::string criterion_regressions() {
  Timer t;
  const std::string fixture_dir = GEOCOIL_FIXTURE_DIR;
  const char* names[2] = {"fig2_geodesic.json", "fig3_geodesic.json"};
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = fresh_dir("c8_" + std::to_string(i));
    const CliResult r = run_cli("geodesic --config \"" + fixture_dir + "/" + names[i] +
                                "\" --out \"" + dir.string() + "\"");
    if (r.exit_code != 0)
      return std::string(names[i]) + " exited with code " + std::to_string(r.exit_code);
    const auto stats =
        nlohmann::json::parse(read_text_file((dir / "trajectory_stats.json").string()));
    const double constraint = stats.at("max_constraint_drift").get<double>();
    const double energy = stats.at("max_energy_drift").get<double>();
    if (constraint > 1e-9)
      return std::string(names[i]) + fmt(": surface residual %.3g > 1e-9", constraint);
    if (energy > 1e-8)
      return std::string(names[i]) + fmt(": speed drift %.3g > 1e-8", energy);
  }

  // Tube test: every loop normal of the near-separatrix run lies within
  // 0.17 rad of a single traced separatrix arc of the matching slow flow.
  const std::array<double, 3> axes{1.01, 1.02, 1.03};
  const Surface s = Surface::ellipsoid(axes);
  const Vec3 x = s.project_to_surface(Vec3{-0.0117, 0.0001, -1.0299});
  const Vec3 v = s.project_velocity(x, Vec3{-1.9416, 0.0194, 0.0228});
  const Trajectory traj = integrate_geodesic(s, make_phase_state(s, x, v), 100.0, 1e-10);
  const std::vector<LoopNormal> normals = loop_normals(traj);
  if (normals.size() < 3) return "near-separatrix run yielded fewer than 3 loops";

  const SeparatrixGraph net = trace_separatrices_ellipsoid(axes, 1.0);
  double best = 1e300;
  for (const GraphEdge& e : net.edges) {
    double worst_normal = 0.0;
    for (const LoopNormal& ln : normals) {
      double nearest = 1e300;
      for (const Vec3& sample : e.samples)
        nearest = std::min(nearest, angle_between(ln.normal, sample));
      worst_normal = std::max(worst_normal, nearest);
    }
    best = std::min(best, worst_normal);
  }
  if (best > 0.17) return fmt("loop normals stray %.3g rad from every arc", best);
  if (t.seconds() > 120.0) return fmt("took %.1f s (budget 120 s)", t.seconds());
  return {};
}

/// 9: rerunning any command with identical inputs gives byte-identical files.
std::string criterion_determinism() {
  const fs::path base = out_base();
  const fs::path cfg_dir = fresh_dir("c9_config");

  nlohmann::json net_cfg;
  net_cfg["eps"] = {-0.01, 0.0, 0.01};
  write_text_file((cfg_dir / "net.json").string(), net_cfg.dump(2) + "\n");

  nlohmann::json cmp_cfg;
  cmp_cfg["eps"] = {0.02, 0.03, 0.04};
  cmp_cfg["x0"] = {0.3, -0.5, 0.8};
  cmp_cfg["v0"] = {1.0, 0.4, -0.1};
  cmp_cfg["t_end"] = 200.0;
  write_text_file((cfg_dir / "compare.json").string(), cmp_cfg.dump(2) + "\n");

  struct Command {
    std::string name;
    std::string args;
    std::vector<std::string> files;
  };
  const std::string fixture_dir = GEOCOIL_FIXTURE_DIR;
  const std::vector<Command> commands = {
      {"geodesic",
       "geodesic --config \"" + fixture_dir + "/fig3_geodesic.json\"",
       {"trajectory.csv", "trajectory_stats.json"}},
      {"averaged",
       "averaged --eps 0.02 0.03 0.04 --L0 0.1 0.9 0.4 --t-end 1000",
       {"averaged.csv", "averaged_stats.json"}},
      {"stationary", "stationary 0.02 0.03 0.04", {"stationary.json"}},
      {"net", "net --config \"" + (cfg_dir / "net.json").string() + "\"",
       {"net.json", "net.svg"}},
      {"atlas", "atlas 64", {"region_map.csv", "region_map.svg"}},
      {"compare", "compare --config \"" + (cfg_dir / "compare.json").string() + "\"",
       {"comparison.json", "comparison.svg"}},
  };

  for (const Command& cmd : commands) {
    const fs::path d1 = fresh_dir("c9_" + cmd.name + "_a");
    const fs::path d2 = fresh_dir("c9_" + cmd.name + "_b");
    const CliResult r1 = run_cli(cmd.args + " --out \"" + d1.string() + "\"");
    const CliResult r2 = run_cli(cmd.args + " --out \"" + d2.string() + "\"");
    if (r1.exit_code != 0 || r2.exit_code != 0)
      return cmd.name + " exited with codes " + std::to_string(r1.exit_code) + "/" +
             std::to_string(r2.exit_code);
    if (r1.out != r2.out) return cmd.name + " printed different summaries";
    for (const std::string& f : cmd.files) {
      const std::string a = read_text_file((d1 / f).string());
      const std::string b = read_text_file((d2 / f).string());
      if (a != b) return cmd.name + ": " + f + " differs between reruns";
      if (a.empty()) return cmd.name + ": " + f + " is empty";
    }
  }
  return {};
}

}  // namespace

int main() {
  fs::create_directories(out_base());
  run_criterion(1, "classification of the four reference triples", criterion_classification);
  run_criterion(2, "net counts via the command line", criterion_net_counts);
  run_criterion(3, "phase average matches the slow field", criterion_phase_average);
  run_criterion(4, "conservation along both integrators", criterion_conservation);
  run_criterion(5, "index sum on the quotient for random coefficients", criterion_index_sum);
  run_criterion(6, "loop normals track the slow flow", criterion_tracking);
  run_criterion(7, "stationary residuals and stability agreement", criterion_stationary);
  run_criterion(8, "ellipsoid regressions and separatrix tube", criterion_regressions);
  run_criterion(9, "byte-identical reruns", criterion_determinism);
  return g_failures;
}
