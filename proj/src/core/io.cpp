#include "core/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace geocoil {

namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json eigen_json(const std::array<std::complex<double>, 2>& eigen) {
  json arr = json::array();
  for (const auto& z : eigen) arr.push_back(json::array({z.real(), z.imag()}));
  return arr;
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    first = false;
    out += format_g17(v);
  }
  out += '\n';
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x1,x2,x3,v1,v2,v3,L1,L2,L3\n";
  for (const PhaseState& s : traj.samples) {
    const Vec3 L = angular_momentum(s);
    append_row(out, {s.t, s.x[0], s.x[1], s.x[2], s.v[0], s.v[1], s.v[2], L[0],
                     L[1], L[2]});
  }
  return out;
}

std::string momentum_csv(const MomentumPath& path) {
  std::string out = "t,L1,L2,L3\n";
  for (std::size_t i = 0; i < path.t.size(); ++i)
    append_row(out, {path.t[i], path.L[i][0], path.L[i][1], path.L[i][2]});
  return out;
}

std::string region_csv(const RegionMap& map) {
  std::string out = "u,v,type\n";
  for (const RegionSample& s : map.samples) {
    out += format_g17(s.u);
    out += ',';
    out += format_g17(s.v);
    out += ',';
    out += top_type_name(s.type);
    out += '\n';
  }
  return out;
}

std::string stationary_json(const std::vector<StationaryPoint>& points) {
  json arr = json::array();
  for (const StationaryPoint& p : points) {
    json obj;
    obj["L0"] = vec_json(p.L0);
    obj["family"] = family_name(p.family);
    obj["stability"] = stability_name(p.stability);
    obj["eigen"] = eigen_json(p.eigen);
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

std::string graph_json(const SeparatrixGraph& g) {
  json obj;
  json verts = json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const GraphVertex& v = g.vertices[i];
    json jv;
    jv["id"] = static_cast<int>(i);
    jv["L0"] = vec_json(v.L);
    jv["family"] = family_name(v.family);
    jv["stability"] = stability_name(v.stability);
    verts.push_back(jv);
  }
  json edges = json::array();
  for (const GraphEdge& e : g.edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to;
    json samples = json::array();
    for (const Vec3& s : e.samples) samples.push_back(vec_json(s));
    je["samples"] = samples;
    edges.push_back(je);
  }
  obj["vertices"] = verts;
  obj["edges"] = edges;
  obj["space"] = graph_space_name(g.space);
  return obj.dump(2) + "\n";
}

std::string comparison_json(const ComparisonReport& report) {
  json obj;
  obj["horizon"] = report.horizon;
  obj["eps_scale"] = report.eps_scale;
  obj["max_angle_error"] = report.max_angle_error;
  json recs = json::array();
  for (const ComparisonRecord& r : report.records) {
    json jr;
    jr["t_mid"] = r.t_mid;
    jr["exact_normal"] = vec_json(r.exact_normal);
    jr["averaged_L_hat"] = vec_json(r.averaged_direction);
    jr["angle_error"] = r.angle_error;
    recs.push_back(jr);
  }
  obj["records"] = recs;
  return obj.dump(2) + "\n";
}

std::string trajectory_stats_json(const Trajectory& traj) {
  json obj;
  obj["samples"] = traj.samples.size();
  obj["t_end"] = traj.samples.empty() ? 0.0 : traj.samples.back().t;
  obj["max_constraint_drift"] = traj.stats.max_constraint_drift;
  obj["max_energy_drift"] = traj.stats.max_energy_drift;
  obj["max_step_constraint"] = traj.stats.max_step_constraint;
  obj["max_step_energy"] = traj.stats.max_step_energy;
  return obj.dump(2) + "\n";
}

std::string momentum_stats_json(const MomentumPath& path) {
  json obj;
  obj["samples"] = path.t.size();
  obj["t_end"] = path.t.empty() ? 0.0 : path.t.back();
  obj["max_casimir_step_drift"] = path.stats.max_casimir_step_drift;
  obj["max_hamiltonian_drift"] = path.stats.max_hamiltonian_drift;
  return obj.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary);
  if (!f) fail(Errc::Io, "cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) fail(Errc::Io, "short write: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::Io, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace geocoil
