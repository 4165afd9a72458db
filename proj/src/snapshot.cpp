#include "nehari/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "nehari/error.hpp"

namespace nehari {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json params_to_json(const ProblemParams& p) {
  json j = {{"dim", p.dim},       {"alpha", p.alpha},   {"mu", p.mu},
            {"p", p.p},           {"q", p.q},           {"gamma3", p.gamma3},
            {"gamma4", p.gamma4}, {"b_form", to_string(p.b_form)},
            {"b_constant", p.b_constant}, {"v_form", "one_plus_r2"},
            {"choquard", p.choquard}};
  if (p.lambda) j["lambda"] = *p.lambda;
  return j;
}

ProblemParams params_from_json(const json& j) {
  ProblemParams p;
  p.dim = j.at("dim").get<int>();
  p.alpha = j.at("alpha").get<double>();
  p.mu = j.at("mu").get<double>();
  p.p = j.at("p").get<double>();
  p.q = j.at("q").get<double>();
  p.gamma3 = j.at("gamma3").get<double>();
  p.gamma4 = j.at("gamma4").get<double>();
  p.b_form = b_form_from_string(j.at("b_form").get<std::string>());
  p.b_constant = j.at("b_constant").get<double>();
  p.choquard = j.value("choquard", false);
  if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
  return p;
}

json grid_to_json(const GridSpec& g) {
  if (g.kind == GridSpec::Kind::Radial)
    return {{"kind", "radial"}, {"R", g.R}, {"M", g.M}, {"grading", g.grading}};
  return {{"kind", "cartesian"}, {"L", g.L}, {"m", g.m}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.kind = grid_kind_from_string(j.at("kind").get<std::string>());
  if (g.kind == GridSpec::Kind::Radial) {
    g.R = j.at("R").get<double>();
    g.M = j.at("M").get<int>();
    g.grading = j.at("grading").get<double>();
  } else {
    g.L = j.at("L").get<double>();
    g.m = j.at("m").get<int>();
  }
  return g;
}

}  // namespace

std::uint64_t values_checksum(std::span<const double> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) {
      h ^= (bits >> (8 * k)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string to_json(const Snapshot& snap) {
  json j;
  j["params"] = params_to_json(snap.params);
  j["grid"] = grid_to_json(snap.grid);
  j["values"] = snap.values;
  j["checksum"] = hex64(values_checksum(snap.values));
  if (snap.solve) {
    j["lambda"] = snap.solve->lambda;
    j["branch"] = snap.solve->branch;
    j["energy"] = snap.solve->energy;
    j["residual"] = snap.solve->residual;
    j["iterations"] = snap.solve->iterations;
  }
  return j.dump(1);
}

Snapshot snapshot_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Snapshot s;
    s.params = params_from_json(j.at("params"));
    s.grid = grid_from_json(j.at("grid"));
    s.values = j.at("values").get<std::vector<double>>();
    if (j.at("checksum").get<std::string>() != hex64(values_checksum(s.values)))
      throw Error(ErrorCode::SnapshotFormat, "checksum mismatch");
    if (j.contains("branch")) {
      SolveInfo info;
      info.lambda = j.at("lambda").get<double>();
      info.branch = j.at("branch").get<std::string>();
      info.energy = j.at("energy").get<double>();
      info.residual = j.at("residual").get<double>();
      info.iterations = j.at("iterations").get<int>();
      s.solve = info;
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SnapshotFormat, e.what());
  }
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  out << to_json(snap) << '\n';
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SnapshotFormat, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return snapshot_from_json(ss.str());
}

}  // namespace nehari
