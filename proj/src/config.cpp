#include "nehari/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nehari/error.hpp"

namespace nehari {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem.dim",          "problem.alpha",      "problem.mu",
      "problem.p",            "problem.q",          "problem.gamma3",
      "problem.gamma4",       "problem.b_form",     "problem.b_constant",
      "problem.v_form",       "problem.lambda",     "problem.choquard",
      "grid.kind",            "grid.R",             "grid.M",
      "grid.grading",         "grid.L",             "grid.m",
      "solver.tolerance",     "solver.polish_start", "solver.polish_target",
      "solver.max_descent",   "solver.max_newton",  "solver.reinit_budget",
      "solver.floor",         "solver.polish",      "sweep.points",
      "sweep.spacing",        "sweep.lo_frac",      "sweep.hi_frac",
      "output.dir",           "run.seed"};
  return keys;
}

template <class T>
void read(const pt::ptree& tree, const char* key, T& out) {
  if (auto v = tree.get_optional<std::string>(key)) {
    try {
      out = tree.get<T>(key);
    } catch (const pt::ptree_error&) {
      throw Error(ErrorCode::ConfigError, std::string("bad value for ") + key + ": '" + *v + "'");
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty())
      throw Error(ErrorCode::ConfigError, "key '" + section + "' outside a section");
    for (const auto& [key, value] : body)
      if (!known_keys().count(section + "." + key))
        throw Error(ErrorCode::ConfigError, "unknown key '" + section + "." + key + "'");
  }

  RunConfig c;
  auto& p = c.params;
  read(tree, "problem.dim", p.dim);
  read(tree, "problem.alpha", p.alpha);
  read(tree, "problem.mu", p.mu);
  read(tree, "problem.p", p.p);
  read(tree, "problem.q", p.q);
  read(tree, "problem.gamma3", p.gamma3);
  read(tree, "problem.gamma4", p.gamma4);
  read(tree, "problem.b_constant", p.b_constant);
  read(tree, "problem.choquard", p.choquard);
  if (auto s = tree.get_optional<std::string>("problem.b_form")) p.b_form = b_form_from_string(*s);
  if (auto s = tree.get_optional<std::string>("problem.v_form"); s && *s != "one_plus_r2")
    throw Error(ErrorCode::ConfigError, "only v_form = one_plus_r2 is supported");
  if (tree.get_optional<std::string>("problem.lambda")) {
    double lambda = 0.0;
    read(tree, "problem.lambda", lambda);
    p.lambda = lambda;
  }

  if (auto s = tree.get_optional<std::string>("grid.kind")) c.grid.kind = grid_kind_from_string(*s);
  read(tree, "grid.R", c.grid.R);
  read(tree, "grid.M", c.grid.M);
  read(tree, "grid.grading", c.grid.grading);
  read(tree, "grid.L", c.grid.L);
  read(tree, "grid.m", c.grid.m);

  read(tree, "solver.tolerance", c.solver.tolerance);
  read(tree, "solver.polish_start", c.solver.polish_start);
  read(tree, "solver.polish_target", c.solver.polish_target);
  read(tree, "solver.max_descent", c.solver.max_descent);
  read(tree, "solver.max_newton", c.solver.max_newton);
  read(tree, "solver.reinit_budget", c.solver.reinit_budget);
  read(tree, "solver.floor", c.solver.floor);
  read(tree, "solver.polish", c.solver.polish);

  read(tree, "sweep.points", c.sweep.points);
  read(tree, "sweep.spacing", c.sweep.spacing);
  read(tree, "sweep.lo_frac", c.sweep.lo_frac);
  read(tree, "sweep.hi_frac", c.sweep.hi_frac);

  read(tree, "output.dir", c.output_dir);
  read(tree, "run.seed", c.seed);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void check_config(const RunConfig& c) {
  std::vector<Violation> bad;
  if (!(c.solver.tolerance > 0.0)) bad.push_back({ErrorCode::ConfigError, "solver.tolerance <= 0"});
  if (!(c.solver.polish_start > 0.0))
    bad.push_back({ErrorCode::ConfigError, "solver.polish_start <= 0"});
  if (!(c.solver.polish_target > 0.0))
    bad.push_back({ErrorCode::ConfigError, "solver.polish_target <= 0"});
  if (!(c.solver.floor > 0.0)) bad.push_back({ErrorCode::ConfigError, "solver.floor <= 0"});
  if (c.solver.max_descent < 0 || c.solver.max_newton < 0 || c.solver.reinit_budget < 0)
    bad.push_back({ErrorCode::ConfigError, "iteration caps must be nonnegative"});
  if (c.sweep.points < 4) bad.push_back({ErrorCode::ConfigError, "sweep.points < 4"});
  if (c.sweep.spacing != "default" && c.sweep.spacing != "linear")
    bad.push_back({ErrorCode::ConfigError, "sweep.spacing must be default or linear"});
  if (!(c.sweep.lo_frac > 0.0 && c.sweep.lo_frac < c.sweep.hi_frac && c.sweep.hi_frac < 1.0))
    bad.push_back({ErrorCode::ConfigError, "need 0 < sweep.lo_frac < sweep.hi_frac < 1"});
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

}  // namespace nehari
