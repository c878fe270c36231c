#include "dmatel/config.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/matel.hpp"
#include "dmatel/output.hpp"
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace dmatel::config {

namespace {

using boost::property_tree::ptree;

std::string where(const std::string &section, const std::string &key) {
  return "config [" + section + "] " + key;
}

double to_double(const std::string &text, const std::string &what) {
  if (text == "inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError(what + ": expected a number, got '" + text + "'");
  return v;
}

int to_int(const std::string &text, const std::string &what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError(what + ": expected an integer, got '" + text + "'");
  return v;
}

const std::map<std::string, std::set<std::string>> &known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"physics", {"Z", "alpha"}},
      {"state", {"n_r", "kappa", "m"}},
      {"truncation", {"n_max", "kappa_max", "p_nodes", "p_scale", "p_mapping"}},
      {"regularization", {"lambda", "hook"}},
      {"grid", {"mapping", "scale", "octaves_below", "tail_panels", "k_max", "linear_panels"}},
      {"tolerance", {"tail_budget"}},
      {"output", {"format", "path"}},
  };
  return keys;
}

void apply(RunConfig &c, const std::string &sec, const std::string &key, const std::string &v) {
  const auto w = where(sec, key);
  if (sec == "physics") {
    if (key == "Z")
      c.constants.Z = to_int(v, w);
    else
      c.constants.alpha = to_double(v, w);
  } else if (sec == "state") {
    if (key == "n_r")
      c.s1.n_r = to_int(v, w);
    else if (key == "kappa")
      c.s1.kappa = to_int(v, w);
    else {
      const double twice = 2.0 * to_double(v, w);
      if (twice != std::round(twice) || std::abs(twice) > 1e6)
        throw ValidationError(w + ": m must be a half-integer");
      c.s1.two_m = static_cast<int>(twice);
    }
  } else if (sec == "truncation") {
    auto &t = c.truncation;
    if (key == "n_max")
      t.n_max = to_int(v, w);
    else if (key == "kappa_max")
      t.kappa_max = to_int(v, w);
    else if (key == "p_nodes")
      t.p_nodes = to_int(v, w);
    else if (key == "p_scale")
      t.p_scale = to_double(v, w);
    else if (v != "rational")
      throw ValidationError(w + ": only the rational continuum mapping is available");
  } else if (sec == "regularization") {
    if (key == "lambda")
      c.reg.lambda = to_double(v, w);
    else
      c.hook = v;
  } else if (sec == "grid") {
    if (key == "mapping") {
      if (v == "linear")
        c.mapping = shift::Mapping::linear;
      else if (v == "log")
        c.mapping = shift::Mapping::log;
      else if (v == "rational")
        c.mapping = shift::Mapping::rational;
      else
        throw ValidationError(w + ": expected linear, log or rational");
    } else if (key == "scale") {
      if (v == "auto")
        c.grid_scale.reset();
      else
        c.grid_scale = to_double(v, w);
    } else if (key == "octaves_below")
      c.octaves_below = to_int(v, w);
    else if (key == "tail_panels")
      c.tail_panels = to_int(v, w);
    else if (key == "k_max")
      c.k_max = to_double(v, w);
    else
      c.linear_panels = to_int(v, w);
  } else if (sec == "tolerance") {
    c.truncation.tail_budget = to_double(v, w);
  } else {
    if (key == "format") {
      if (v == "csv")
        c.format = Format::csv;
      else if (v == "json")
        c.format = Format::json;
      else
        throw ValidationError(w + ": expected csv or json");
    } else
      c.path = v;
  }
}

} // namespace

RunConfig parse(std::istream &in) {
  ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  RunConfig c;
  for (const auto &[sec, body] : tree) {
    const auto known = known_keys().find(sec);
    if (body.empty() || known == known_keys().end())
      throw ValidationError("config: unknown section or key outside a section: " + sec);
    for (const auto &[key, value] : body) {
      if (!known->second.count(key))
        throw ValidationError("config: unknown key " + key + " in [" + sec + "]");
      apply(c, sec, key, value.data());
    }
  }
  c.validate();
  return c;
}

RunConfig load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("config: cannot open " + path);
  return parse(in);
}

void RunConfig::validate() const {
  if (constants.Z < 1)
    throw ValidationError("config: Z must be >= 1");
  constants.validate();
  s1.validate();
  states::gamma_kappa(s1.kappa, constants);
  if (hook != "zero" && hook != "self")
    throw ValidationError("config: hook must be zero or self");
  if (grid_scale && !(*grid_scale > 0.0 && std::isfinite(*grid_scale)))
    throw ValidationError("config: grid scale must be positive");
  if (octaves_below < 0 || octaves_below > 60 || tail_panels < 0 || tail_panels > 60)
    throw ValidationError("config: octaves_below and tail_panels must lie in 0..60");
  if (mapping != shift::Mapping::rational) {
    if (!(k_max > 0.0 && std::isfinite(k_max)))
      throw ValidationError("config: linear and log grids need a finite k_max > 0");
    if (linear_panels < 1)
      throw ValidationError("config: linear_panels must be >= 1");
  }
  if (truncation.p_nodes > 4096 || truncation.n_max > 200 || truncation.kappa_max > 50)
    throw ValidationError("config: truncation beyond n_max 200, kappa_max 50, p_nodes 4096");
  shift::validate_inputs(s1, constants, truncation, reg);
  // a finite grid has to contain every pole
  if (mapping != shift::Mapping::rational) {
    const double e1 = states::bound_energy(s1, constants);
    for (const auto &l : shift::intermediate_states(truncation))
      if (l.bound && e1 - states::bound_energy({l.n_r, l.kappa, 1}, constants) >= k_max)
        throw ValidationError("config: k_max must exceed E1 - E2");
  }
}

shift::DeltaMHook RunConfig::delta_m_hook() const {
  return hook == "self" ? shift::DeltaMHook::self_subtraction() : shift::DeltaMHook::zero();
}

shift::GridPolicy RunConfig::grid_policy() const {
  const auto o1 = matel::make_orbital(s1, constants);
  auto p = shift::default_policy(o1, reg);
  if (grid_scale)
    p.scale = *grid_scale;
  p.mapping = mapping;
  p.octaves_below = octaves_below;
  p.tail_panels = tail_panels;
  p.k_max = k_max;
  p.linear_panels = linear_panels;
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  using output::format_number;
  return {
      {"physics.Z", std::to_string(constants.Z)},
      {"physics.alpha", format_number(constants.alpha)},
      {"state.n_r", std::to_string(s1.n_r)},
      {"state.kappa", std::to_string(s1.kappa)},
      {"state.m", format_number(s1.m())},
      {"truncation.n_max", std::to_string(truncation.n_max)},
      {"truncation.kappa_max", std::to_string(truncation.kappa_max)},
      {"truncation.p_nodes", std::to_string(truncation.p_nodes)},
      {"truncation.p_scale", format_number(truncation.p_scale)},
      {"truncation.p_mapping", "rational"},
      {"regularization.lambda", format_number(reg.lambda)},
      {"regularization.hook", hook},
      {"grid.mapping", shift::to_string(mapping)},
      {"grid.scale", grid_scale ? format_number(*grid_scale) : "auto"},
      {"grid.octaves_below", std::to_string(octaves_below)},
      {"grid.tail_panels", std::to_string(tail_panels)},
      {"grid.k_max", format_number(k_max)},
      {"grid.linear_panels", std::to_string(linear_panels)},
      {"tolerance.tail_budget", format_number(truncation.tail_budget)},
      {"output.format", format == Format::csv ? "csv" : "json"},
      {"output.path", path},
  };
}

} // namespace dmatel::config
