// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qthermo/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "qthermo/errors.hpp"

namespace qthermo::cli {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line of the first occurrence of "key" in the source text, or 0.
int line_of_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

class Section {
 public:
  Section(const json& obj, std::string path, const std::string& text, const std::string& source)
      : obj_(obj), path_(std::move(path)), text_(text), source_(source) {
    if (!obj_.is_object()) fail(path_.empty() ? "" : path_, "expected a JSON object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const std::string leaf = key.substr(key.rfind('.') == std::string::npos ? 0 : key.rfind('.') + 1);
    const int line = leaf.empty() ? 0 : line_of_key(text_, leaf);
    std::ostringstream os;
    os << source_;
    if (line > 0) os << ':' << line;
    os << ": " << (key.empty() ? std::string() : "'" + key + "': ") << message;
    throw ConfigError(os.str());
  }

  std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <class T>
  void read(const std::string& key, T& out) {
    const json* v = find(key);
    if (!v) return;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v->is_boolean()) fail(full(key), "expected a boolean");
      out = v->get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v->is_string()) fail(full(key), "expected a string");
      out = v->get<std::string>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v->is_number_unsigned()) fail(full(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer()) fail(full(key), "expected an integer");
      const auto x = v->get<long long>();
      if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
        fail(full(key), "integer out of range");
      }
      out = static_cast<T>(x);
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v->is_number()) fail(full(key), "expected a number");
      out = v->get<double>();
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v->is_array()) fail(full(key), "expected an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) fail(full(key), "expected an array of numbers");
        out.push_back(e.get<double>());
      }
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      if (!v->is_array()) fail(full(key), "expected an array of strings");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_string()) fail(full(key), "expected an array of strings");
        out.push_back(e.get<std::string>());
      }
    } else {
      static_assert(sizeof(T) == 0, "unsupported config type");
    }
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) fail(full(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  const std::string& text_;
  const std::string& source_;
  std::set<std::string> seen_;
};

template <class E>
struct Names {
  E value;
  const char* name;
};

template <class E>
E parse_enum(Section& sec, const std::string& key, const std::string& text,
             std::initializer_list<Names<E>> names) {
  for (const auto& n : names) {
    if (text == n.name) return n.value;
  }
  std::string allowed;
  for (const auto& n : names) allowed += std::string(allowed.empty() ? "" : ", ") + n.name;
  sec.fail(sec.full(key), "expected one of: " + allowed);
}

template <class E>
const char* enum_name(E value, std::initializer_list<Names<E>> names) {
  for (const auto& n : names) {
    if (n.value == value) return n.name;
  }
  return "";
}

const std::initializer_list<Names<InitialEnsemble>> kEnsembleNames = {
    {InitialEnsemble::Cold, "cold"},
    {InitialEnsemble::Equilibrium, "equilibrium"},
    {InitialEnsemble::Hot, "hot"}};
const std::initializer_list<Names<RegionKinds>> kRegionNames = {
    {RegionKinds::Hermitian, "hermitian"},
    {RegionKinds::NonHermitian, "nonhermitian"},
    {RegionKinds::Both, "both"}};
const std::initializer_list<Names<SweepAxis>> kAxisNames = {
    {SweepAxis::Model, "model"}, {SweepAxis::F, "f"}, {SweepAxis::S, "s"}};
const std::initializer_list<Names<FrictionChannel>> kChannelNames = {
    {FrictionChannel::Momentum, "momentum"}, {FrictionChannel::Position, "position"}};
const std::initializer_list<Names<FrictionRoute>> kRouteNames = {
    {FrictionRoute::Spectral, "spectral"},
    {FrictionRoute::Sylvester, "sylvester"},
    {FrictionRoute::Bernoulli, "bernoulli"},
    {FrictionRoute::ClosedForm, "closed_form"}};

InitialCondition parse_initial(const json& v, const std::string& text, const std::string& source,
                               int dim) {
  Section sec(v, "initial", text, source);
  std::string type;
  sec.read("type", type);
  if (type == "mixed_power_law") {
    MixedPowerLaw ic;
    sec.read("f", ic.f);
    sec.reject_unknown();
    if (!(ic.f > 0.0)) sec.fail("initial.f", "must be positive");
    return ic;
  }
  if (type == "pure_level") {
    PureLevel ic;
    sec.read("s", ic.s);
    sec.reject_unknown();
    if (ic.s < 1) sec.fail("initial.s", "must be >= 1");
    return ic;
  }
  if (type == "gibbs") {
    sec.reject_unknown();
    return GibbsInitial{};
  }
  if (type == "custom") {
    const json* re = sec.find("real");
    const json* im = sec.find("imag");
    sec.reject_unknown();
    if (!re) sec.fail("initial.real", "required for a custom initial state");
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    auto fill = [&](const json* m, const char* key, bool imag) {
      if (!m) return;
      if (!m->is_array() || static_cast<int>(m->size()) != dim) {
        sec.fail(std::string("initial.") + key, "expected dim rows");
      }
      for (int r = 0; r < dim; ++r) {
        const json& row = (*m)[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
          sec.fail(std::string("initial.") + key, "expected dim columns in every row");
        }
        for (int c = 0; c < dim; ++c) {
          if (!row[c].is_number()) sec.fail(std::string("initial.") + key, "expected numbers");
          const double x = row[c].get<double>();
          if (imag) rho(r, c).imag(x); else rho(r, c).real(x);
        }
      }
    };
    fill(re, "real", false);
    fill(im, "imag", true);
    return CustomInitial{rho};
  }
  sec.fail("initial.type", "expected one of: mixed_power_law, pure_level, gibbs, custom");
}

json initial_to_json(const InitialCondition& ic) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, MixedPowerLaw>) {
          return {{"type", "mixed_power_law"}, {"f", c.f}};
        } else if constexpr (std::is_same_v<T, PureLevel>) {
          return {{"type", "pure_level"}, {"s", c.s}};
        } else if constexpr (std::is_same_v<T, GibbsInitial>) {
          return {{"type", "gibbs"}};
        } else {
          json re = json::array();
          json im = json::array();
          for (Eigen::Index r = 0; r < c.rho.rows(); ++r) {
            json rr = json::array();
            json ri = json::array();
            for (Eigen::Index k = 0; k < c.rho.cols(); ++k) {
              rr.push_back(c.rho(r, k).real());
              ri.push_back(c.rho(r, k).imag());
            }
            re.push_back(rr);
            im.push_back(ri);
          }
          return {{"type", "custom"}, {"real", re}, {"imag", im}};
        }
      },
      ic);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(line_of_offset(text, e.byte)) +
                      ": JSON syntax error: " + e.what());
  }

  RunConfig cfg;
  Section top(doc, "", text, source);
  OscillatorModel& m = cfg.model;
  top.read("hbar", m.hbar);
  top.read("kb", m.kb);
  top.read("temperature", m.temperature);
  top.read("mass", m.mass);
  top.read("omega", m.omega);
  top.read("beta_p", m.beta_p);
  top.read("beta_q", m.beta_q);
  top.read("force", m.force);
  top.read("dim", m.dim);
  top.read("dt", cfg.dt);
  top.read("steps", cfg.steps);
  std::string model_name;
  top.read("model", model_name);
  if (!model_name.empty()) {
    const auto kind = parse_model_kind(model_name);
    if (!kind) top.fail("model", "unknown model '" + model_name + "'");
    cfg.kind = *kind;
  }
  if (const json* v = top.find("initial")) cfg.initial = parse_initial(*v, text, source, m.dim);
  top.read("output", cfg.output);
  top.read("seed", cfg.seed);
  top.read("emit_precision", cfg.emit_precision);

  if (const json* v = top.find("classical")) {
    Section sec(*v, "classical", text, source);
    ClassicalSection& c = cfg.classical;
    sec.read("trajectories", c.trajectories);
    sec.read("steps", c.steps);
    sec.read("dt", c.dt);
    sec.read("window_steps", c.window_steps);
    sec.read("burn_in_steps", c.burn_in_steps);
    std::string ens;
    sec.read("initial", ens);
    if (!ens.empty()) c.initial = parse_enum(sec, "initial", ens, kEnsembleNames);
    sec.reject_unknown();
  }
  if (const json* v = top.find("lindblad")) {
    Section sec(*v, "lindblad", text, source);
    LindbladSection& l = cfg.lindblad;
    sec.read("beta_p", l.beta_p);
    sec.read("beta_q", l.beta_q);
    sec.read("xi", l.xi);
    std::string kinds;
    sec.read("kind", kinds);
    if (!kinds.empty()) l.kinds = parse_enum(sec, "kind", kinds, kRegionNames);
    sec.read("choi", l.choi);
    sec.read("choi_dt", l.choi_dt);
    sec.read("boundary_samples", l.boundary_samples);
    sec.read("boundary_x_max", l.boundary_x_max);
    sec.reject_unknown();
    for (const auto* list : {&l.beta_p, &l.beta_q, &l.xi}) {
      for (double x : *list) {
        if (!(x > 0.0)) sec.fail("lindblad", "grid values must be positive");
      }
    }
    if (l.boundary_samples < 2) sec.fail("lindblad.boundary_samples", "must be >= 2");
    if (!(l.choi_dt > 0.0)) sec.fail("lindblad.choi_dt", "must be positive");
  }
  if (const json* v = top.find("sweep")) {
    Section sec(*v, "sweep", text, source);
    SweepSection& s = cfg.sweep;
    std::string axis;
    sec.read("axis", axis);
    if (!axis.empty()) s.axis = parse_enum(sec, "axis", axis, kAxisNames);
    sec.read("threads", s.threads);
    if (s.axis == SweepAxis::Model) {
      sec.read("values", s.models);
      for (const auto& name : s.models) {
        if (!parse_model_kind(name)) sec.fail("sweep.values", "unknown model '" + name + "'");
      }
    } else {
      sec.read("values", s.values);
    }
    sec.reject_unknown();
  }
  if (const json* v = top.find("friction")) {
    Section sec(*v, "friction", text, source);
    FrictionSection& f = cfg.friction;
    std::string channel, route;
    sec.read("channel", channel);
    if (!channel.empty()) f.channel = parse_enum(sec, "channel", channel, kChannelNames);
    sec.read("hermitian", f.hermitian);
    sec.read("route", route);
    if (!route.empty()) f.route = parse_enum(sec, "route", route, kRouteNames);
    sec.read("order", f.order);
    sec.reject_unknown();
  }
  top.reject_unknown();

  try {
    m.validate();
  } catch (const InvalidModel& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!(cfg.dt > 0.0)) top.fail("dt", "must be positive");
  if (cfg.steps < 1) top.fail("steps", "must be >= 1");
  if (cfg.emit_precision < 1 || cfg.emit_precision > 17) top.fail("emit_precision", "must be in [1, 17]");
  if (const auto* pl = std::get_if<PureLevel>(&cfg.initial); pl && pl->s > m.dim) {
    top.fail("initial", "pure level s exceeds dim");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string config_to_json(const RunConfig& c) {
  const OscillatorModel& m = c.model;
  json doc = {
      {"hbar", m.hbar},
      {"kb", m.kb},
      {"temperature", m.temperature},
      {"mass", m.mass},
      {"omega", m.omega},
      {"beta_p", m.beta_p},
      {"beta_q", m.beta_q},
      {"force", m.force},
      {"dim", m.dim},
      {"dt", c.dt},
      {"steps", c.steps},
      {"model", to_string(c.kind)},
      {"initial", initial_to_json(c.initial)},
      {"output", c.output},
      {"seed", c.seed},
      {"emit_precision", c.emit_precision},
      {"classical",
       {{"trajectories", c.classical.trajectories},
        {"steps", c.classical.steps},
        {"dt", c.classical.dt},
        {"window_steps", c.classical.window_steps},
        {"burn_in_steps", c.classical.burn_in_steps},
        {"initial", enum_name(c.classical.initial, kEnsembleNames)}}},
      {"lindblad",
       {{"beta_p", c.lindblad.beta_p},
        {"beta_q", c.lindblad.beta_q},
        {"xi", c.lindblad.xi},
        {"kind", enum_name(c.lindblad.kinds, kRegionNames)},
        {"choi", c.lindblad.choi},
        {"choi_dt", c.lindblad.choi_dt},
        {"boundary_samples", c.lindblad.boundary_samples},
        {"boundary_x_max", c.lindblad.boundary_x_max}}},
      {"friction",
       {{"channel", enum_name(c.friction.channel, kChannelNames)},
        {"hermitian", c.friction.hermitian},
        {"route", enum_name(c.friction.route, kRouteNames)},
        {"order", c.friction.order}}},
  };
  json sweep = {{"axis", enum_name(c.sweep.axis, kAxisNames)}, {"threads", c.sweep.threads}};
  if (c.sweep.axis == SweepAxis::Model) {
    sweep["values"] = c.sweep.models;
  } else {
    sweep["values"] = c.sweep.values;
  }
  doc["sweep"] = sweep;
  return doc.dump();
}

ClassicalParams classical_params(const RunConfig& c) {
  ClassicalParams p;
  p.mass = c.model.mass;
  p.omega = c.model.omega;
  p.kb = c.model.kb;
  p.temperature = c.model.temperature;
  p.beta_p = c.model.beta_p;
  p.beta_q = c.model.beta_q;
  p.force = c.model.force;
  p.dt = c.classical.dt;
  p.n_steps = c.classical.steps;
  p.n_trajectories = c.classical.trajectories;
  p.burn_in_steps = c.classical.burn_in_steps;
  p.window_steps = c.classical.window_steps;
  p.seed = c.seed;
  p.initial = c.classical.initial;
  return p;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return config_to_json(a) == config_to_json(b);
}

}  // namespace qthermo::cli
