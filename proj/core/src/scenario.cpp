#include "ajam/harness/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ajam/error.hpp"

namespace ajam {

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::greedy: return "greedy";
    case AgentKind::qlearn: return "qlearn";
    case AgentKind::dqn: return "dqn";
    case AgentKind::fastdqn: return "fastdqn";
  }
  return "?";
}

AgentKind agent_kind_from_string(const std::string& name) {
  for (AgentKind k : all_agent_kinds()) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("agents", "unknown agent '" + name + "'");
}

const std::vector<AgentKind>& all_agent_kinds() {
  static const std::vector<AgentKind> kinds = {AgentKind::greedy, AgentKind::qlearn,
                                               AgentKind::dqn, AgentKind::fastdqn};
  return kinds;
}

void Scenario::sync() {
  env.n_jammers = static_cast<int>(jammers.size());
  env.interference_probs.resize(topology.interferers.size(), 0.0);
  dqn.schedule = schedule;
}

void Scenario::validate() const {
  env.validate();
  topology.validate();
  if (env.n_jammers != static_cast<int>(jammers.size())) {
    throw ConfigError("env.n_jammers", "must equal the number of jammers");
  }
  if (env.interference_probs.size() != topology.interferers.size()) {
    throw ConfigError("topology.interferers", "one probability per interference source required");
  }
  for (std::size_t i = 0; i < env.interference_probs.size(); ++i) {
    double p = env.interference_probs[i];
    if (!(p >= 0 && p <= 1)) {
      throw ConfigError("topology.interferers[" + std::to_string(i) + "].prob",
                        "probability must lie in [0, 1]");
    }
  }
  const int n_nodes = static_cast<int>(topology.nodes.size());
  for (std::size_t j = 0; j < jammers.size(); ++j) {
    jammers[j].validate(env.n_channels, n_nodes, "jammers[" + std::to_string(j) + "]");
  }
  if (start_location < 0 || start_location >= static_cast<int>(topology.locations.size())) {
    throw ConfigError("topology.start_location", "unknown device location");
  }
  if (agents.empty()) throw ConfigError("agents", "at least one agent required");
  if (slots_per_episode < 1) throw ConfigError("slots_per_episode", "must be >= 1");
  if (n_episodes < 1) throw ConfigError("episodes", "must be >= 1");
  if (!(feedback_loss_prob >= 0 && feedback_loss_prob <= 1)) {
    throw ConfigError("feedback_loss.prob", "probability must lie in [0, 1]");
  }
  if (pattern_dwell < 1) throw ConfigError("patterns.dwell", "must be >= 1");
  if (!patterns.empty()) {
    if (static_cast<int>(patterns.size()) != env.n_patterns) {
      throw ConfigError("patterns.list", "expected " + std::to_string(env.n_patterns) +
                                             " patterns (env.n_patterns), got " +
                                             std::to_string(patterns.size()));
    }
    validate_patterns(patterns, env);
  }
  for (const auto& [ramp, key] : {std::pair{&schedule.epsilon, "learning.epsilon"},
                                  std::pair{&schedule.alpha, "learning.alpha"},
                                  std::pair{&schedule.gamma, "learning.gamma"}}) {
    if (ramp->slots < 0) throw ConfigError(std::string(key) + ".slots", "must be >= 0");
    for (double v : {ramp->start, ramp->end}) {
      if (!(v >= 0 && v <= 1)) throw ConfigError(key, "values must lie in [0, 1]");
    }
  }
  if (!(schedule.sgd_scale > 0)) throw ConfigError("learning.sgd_scale", "must be > 0");
  try {
    dqn.validate();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    auto colon = msg.find(':');
    throw ConfigError(msg.substr(0, colon), colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  if (dqn.n_macros > env.n_strategies()) {
    throw ConfigError("dqn.n_macros", "must not exceed the strategy count 2(L+1)");
  }
  if (curve_window < 1) throw ConfigError("report.curve_window", "must be >= 1");
  if (summary_window < 1 || summary_window > slots_per_episode) {
    throw ConfigError("report.summary_window", "must lie in [1, slots_per_episode]");
  }
}

// ---------------------------------------------------------------- built-ins

namespace {

Topology apartment_topology() {
  Topology t;
  t.nodes = {{"door-sensor", {0.5, 0.4}},
             {"smart-tv", {6.0, 1.0}},
             {"refrigerator", {7.5, 5.5}},
             {"air-conditioner", {1.0, 6.0}}};
  t.locations = {{"hall", {1.5, 1.5}, 0},
                 {"living-room", {5.0, 2.0}, 1},
                 {"kitchen", {6.5, 4.5}, 2},
                 {"bedroom", {2.0, 5.0}, 3}};
  t.interferers = {{"microwave", {7.0, 4.0}, {2, 3}}};
  return t;
}

Topology office_topology() {
  Topology t;
  t.nodes = {{"ap-1", {2.5, 2.5}}, {"ap-2", {10.0, 4.5}}};
  t.locations = {{"desk-1", {3.0, 3.0}, 0}, {"desk-2", {9.5, 4.0}, 1}};
  t.interferers = {{"microwave", {1.6, 4.6}, {0}}, {"usrp", {11.5, 5.1}, {1}}};
  return t;
}

Scenario base_scenario() {
  Scenario s;
  s.env.n_channels = 32;
  s.env.sinr_levels = 4;
  s.pattern_dwell = 10;
  s.pattern_select = PatternSelect::fixed;
  return s;
}

Scenario apartment() {
  Scenario s = base_scenario();
  s.name = "apartment";
  s.topology = apartment_topology();
  JammerConfig random;
  random.kind = JammerKind::random;
  random.name = "random";
  random.stay_prob = 0.9;
  random.position = {1.0, 2.5};
  random.reach = {0, 1};
  JammerConfig sweep;
  sweep.kind = JammerKind::sweep;
  sweep.name = "sweep";
  sweep.n_sweep = 4;
  sweep.position = {3.0, 0.5};
  sweep.reach = {0, 3};
  s.jammers = {random, sweep};
  s.env.interference_probs = {0.05};
  s.sync();
  return s;
}

Scenario office() {
  Scenario s = base_scenario();
  s.name = "office";
  s.topology = office_topology();
  JammerConfig random;
  random.kind = JammerKind::random;
  random.name = "random";
  random.stay_prob = 0.9;
  random.position = {3.2, 0.9};
  random.reach = {0};
  JammerConfig reactive;
  reactive.kind = JammerKind::reactive;
  reactive.name = "reactive";
  reactive.n_monitor = 8;
  reactive.position = {9.5, 3.1};
  reactive.reach = {1};
  s.jammers = {random, reactive};
  s.env.interference_probs = {0.1, 0.05};
  s.sync();
  return s;
}

Scenario office_mobile() {
  Scenario s = office();
  s.name = "office-mobile";
  for (auto& j : s.jammers) {
    j.mobile = true;
    j.move_prob = 0.8;
    j.move_period = 200;
  }
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = {"apartment", "office", "office-mobile"};
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "apartment") return apartment();
  if (name == "office") return office();
  if (name == "office-mobile") return office_mobile();
  throw ConfigError("scenario", "unknown built-in scenario '" + name + "'");
}

// ------------------------------------------------------------------ parsing

namespace {

// A YAML mapping with its dotted path; rejects keys nobody asked for.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) throw ConfigError(where(), "expected a mapping");
  }

  std::string where(const std::string& key = "") const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_ && node_.IsMap() ? node_[key] : YAML::Node();
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    out = convert<T>(node_[key], where(key));
  }

  template <typename T>
  static T convert(const YAML::Node& n, const std::string& where) {
    if (!n.IsScalar()) throw ConfigError(where, "expected a scalar");
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(where, "cannot read '" + n.Scalar() + "' as " + type_name<T>());
    }
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError(where(key), "unknown key");
    }
  }

 private:
  template <typename T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else if constexpr (std::is_integral_v<T>) return "an integer";
    else if constexpr (std::is_floating_point_v<T>) return "a number";
    else return "a string";
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename T>
std::vector<T> read_list(const YAML::Node& n, const std::string& where) {
  if (!n || n.IsNull()) return {};
  if (!n.IsSequence()) throw ConfigError(where, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(Section::convert<T>(n[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void for_each_item(const YAML::Node& n, const std::string& where,
                   const std::function<void(Section&, std::size_t)>& fn) {
  if (!n || n.IsNull()) return;
  if (!n.IsSequence()) throw ConfigError(where, "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    Section item(n[i], where + "[" + std::to_string(i) + "]");
    fn(item, i);
    item.finish();
  }
}

void read_point(Section& s, Point& p) {
  s.get("x", p.x);
  s.get("y", p.y);
}

void read_ramp(Section& parent, const std::string& key, Ramp& ramp) {
  if (!parent.has(key)) return;
  Section s(parent.raw(key), parent.where(key));
  s.get("start", ramp.start);
  s.get("end", ramp.end);
  s.get("slots", ramp.slots);
  s.finish();
}

PatternSelect pattern_select_from(const std::string& v, const std::string& where) {
  if (v == "random") return PatternSelect::random;
  if (v == "fixed") return PatternSelect::fixed;
  throw ConfigError(where, "expected 'random' or 'fixed', got '" + v + "'");
}

FeedbackLoss feedback_loss_from(const std::string& v, const std::string& where) {
  if (v == "off") return FeedbackLoss::off;
  if (v == "zero-sinr") return FeedbackLoss::zero_sinr;
  throw ConfigError(where, "expected 'off' or 'zero-sinr', got '" + v + "'");
}

void read_env(Section& s, EnvConfig& e) {
  s.get("n_channels", e.n_channels);
  s.get("max_power", e.max_power);
  s.get("power_levels", e.power_levels);
  s.get("noise", e.noise);
  s.get("interference_power", e.interference_power);
  s.get("jam_power", e.jam_power);
  s.get("cost_move", e.cost_move);
  s.get("cost_hop", e.cost_hop);
  s.get("cost_tx_unit", e.cost_tx_unit);
  s.get("n_patterns", e.n_patterns);
  s.get("pattern_len", e.pattern_len);
  s.get("gain_refresh_period", e.gain_refresh_period);
  s.get("pu_active", e.pu_active);
  s.get("sinr_levels", e.sinr_levels);
  s.get("sinr_max", e.sinr_max);
}

void read_jammer(Section& s, JammerConfig& j, double default_power) {
  std::string kind = "random";
  s.get("kind", kind);
  try {
    j.kind = jammer_kind_from_string(kind);
  } catch (const ConfigError&) {
    throw ConfigError(s.where("kind"), "unknown jammer kind '" + kind + "'");
  }
  j.jam_power = default_power;
  s.get("name", j.name);
  s.get("stay_prob", j.stay_prob);
  s.get("n_sweep", j.n_sweep);
  s.get("n_monitor", j.n_monitor);
  s.get("power", j.jam_power);
  s.get("threshold", j.threshold);
  s.get("start_channel", j.start_channel);
  read_point(s, j.position);
  j.reach = read_list<int>(s.raw("reach"), s.where("reach"));
  s.get("mobile", j.mobile);
  s.get("move_prob", j.move_prob);
  s.get("move_period", j.move_period);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(origin, std::string("YAML syntax error: ") + e.what());
  }

  Scenario sc;
  Section top(root, "");
  if (top.has("base")) {
    sc = builtin_scenario(Section::convert<std::string>(top.raw("base"), "base"));
  }
  top.get("name", sc.name);
  top.get("slots_per_episode", sc.slots_per_episode);
  top.get("episodes", sc.n_episodes);
  top.get("seed", sc.seed);
  if (top.has("agents")) {
    sc.agents.clear();
    const auto names = read_list<std::string>(top.raw("agents"), "agents");
    for (std::size_t i = 0; i < names.size(); ++i) {
      try {
        sc.agents.push_back(agent_kind_from_string(names[i]));
      } catch (const ConfigError&) {
        throw ConfigError("agents[" + std::to_string(i) + "]", "unknown agent '" + names[i] + "'");
      }
    }
  }

  if (top.has("feedback_loss")) {
    Section s(top.raw("feedback_loss"), "feedback_loss");
    std::string mode = sc.feedback_loss == FeedbackLoss::off ? "off" : "zero-sinr";
    s.get("mode", mode);
    sc.feedback_loss = feedback_loss_from(mode, "feedback_loss.mode");
    s.get("prob", sc.feedback_loss_prob);
    s.finish();
  }

  if (top.has("env")) {
    Section s(top.raw("env"), "env");
    read_env(s, sc.env);
    s.finish();
  }

  if (top.has("patterns")) {
    Section s(top.raw("patterns"), "patterns");
    if (s.has("select")) {
      sc.pattern_select = pattern_select_from(
          Section::convert<std::string>(s.raw("select"), "patterns.select"), "patterns.select");
    }
    s.get("dwell", sc.pattern_dwell);
    if (s.has("list")) {
      YAML::Node list = s.raw("list");
      if (!list.IsSequence()) throw ConfigError("patterns.list", "expected a list of lists");
      sc.patterns.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "patterns[" + std::to_string(i) + "]";
        sc.patterns.push_back({read_list<int>(list[i], where)});
      }
    }
    s.finish();
  }

  if (top.has("topology")) {
    Section s(top.raw("topology"), "topology");
    s.get("start_location", sc.start_location);
    if (s.has("nodes")) {
      sc.topology.nodes.clear();
      for_each_item(s.raw("nodes"), "topology.nodes", [&](Section& item, std::size_t) {
        RadioNode n;
        item.get("name", n.name);
        read_point(item, n.position);
        sc.topology.nodes.push_back(n);
      });
    }
    if (s.has("locations")) {
      sc.topology.locations.clear();
      for_each_item(s.raw("locations"), "topology.locations", [&](Section& item, std::size_t) {
        DeviceLocation l;
        item.get("name", l.name);
        read_point(item, l.position);
        if (!item.has("node")) throw ConfigError(item.where("node"), "required");
        item.get("node", l.node);
        sc.topology.locations.push_back(l);
      });
    }
    if (s.has("interferers")) {
      sc.topology.interferers.clear();
      sc.env.interference_probs.clear();
      for_each_item(s.raw("interferers"), "topology.interferers", [&](Section& item, std::size_t) {
        Interferer f;
        double prob = 0.0;
        item.get("name", f.name);
        read_point(item, f.position);
        item.get("prob", prob);
        f.reach = read_list<int>(item.raw("reach"), item.where("reach"));
        sc.topology.interferers.push_back(f);
        sc.env.interference_probs.push_back(prob);
      });
    }
    s.finish();
  }

  if (top.has("jammers")) {
    sc.jammers.clear();
    for_each_item(top.raw("jammers"), "jammers", [&](Section& item, std::size_t) {
      JammerConfig j;
      read_jammer(item, j, sc.env.jam_power);
      sc.jammers.push_back(j);
    });
  }

  if (top.has("learning")) {
    Section s(top.raw("learning"), "learning");
    read_ramp(s, "epsilon", sc.schedule.epsilon);
    read_ramp(s, "alpha", sc.schedule.alpha);
    read_ramp(s, "gamma", sc.schedule.gamma);
    s.get("sgd_scale", sc.schedule.sgd_scale);
    s.finish();
  }

  if (top.has("dqn")) {
    Section s(top.raw("dqn"), "dqn");
    s.get("window", sc.dqn.window);
    s.get("minibatch", sc.dqn.minibatch);
    s.get("replay_capacity", sc.dqn.replay_capacity);
    s.get("max_grad_norm", sc.dqn.max_grad_norm);
    s.get("hotboot_episodes", sc.dqn.hotboot_episodes);
    s.get("hotboot_slots", sc.dqn.hotboot_slots);
    s.get("explore_slots", sc.dqn.explore_slots);
    s.get("n_macros", sc.dqn.n_macros);
    s.get("macro_len", sc.dqn.macro_len);
    s.get("exploration_in_curve", sc.dqn.exploration_in_curve);
    s.finish();
  }

  if (top.has("greedy")) {
    Section s(top.raw("greedy"), "greedy");
    s.get("explore", sc.greedy_explore);
    s.finish();
  }

  if (top.has("report")) {
    Section s(top.raw("report"), "report");
    s.get("curve_window", sc.curve_window);
    s.get("summary_window", sc.summary_window);
    s.finish();
  }
  top.finish();

  sc.sync();
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& ref) {
  namespace fs = std::filesystem;
  if (!fs::exists(ref)) {
    for (const auto& n : builtin_scenario_names()) {
      if (n == ref) {
        Scenario s = builtin_scenario(ref);
        s.validate();
        return s;
      }
    }
    throw ConfigError("scenario", "no such file or built-in scenario: " + ref);
  }
  std::ifstream in(ref);
  if (!in) throw std::runtime_error("cannot read " + ref);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), ref);
}

// ------------------------------------------------------------------ dumping

namespace {

YAML::Emitter& point(YAML::Emitter& out, const Point& p) {
  return out << YAML::Key << "x" << YAML::Value << p.x << YAML::Key << "y" << YAML::Value << p.y;
}

void ramp(YAML::Emitter& out, const char* key, const Ramp& r) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "start"
      << YAML::Value << r.start << YAML::Key << "end" << YAML::Value << r.end << YAML::Key
      << "slots" << YAML::Value << r.slots << YAML::EndMap;
}

}  // namespace

std::string dump_scenario(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "slots_per_episode" << YAML::Value << s.slots_per_episode;
  out << YAML::Key << "episodes" << YAML::Value << s.n_episodes;
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "agents" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (AgentKind a : s.agents) out << to_string(a);
  out << YAML::EndSeq;
  out << YAML::Key << "feedback_loss" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "mode" << YAML::Value
      << (s.feedback_loss == FeedbackLoss::off ? "off" : "zero-sinr") << YAML::Key << "prob"
      << YAML::Value << s.feedback_loss_prob << YAML::EndMap;

  const EnvConfig& e = s.env;
  out << YAML::Key << "env" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_channels" << YAML::Value << e.n_channels;
  out << YAML::Key << "max_power" << YAML::Value << e.max_power;
  out << YAML::Key << "power_levels" << YAML::Value << e.power_levels;
  out << YAML::Key << "noise" << YAML::Value << e.noise;
  out << YAML::Key << "interference_power" << YAML::Value << e.interference_power;
  out << YAML::Key << "jam_power" << YAML::Value << e.jam_power;
  out << YAML::Key << "cost_move" << YAML::Value << e.cost_move;
  out << YAML::Key << "cost_hop" << YAML::Value << e.cost_hop;
  out << YAML::Key << "cost_tx_unit" << YAML::Value << e.cost_tx_unit;
  out << YAML::Key << "n_patterns" << YAML::Value << e.n_patterns;
  out << YAML::Key << "pattern_len" << YAML::Value << e.pattern_len;
  out << YAML::Key << "gain_refresh_period" << YAML::Value << e.gain_refresh_period;
  out << YAML::Key << "pu_active" << YAML::Value << e.pu_active;
  out << YAML::Key << "sinr_levels" << YAML::Value << e.sinr_levels;
  out << YAML::Key << "sinr_max" << YAML::Value << e.sinr_max;
  out << YAML::EndMap;

  out << YAML::Key << "patterns" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "select" << YAML::Value
      << (s.pattern_select == PatternSelect::random ? "random" : "fixed");
  out << YAML::Key << "dwell" << YAML::Value << s.pattern_dwell;
  if (!s.patterns.empty()) {
    out << YAML::Key << "list" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : s.patterns) out << YAML::Flow << p.entries;
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start_location" << YAML::Value << s.start_location;
  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
  for (const auto& n : s.topology.nodes) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << n.name;
    point(out, n.position) << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "locations" << YAML::Value << YAML::BeginSeq;
  for (const auto& l : s.topology.locations) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << l.name;
    point(out, l.position) << YAML::Key << "node" << YAML::Value << l.node << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "interferers" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < s.topology.interferers.size(); ++i) {
    const auto& f = s.topology.interferers[i];
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << f.name;
    point(out, f.position) << YAML::Key << "prob" << YAML::Value << s.env.interference_probs[i]
                           << YAML::Key << "reach" << YAML::Value << YAML::Flow << f.reach
                           << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "jammers" << YAML::Value << YAML::BeginSeq;
  for (const auto& j : s.jammers) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << j.name;
    out << YAML::Key << "kind" << YAML::Value << to_string(j.kind);
    if (j.kind == JammerKind::random) out << YAML::Key << "stay_prob" << YAML::Value << j.stay_prob;
    if (j.kind == JammerKind::sweep) out << YAML::Key << "n_sweep" << YAML::Value << j.n_sweep;
    if (j.kind == JammerKind::reactive) {
      out << YAML::Key << "n_monitor" << YAML::Value << j.n_monitor;
      out << YAML::Key << "threshold" << YAML::Value << j.threshold;
    }
    out << YAML::Key << "power" << YAML::Value << j.jam_power;
    out << YAML::Key << "start_channel" << YAML::Value << j.start_channel;
    point(out, j.position);
    out << YAML::Key << "reach" << YAML::Value << YAML::Flow << j.reach;
    out << YAML::Key << "mobile" << YAML::Value << j.mobile;
    out << YAML::Key << "move_prob" << YAML::Value << j.move_prob;
    out << YAML::Key << "move_period" << YAML::Value << j.move_period;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "learning" << YAML::Value << YAML::BeginMap;
  ramp(out, "epsilon", s.schedule.epsilon);
  ramp(out, "alpha", s.schedule.alpha);
  ramp(out, "gamma", s.schedule.gamma);
  out << YAML::Key << "sgd_scale" << YAML::Value << s.schedule.sgd_scale;
  out << YAML::EndMap;

  const DqnConfig& d = s.dqn;
  out << YAML::Key << "dqn" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "window" << YAML::Value << d.window;
  out << YAML::Key << "minibatch" << YAML::Value << d.minibatch;
  out << YAML::Key << "replay_capacity" << YAML::Value << d.replay_capacity;
  out << YAML::Key << "max_grad_norm" << YAML::Value << d.max_grad_norm;
  out << YAML::Key << "hotboot_episodes" << YAML::Value << d.hotboot_episodes;
  out << YAML::Key << "hotboot_slots" << YAML::Value << d.hotboot_slots;
  out << YAML::Key << "explore_slots" << YAML::Value << d.explore_slots;
  out << YAML::Key << "n_macros" << YAML::Value << d.n_macros;
  out << YAML::Key << "macro_len" << YAML::Value << d.macro_len;
  out << YAML::Key << "exploration_in_curve" << YAML::Value << d.exploration_in_curve;
  out << YAML::EndMap;

  out << YAML::Key << "greedy" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
      << "explore" << YAML::Value << s.greedy_explore << YAML::EndMap;
  out << YAML::Key << "report" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
      << "curve_window" << YAML::Value << s.curve_window << YAML::Key << "summary_window"
      << YAML::Value << s.summary_window << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace ajam
