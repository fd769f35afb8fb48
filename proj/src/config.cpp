#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "casplit/oracle.hpp"
#include "casplit/scenario.hpp"

namespace casplit {

namespace pt = boost::property_tree;

namespace {

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt_table(const RuleTable& t) {
  return fmt(t[0][0]) + "," + fmt(t[0][1]) + "," + fmt(t[1][0]) + "," + fmt(t[1][1]);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

// Reads one section, remembering which keys were consumed so leftovers can be rejected.
class Section {
 public:
  Section(const pt::ptree* node, std::string name) : node_(node), name_(std::move(name)) {}

  bool present() const { return node_ != nullptr; }

  template <class F>
  void with(const std::string& key, F&& f) {
    if (!node_) return;
    auto it = node_->find(key);
    if (it == node_->not_found()) return;
    used_.insert(key);
    const std::string raw = trim(it->second.get_value<std::string>());
    try {
      f(raw);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(name_ + "." + key, e.what());
    }
  }

  void num(const std::string& key, double& out) {
    with(key, [&](const std::string& s) { out = parse_double(s); });
  }
  void num(const std::string& key, int& out) {
    with(key, [&](const std::string& s) { out = static_cast<int>(parse_int(s)); });
  }
  void num(const std::string& key, std::uint64_t& out) {
    with(key, [&](const std::string& s) {
      const long long v = parse_int(s);
      if (v < 0) throw std::invalid_argument("must be non-negative");
      out = static_cast<std::uint64_t>(v);
    });
  }
  void flag(const std::string& key, bool& out) {
    with(key, [&](const std::string& s) {
      if (s == "true" || s == "1" || s == "yes") out = true;
      else if (s == "false" || s == "0" || s == "no") out = false;
      else throw std::invalid_argument("expected true|false, got '" + s + "'");
    });
  }
  void table(const std::string& key, RuleTable& out) {
    with(key, [&](const std::string& s) {
      std::vector<double> v;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) v.push_back(parse_double(trim(item)));
      if (v.size() != 4) throw std::invalid_argument("expected 4 comma-separated numbers");
      out = RuleTable{{{v[0], v[1]}, {v[2], v[3]}}};
    });
  }

  void reject_unknown() const {
    if (!node_) return;
    for (const auto& kv : *node_)
      if (!used_.count(kv.first)) throw ConfigError(name_ + "." + kv.first, "unknown key");
  }

  static double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
  }
  static long long parse_int(const std::string& s) {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
  }

 private:
  const pt::ptree* node_;
  std::string name_;
  std::set<std::string> used_;
};

void read_carrier(Section& s, CarrierConfig& c) {
  s.num("frequency_ghz", c.frequency_ghz);
  s.num("bandwidth_mhz", c.bandwidth_mhz);
  s.num("tx_power_dbm", c.tx_power_dbm);
  s.num("rho", c.rho);
  s.num("sigma2", c.sigma2);
  s.num("n_th", c.n_th);
  s.with("fading", [&](const std::string& v) { c.fading = parse_fading(v); });
  s.with("path_loss", [&](const std::string& v) { c.path_loss = parse_path_loss(v); });
  s.num("fixed_loss_db", c.fixed_loss_db);
  s.flag("link_budget", c.link_budget);
  s.num("noise_figure_db", c.noise_figure_db);
  s.num("antenna_gain_db", c.antenna_gain_db);
  s.reject_unknown();
}

void write_carrier(std::ostream& os, const std::string& name, const CarrierConfig& c) {
  os << "[" << name << "]\n"
     << "frequency_ghz = " << fmt(c.frequency_ghz) << "\n"
     << "bandwidth_mhz = " << fmt(c.bandwidth_mhz) << "\n"
     << "tx_power_dbm = " << fmt(c.tx_power_dbm) << "\n"
     << "rho = " << fmt(c.rho) << "\n"
     << "sigma2 = " << fmt(c.sigma2) << "\n"
     << "n_th = " << fmt(c.n_th) << "\n"
     << "fading = " << to_string(c.fading) << "\n"
     << "path_loss = " << to_string(c.path_loss) << "\n"
     << "fixed_loss_db = " << fmt(c.fixed_loss_db) << "\n"
     << "link_budget = " << (c.link_budget ? "true" : "false") << "\n"
     << "noise_figure_db = " << fmt(c.noise_figure_db) << "\n"
     << "antenna_gain_db = " << fmt(c.antenna_gain_db) << "\n\n";
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }

  std::map<std::string, const pt::ptree*> sec;
  for (const auto& kv : root) {
    if (kv.second.empty() && !kv.second.data().empty())
      throw ConfigError(kv.first, "key outside of any section");
    sec[kv.first] = &kv.second;
  }
  auto get = [&](const std::string& name) {
    auto it = sec.find(name);
    return Section(it == sec.end() ? nullptr : it->second, name);
  };

  for (const char* req : {"carriers.pcc", "carriers.scc"})
    if (!sec.count(req)) throw ConfigError(req, "missing required section");

  ScenarioConfig c = static_scenario(1);
  std::string arrival;

  auto run = get("run");
  run.with("name", [&](const std::string& v) { c.name = v; });
  run.num("max_slots", c.max_slots);
  run.num("seed", c.seed);
  run.num("slot_duration_s", c.slot_duration);
  run.reject_unknown();

  auto ch = get("channel");
  ch.num("n_scc", c.n_scc);
  ch.num("d_xn", c.d_xn);
  ch.num("secondary_offset_m", c.trajectory.secondary_offset_m);
  ch.reject_unknown();
  if (c.n_scc < 1 || c.n_scc > 64) throw ConfigError("channel.n_scc", "must be in [1, 64]");

  auto wl = get("workload");
  wl.with("arrival", [&](const std::string& v) { c.workload.mode = parse_arrival(v); });
  wl.num("packets", c.workload.packets);
  bool rate_given = false;
  wl.with("rate", [&](const std::string& v) {
    const long long r = Section::parse_int(v);
    if (r < 0) throw std::invalid_argument("must be non-negative");
    c.workload.rate = static_cast<std::uint64_t>(r);
    rate_given = true;
  });
  wl.num("quantum", c.quantum);
  wl.reject_unknown();
  if (c.workload.mode == ArrivalMode::PerSlot && !rate_given)
    c.workload.rate = static_cast<std::uint64_t>(c.quantum) * (c.n_scc + 1);

  auto pcc = get("carriers.pcc");
  c.pcc = default_pcc();
  read_carrier(pcc, c.pcc);
  CarrierConfig scc_base = default_scc();
  auto scc = get("carriers.scc");
  read_carrier(scc, scc_base);
  c.scc.assign(c.n_scc, scc_base);
  for (const auto& [name, node] : sec) {
    if (name.rfind("carriers.scc", 0) != 0 || name == "carriers.scc") continue;
    const std::string idx = name.substr(12);
    std::size_t i = 0;
    try {
      i = static_cast<std::size_t>(Section::parse_int(idx));
    } catch (const std::exception&) {
      throw ConfigError(name, "unknown section");
    }
    if (i < 1 || i > c.n_scc) throw ConfigError(name, "SCC index outside 1..n_scc");
    Section s(node, name);
    read_carrier(s, c.scc[i - 1]);
  }
  c.pcc.kind = CarrierKind::Pcc;
  for (auto& s : c.scc) s.kind = CarrierKind::Scc;

  auto tr = get("trajectory");
  tr.with("kind", [&](const std::string& v) { c.trajectory.kind = parse_trajectory(v); });
  tr.num("distance_m", c.trajectory.distance_m);
  tr.num("speed_mps", c.trajectory.speed_mps);
  tr.num("turn_s", c.trajectory.turn_s);
  tr.reject_unknown();

  auto ct = get("controller");
  auto& k = c.controller;
  ct.with("policy", [&](const std::string& v) { k.policy = parse_policy(v); });
  ct.num("horizon", k.horizon);
  ct.num("b_max", k.b_max);
  ct.with("variant", [&](const std::string& v) { k.variant = parse_variant(v); });
  ct.with("second_segment", [&](const std::string& v) { k.second_segment = parse_second_segment(v); });
  ct.num("kp", k.k0.kp);
  ct.num("ki", k.k0.ki);
  ct.num("kd", k.k0.kd);
  ct.num("k_min", k.fuzzy.k_min);
  ct.num("k_max", k.fuzzy.k_max);
  ct.num("membership_width", k.fuzzy.membership_width);
  ct.table("tp", k.fuzzy.tp);
  ct.table("ti", k.fuzzy.ti);
  ct.table("td", k.fuzzy.td);
  ct.num("u0", k.u0);
  ct.num("q_bins", k.q_bins);
  ct.num("q_epsilon", k.q_epsilon);
  ct.num("q_learn_rate", k.q_learn_rate);
  ct.num("q_discount", k.q_discount);
  ct.num("ltr_ewma", k.ltr.ewma);
  ct.num("ltr_eps_rate", k.ltr.eps_rate);
  ct.reject_unknown();

  static const std::set<std::string> known{"run", "channel", "workload", "carriers.pcc",
                                           "carriers.scc", "trajectory", "controller"};
  for (const auto& [name, node] : sec)
    if (!known.count(name) && name.rfind("carriers.scc", 0) != 0) throw ConfigError(name, "unknown section");

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const ScenarioConfig& c) {
  std::ostringstream os;
  const auto& k = c.controller;
  os << "[run]\n"
     << "name = " << c.name << "\n"
     << "max_slots = " << c.max_slots << "\n"
     << "seed = " << c.seed << "\n"
     << "slot_duration_s = " << fmt(c.slot_duration) << "\n\n"
     << "[channel]\n"
     << "n_scc = " << c.n_scc << "\n"
     << "d_xn = " << c.d_xn << "\n"
     << "secondary_offset_m = " << fmt(c.trajectory.secondary_offset_m) << "\n\n"
     << "[workload]\n"
     << "arrival = " << to_string(c.workload.mode) << "\n"
     << "packets = " << c.workload.packets << "\n"
     << "rate = " << c.workload.rate << "\n"
     << "quantum = " << c.quantum << "\n\n";
  write_carrier(os, "carriers.pcc", c.pcc);
  write_carrier(os, "carriers.scc", c.scc.empty() ? default_scc() : c.scc[0]);
  for (std::size_t i = 1; i < c.scc.size(); ++i) write_carrier(os, "carriers.scc" + std::to_string(i + 1), c.scc[i]);
  os << "[trajectory]\n"
     << "kind = " << to_string(c.trajectory.kind) << "\n"
     << "distance_m = " << fmt(c.trajectory.distance_m) << "\n"
     << "speed_mps = " << fmt(c.trajectory.speed_mps) << "\n"
     << "turn_s = " << fmt(c.trajectory.turn_s) << "\n\n"
     << "[controller]\n"
     << "policy = " << to_string(k.policy) << "\n"
     << "horizon = " << k.horizon << "\n"
     << "b_max = " << fmt(k.b_max) << "\n"
     << "variant = " << to_string(k.variant) << "\n"
     << "second_segment = " << to_string(k.second_segment) << "\n"
     << "kp = " << fmt(k.k0.kp) << "\n"
     << "ki = " << fmt(k.k0.ki) << "\n"
     << "kd = " << fmt(k.k0.kd) << "\n"
     << "k_min = " << fmt(k.fuzzy.k_min) << "\n"
     << "k_max = " << fmt(k.fuzzy.k_max) << "\n"
     << "membership_width = " << fmt(k.fuzzy.membership_width) << "\n"
     << "tp = " << fmt_table(k.fuzzy.tp) << "\n"
     << "ti = " << fmt_table(k.fuzzy.ti) << "\n"
     << "td = " << fmt_table(k.fuzzy.td) << "\n"
     << "u0 = " << fmt(k.u0) << "\n"
     << "q_bins = " << k.q_bins << "\n"
     << "q_epsilon = " << fmt(k.q_epsilon) << "\n"
     << "q_learn_rate = " << fmt(k.q_learn_rate) << "\n"
     << "q_discount = " << fmt(k.q_discount) << "\n"
     << "ltr_ewma = " << fmt(k.ltr.ewma) << "\n"
     << "ltr_eps_rate = " << fmt(k.ltr.eps_rate) << "\n";
  return os.str();
}

}  // namespace casplit

namespace casplit {

namespace {

std::vector<long long> int_list(const std::string& s) {
  std::vector<long long> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(Section::parse_int(trim(item)));
  if (v.empty()) throw std::invalid_argument("empty list");
  return v;
}

}  // namespace

OracleFile parse_oracle_file(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  auto find = [&](const std::string& name) -> const pt::ptree* {
    auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
  };
  for (const auto& kv : root)
    if (kv.first != "instance" && kv.first != "identity") throw ConfigError(kv.first, "unknown section");
  if (!find("instance")) throw ConfigError("instance", "missing required section");

  OracleFile f;
  auto& in = f.instance;
  Section s(find("instance"), "instance");
  s.num("packets", in.packets);
  s.num("n_scc", in.n_scc);
  s.num("d_xn", in.d_xn);
  s.num("max_slots", in.max_slots);
  s.flag("unrestricted", in.unrestricted);
  s.num("quantum_pcc", in.quanta.pcc);
  s.num("quantum_scc", in.quanta.scc);
  in.capacity.assign(in.n_scc + 1, {});
  auto row = [&](const std::string& key, std::size_t c) {
    s.with(key, [&](const std::string& v) {
      for (auto x : int_list(v)) in.capacity[c].push_back(static_cast<int>(x));
    });
    if (in.capacity[c].empty()) throw ConfigError("instance." + key, "missing capacity row");
  };
  row("cap_pcc", 0);
  for (std::size_t c = 1; c <= in.n_scc; ++c) row("cap_scc" + std::to_string(c), c);
  s.reject_unknown();
  try {
    validate(in);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("instance", e.what());
  }

  if (const auto* node = find("identity")) {
    f.has_identity = true;
    auto& id = f.identity;
    id.n_scc = in.n_scc;
    Section t(node, "identity");
    t.num("horizon", id.horizon);
    t.num("cap_p", id.cap_p);
    t.num("cap_s", id.cap_s);
    t.with("preload", [&](const std::string& v) {
      for (auto x : int_list(v)) {
        if (x < 0) throw std::invalid_argument("preload must be non-negative");
        id.preload.push_back(static_cast<std::uint64_t>(x));
      }
      if (id.preload.size() != id.n_scc + 1) throw std::invalid_argument("need one preload per carrier");
    });
    t.with("strategies", [&](const std::string& v) {
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("strategy must be pcc:scc");
        StationaryStrategy st{static_cast<int>(Section::parse_int(trim(item.substr(0, colon)))),
                              static_cast<int>(Section::parse_int(trim(item.substr(colon + 1))))};
        if (st.pcc < 0 || st.scc < 0) throw std::invalid_argument("strategy counts must be >= 0");
        f.strategies.push_back(st);
      }
    });
    t.reject_unknown();
    if (f.strategies.empty()) throw ConfigError("identity.strategies", "at least one strategy required");
  }
  return f;
}

OracleFile load_oracle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open instance file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_oracle_file(ss.str());
}

}  // namespace casplit
