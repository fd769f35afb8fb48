#include "casplit/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace casplit {

void validate(const TinyInstance& inst) {
  if (inst.packets < 1 || inst.packets > kOracleMaxPackets)
    throw std::invalid_argument("oracle: L must be in [1, 14]");
  if (inst.n_scc < 1 || inst.n_scc > kOracleMaxScc)
    throw std::invalid_argument("oracle: n_scc must be in [1, 2]");
  if (inst.max_slots < 1 || inst.max_slots > kOracleMaxSlots)
    throw std::invalid_argument("oracle: max_slots must be in [1, 24]");
  if (inst.capacity.size() != inst.n_scc + 1)
    throw std::invalid_argument("oracle: need one capacity row per carrier");
  for (const auto& row : inst.capacity) {
    if (row.empty()) throw std::invalid_argument("oracle: empty capacity row");
    for (int c : row)
      if (c < 0 || c > 15) throw std::invalid_argument("oracle: capacity outside [0, 15]");
  }
  if (inst.d_xn < 0 || inst.d_xn > 8) throw std::invalid_argument("oracle: d_xn outside [0, 8]");
  if (inst.quanta.pcc < 1 || inst.quanta.scc < 1) throw std::invalid_argument("oracle: quanta must be >= 1");
}

namespace {

// Count-level state: [pdcp, rlc_0..rlc_n, xn_s[0..d] for each SCC, delivered]
struct Counts {
  std::size_t nc;
  int d;
  std::string v;

  Counts(std::size_t carriers, int d_xn)
      : nc(carriers), d(d_xn), v(1 + carriers + (carriers - 1) * (d_xn + 1) + 1, '\0') {}

  unsigned char& pdcp() { return reinterpret_cast<unsigned char&>(v[0]); }
  unsigned char& rlc(std::size_t c) { return reinterpret_cast<unsigned char&>(v[1 + c]); }
  unsigned char& xn(std::size_t s, int j) {
    return reinterpret_cast<unsigned char&>(v[1 + nc + (s - 1) * (d + 1) + j]);
  }
  unsigned char& delivered() { return reinterpret_cast<unsigned char&>(v.back()); }
};

int cap_at(const TinyInstance& inst, std::size_t c, Slot t) {
  const auto& row = inst.capacity[c];
  return row[t < row.size() ? t : row.size() - 1];
}

// Mirrors the simulator's phase order on counts.
int slot_step(Counts& s, const TinyInstance& inst, SplitAction a, Slot t) {
  auto take = [&](int q) {
    const int n = std::min<int>(q, s.pdcp());
    s.pdcp() -= static_cast<unsigned char>(n);
    return n;
  };
  if (a.a_p) s.rlc(0) += static_cast<unsigned char>(take(inst.quanta.pcc));
  if (a.a_s)
    for (std::size_t k = 1; k < s.nc; ++k) s.xn(k, s.d) += static_cast<unsigned char>(take(inst.quanta.scc));
  for (std::size_t k = 1; k < s.nc; ++k) {
    s.rlc(k) += s.xn(k, 0);
    s.xn(k, 0) = 0;
  }
  int got = 0;
  for (std::size_t c = 0; c < s.nc; ++c) {
    const int n = std::min<int>(cap_at(inst, c, t), s.rlc(c));
    s.rlc(c) -= static_cast<unsigned char>(n);
    got += n;
  }
  s.delivered() += static_cast<unsigned char>(got);
  for (std::size_t k = 1; k < s.nc; ++k) {
    for (int j = 0; j < s.d; ++j) s.xn(k, j) = s.xn(k, j + 1);
    s.xn(k, s.d) = 0;
  }
  return got;
}

struct Node {
  std::string key;
  std::int64_t parent;
  SplitAction action;
  int got;
};

}  // namespace

OracleResult brute_force_min_T(const TinyInstance& inst) {
  validate(inst);
  const std::size_t nc = inst.n_scc + 1;
  std::vector<SplitAction> actions{{1, 0}, {0, 1}};
  if (inst.unrestricted) actions = {{1, 0}, {0, 1}, {1, 1}, {0, 0}};

  Counts init(nc, inst.d_xn);
  init.pdcp() = static_cast<unsigned char>(inst.packets);

  std::vector<std::vector<Node>> layers;
  layers.push_back({{init.v, -1, {}, 0}});
  OracleResult res;
  for (Slot t = 0; t < inst.max_slots; ++t) {
    std::vector<Node> next;
    std::unordered_map<std::string, std::size_t> index;
    const auto& cur = layers.back();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (auto a : actions) {
        Counts s(nc, inst.d_xn);
        s.v = cur[i].key;
        const int got = slot_step(s, inst, a, t);
        ++res.states;
        if (index.count(s.v)) continue;
        index.emplace(s.v, next.size());
        next.push_back({s.v, static_cast<std::int64_t>(i), a, got});
        if (s.delivered() >= inst.packets) {
          layers.push_back(std::move(next));
          res.feasible = true;
          res.t_star = t + 1;
          std::int64_t at = static_cast<std::int64_t>(layers.back().size() - 1);
          for (std::size_t l = layers.size() - 1; l > 0; --l) {
            const Node& nd = layers[l][static_cast<std::size_t>(at)];
            res.witness.push_back(nd.action);
            res.throughput.push_back(static_cast<std::uint64_t>(nd.got));
            at = nd.parent;
          }
          std::reverse(res.witness.begin(), res.witness.end());
          std::reverse(res.throughput.begin(), res.throughput.end());
          return res;
        }
      }
    }
    layers.push_back(std::move(next));
  }
  return res;
}

RunResult run_tiny(const TinyInstance& inst, std::unique_ptr<Splitter> splitter) {
  SimSetup setup;
  setup.n_scc = inst.n_scc;
  setup.d_xn = inst.d_xn;
  setup.quanta = inst.quanta;
  setup.workload = {ArrivalMode::Burst, inst.packets, 0};
  setup.max_slots = inst.max_slots;
  Simulation sim(setup, std::make_unique<ScheduledCapacity>(inst.capacity), std::move(splitter));
  return sim.run();
}

RunResult replay(const TinyInstance& inst, const std::vector<SplitAction>& actions) {
  return run_tiny(inst, std::make_unique<ScriptedSplitter>(actions));
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Case1: return "case1";
    case Regime::Case2: return "case2";
    case Regime::Balanced: return "balanced";
    case Regime::Violated: return "violated";
  }
  return "?";
}

std::int64_t window_objective(std::int64_t b, int horizon, std::int64_t in_p, std::int64_t in_s,
                                std::int64_t cap_p, std::int64_t cap_s) {
  return std::llabs(b + (horizon + 1) * (in_p - in_s - (cap_p - cap_s)));
}

IdentityReport verify_nstep_identity(const IdentityInstance& inst, StationaryStrategy st) {
  if (inst.n_scc < 1) throw std::invalid_argument("identity: n_scc must be >= 1");
  if (inst.horizon < 1) throw std::invalid_argument("identity: horizon must be >= 1");
  if (st.pcc < 0 || st.scc < 0) throw std::invalid_argument("identity: negative strategy");
  const std::size_t nc = inst.n_scc + 1;
  const auto n = static_cast<std::int64_t>(inst.n_scc);

  IdentityReport rep;
  rep.strategy = st;
  rep.window = inst.horizon + 1;

  SimSetup setup;
  setup.n_scc = inst.n_scc;
  setup.d_xn = 0;
  setup.quanta = {std::max(1, st.pcc), std::max(1, st.scc)};
  // saturated: exactly what the strategy dispatches arrives each slot
  setup.workload = {ArrivalMode::PerSlot, 0,
                    static_cast<std::uint64_t>(st.pcc + n * st.scc)};
  setup.max_slots = static_cast<Slot>(rep.window);
  setup.preload = inst.preload.empty() ? std::vector<std::uint64_t>(nc, 0) : inst.preload;
  std::vector<int> caps(nc, inst.cap_s);
  caps[0] = inst.cap_p;
  Simulation sim(setup, std::make_unique<ScheduledCapacity>(ScheduledCapacity::constant(caps)),
                 std::make_unique<FixedSplitter>(SplitAction{st.pcc > 0 ? 1 : 0, st.scc > 0 ? 1 : 0}));

  rep.b0 = static_cast<std::int64_t>(setup.preload[0]);
  for (std::size_t c = 1; c < nc; ++c) rep.b0 -= static_cast<std::int64_t>(setup.preload[c]);

  auto result = sim.run();
  const auto& rlc = sim.rlc();
  // out_count already includes the preload
  for (auto c : sim.pdcp().out_count) rep.packets += static_cast<std::int64_t>(c);
  rep.throughput = static_cast<std::int64_t>(result.summary.total_delivered);
  rep.q_p_star = static_cast<std::int64_t>(rlc.occupancy(0));
  for (std::size_t c = 1; c < nc; ++c) rep.q_s_star += static_cast<std::int64_t>(rlc.occupancy(c));
  rep.delta_h = rep.q_p_star - rep.q_s_star;
  rep.predicted_delta_h =
      rep.b0 + rep.window * ((st.pcc - inst.cap_p) - n * (st.scc - inst.cap_s));
  rep.objective = window_objective(rep.b0, inst.horizon, st.pcc, n * st.scc, inst.cap_p, n * inst.cap_s);

  if (sim.pdcp().queue.size() != 0) {
    rep.violation = "source not drained each slot";
  } else if (rep.q_p_star > 0 && rep.q_s_star > 0) {
    rep.violation = "both PCC and SCC buffers hold residual backlog";
  }
  if (rep.violation.empty()) {
    rep.regime = rep.q_p_star > 0 ? Regime::Case1 : rep.q_s_star > 0 ? Regime::Case2 : Regime::Balanced;
  }
  rep.identity_holds = rep.throughput == rep.packets - std::llabs(rep.delta_h);
  return rep;
}

bool ranking_consistent(const std::vector<IdentityReport>& reports) {
  for (const auto& a : reports)
    for (const auto& b : reports)
      if (a.objective < b.objective && a.throughput < b.throughput) return false;
  return true;
}

}  // namespace casplit
