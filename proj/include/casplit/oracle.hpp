#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "casplit/simulation.hpp"

namespace casplit {

struct TinyInstance {
  std::uint64_t packets = 1;  // L
  std::size_t n_scc = 1;
  std::vector<std::vector<int>> capacity;  // [carrier][slot], last value held
  int d_xn = 0;
  Slot max_slots = 24;
  DispatchQuanta quanta{};
  bool unrestricted = false;  // search {0,1}^2 instead of complementary actions only
};

inline constexpr std::uint64_t kOracleMaxPackets = 14;
inline constexpr std::size_t kOracleMaxScc = 2;
inline constexpr Slot kOracleMaxSlots = 24;

// Throws std::invalid_argument when the instance is outside the search bounds.
void validate(const TinyInstance& inst);

struct OracleResult {
  bool feasible = false;
  Slot t_star = 0;
  std::vector<SplitAction> witness;
  std::vector<std::uint64_t> throughput;  // per slot along the witness
  std::uint64_t states = 0;               // distinct states expanded
};

// Minimal completion time over all action sequences. Sequences leading to the
// same queue-count state are merged, which is exact because capacities are
// deterministic and packets are interchangeable for the objective.
OracleResult brute_force_min_T(const TinyInstance& inst);

// Drives the full protocol stack with a given splitter on the instance.
RunResult run_tiny(const TinyInstance& inst, std::unique_ptr<Splitter> splitter);
RunResult replay(const TinyInstance& inst, const std::vector<SplitAction>& actions);

struct IdentityInstance {
  std::size_t n_scc = 1;
  int cap_p = 2;
  int cap_s = 1;
  int horizon = 8;                     // N; the window is N+1 slots
  std::vector<std::uint64_t> preload;  // initial RLC occupancy per carrier
};

// Packets handed per slot to the PCC and to each SCC.
struct StationaryStrategy {
  int pcc = 0;
  int scc = 0;
};

enum class Regime { Case1, Case2, Balanced, Violated };
std::string to_string(Regime r);

struct IdentityReport {
  Regime regime = Regime::Violated;
  std::string violation;
  StationaryStrategy strategy{};
  std::int64_t b0 = 0;
  std::int64_t window = 0;
  std::int64_t packets = 0;     // L over the window: preload + dispatched
  std::int64_t throughput = 0;  // delivered over the window
  std::int64_t q_p_star = 0;
  std::int64_t q_s_star = 0;  // summed over SCCs
  std::int64_t delta_h = 0;
  std::int64_t predicted_delta_h = 0;  // B + (N+1)(drift), exact while no buffer drains
  std::int64_t objective = 0;
  bool identity_holds = false;
};

// |B + (N+1)(in_p - in_s - (cap_p - cap_s))| with in/cap in packets per slot,
// in_s and cap_s summed over SCCs.
std::int64_t window_objective(std::int64_t b, int horizon, std::int64_t in_p, std::int64_t in_s,
                                std::int64_t cap_p, std::int64_t cap_s);

IdentityReport verify_nstep_identity(const IdentityInstance& inst, StationaryStrategy strategy);

// obj(a) < obj(b) implies thr(a) >= thr(b) for every pair.
bool ranking_consistent(const std::vector<IdentityReport>& reports);

struct OracleFile {
  TinyInstance instance;
  bool has_identity = false;
  IdentityInstance identity;
  std::vector<StationaryStrategy> strategies;
};

// INI text with an [instance] section and an optional [identity] section.
// Throws ConfigError naming the offending key.
OracleFile parse_oracle_file(const std::string& text);
OracleFile load_oracle_file(const std::string& path);

}  // namespace casplit
