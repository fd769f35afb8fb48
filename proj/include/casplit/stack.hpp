#pragma once

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "casplit/sim.hpp"

namespace casplit {

struct SplitAction {
  int a_p = 0;
  int a_s = 0;  // group bit shared by every SCC

  bool operator==(const SplitAction&) const = default;
  bool complementary() const { return a_s == 1 - a_p; }
};

// Packets moved per active carrier per slot.
struct DispatchQuanta {
  int pcc = 1;
  int scc = 1;
};

// Index 0 is the PCC, 1..n_scc the SCCs.
using PerCarrier = std::vector<std::vector<Packet>>;

// queue holds seqs [n_min, n_max); |queue| == n_max - n_min.
struct PdcpState {
  std::deque<Packet> queue;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  std::vector<std::uint64_t> out_count;

  explicit PdcpState(std::size_t carriers = 1) : out_count(carriers, 0) {}
};

struct InFlight {
  Packet packet;
  Slot arrival = 0;
};

struct RlcState {
  std::vector<std::deque<Packet>> buffer;
  std::vector<std::deque<InFlight>> xn;  // xn[0] unused

  explicit RlcState(std::size_t carriers = 1) : buffer(carriers), xn(carriers) {}

  std::size_t carriers() const { return buffer.size(); }
  std::size_t occupancy(std::size_t c) const { return buffer[c].size(); }
  std::size_t inflight(std::size_t c) const { return xn[c].size(); }
  std::size_t total_buffered() const;
  std::size_t total_inflight() const;
};

struct UeState {
  std::unordered_set<std::uint64_t> received;
  std::vector<std::uint64_t> per_slot;
  std::uint64_t total = 0;
};

void pdcp_ingest(PdcpState& st, std::uint64_t arrivals, Slot now);

// PCC first, then SCCs in index order, each taking up to its quantum from the head.
PerCarrier pdcp_dispatch(PdcpState& st, SplitAction action, std::size_t n_scc,
                         DispatchQuanta q = {});

// PCC packets enter RLC directly; SCC packets go onto the Xn link.
void rlc_accept(RlcState& rlc, const PerCarrier& dispatched, Slot now, int d_xn);

void xn_tick(RlcState& rlc, Slot now);

PerCarrier rlc_serve(RlcState& rlc, const std::vector<int>& capacity);

// Returns |Q_U(t)|. Throws std::logic_error on a duplicate sequence number.
std::uint64_t ue_receive(UeState& ue, const PerCarrier& delivered);

std::int64_t buffer_difference(const RlcState& rlc);

}  // namespace casplit
