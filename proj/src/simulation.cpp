#include "casplit/simulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace casplit {

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::CA: return "ca";
    case RunMode::PccOnly: return "pcc";
    case RunMode::SccOnly: return "scc";
  }
  return "?";
}

RunMode parse_run_mode(const std::string& s) {
  if (s == "ca") return RunMode::CA;
  if (s == "pcc") return RunMode::PccOnly;
  if (s == "scc") return RunMode::SccOnly;
  throw std::invalid_argument("unknown mode '" + s + "' (expected ca|pcc|scc)");
}

Simulation::Simulation(SimSetup setup, std::unique_ptr<CapacityModel> channel,
                       std::unique_ptr<Splitter> splitter)
    : setup_(std::move(setup)),
      channel_(std::move(channel)),
      splitter_(std::move(splitter)),
      pdcp_(setup_.n_scc + 1),
      rlc_(setup_.n_scc + 1),
      served_(setup_.n_scc + 1, 0) {
  const std::size_t nc = setup_.n_scc + 1;
  if (setup_.n_scc < 1) throw std::invalid_argument("n_scc must be >= 1");
  if (!channel_ || channel_->carriers() != nc)
    throw std::invalid_argument("channel carrier count does not match n_scc + 1");
  if (!splitter_) throw std::invalid_argument("no splitter");
  if (setup_.d_xn < 0) throw std::invalid_argument("d_xn must be >= 0");
  if (setup_.max_slots == 0) throw std::invalid_argument("max_slots must be positive");
  chan_.resize(nc);
  if (!setup_.preload.empty()) {
    if (setup_.preload.size() != nc) throw std::invalid_argument("preload size mismatch");
    for (std::size_t c = 0; c < nc; ++c) {
      pdcp_ingest(pdcp_, setup_.preload[c], 0);
      while (!pdcp_.queue.empty()) {
        rlc_.buffer[c].push_back(pdcp_.queue.front());
        pdcp_.queue.pop_front();
        ++pdcp_.n_min;
        ++pdcp_.out_count[c];
      }
    }
  }
  if (setup_.record_trace) trace_.reserve(std::min<Slot>(setup_.max_slots, 1u << 16));
}

void Simulation::run_phase(Phase p) {
  const Slot t = clock_.t;
  const std::size_t nc = setup_.n_scc + 1;
  switch (p) {
    case Phase::SampleChannel:
      channel_->sample(t, chan_);
      break;
    case Phase::Decide: {
      Observation obs;
      obs.t = t;
      obs.b = buffer_difference(rlc_);
      obs.rlc.resize(nc);
      obs.inflight.resize(nc);
      for (std::size_t c = 0; c < nc; ++c) {
        obs.rlc[c] = rlc_.occupancy(c);
        obs.inflight[c] = rlc_.inflight(c);
      }
      obs.served = served_;
      obs.delivered_last = delivered_now_;
      obs.d_xn = setup_.d_xn;
      b_seen_ = obs.b;
      switch (setup_.mode) {
        case RunMode::CA: action_ = splitter_->decide(obs); break;
        case RunMode::PccOnly: action_ = {1, 0}; break;
        case RunMode::SccOnly: action_ = {0, 1}; break;
      }
      break;
    }
    case Phase::Dispatch: {
      const auto& w = setup_.workload;
      if (w.mode == ArrivalMode::Burst) {
        if (t == 0) pdcp_ingest(pdcp_, w.packets, t);
      } else {
        pdcp_ingest(pdcp_, w.rate, t);
      }
      auto out = pdcp_dispatch(pdcp_, action_, setup_.n_scc, setup_.quanta);
      rlc_accept(rlc_, out, t, setup_.d_xn);
      break;
    }
    case Phase::XnArrivals:
      xn_tick(rlc_, t);
      break;
    case Phase::Serve:
      delivered_ = rlc_serve(rlc_, chan_.capacity);
      for (std::size_t c = 0; c < nc; ++c) served_[c] = delivered_[c].size();
      break;
    case Phase::Receive:
      delivered_now_ = ue_receive(ue_, delivered_);
      delivered_.clear();
      break;
    case Phase::Trace: {
      abs_b_sum_ += static_cast<double>(std::llabs(b_seen_));
      if (!setup_.record_trace) break;
      SlotRecord r;
      r.t = t;
      r.b = b_seen_;
      r.action = action_;
      r.rlc.resize(nc);
      for (std::size_t c = 0; c < nc; ++c) r.rlc[c] = static_cast<std::uint32_t>(rlc_.occupancy(c));
      r.capacity = chan_.capacity;
      r.delivered = delivered_now_;
      if (setup_.mode == RunMode::CA) r.probe = splitter_->probe();
      trace_.push_back(std::move(r));
      break;
    }
    case Phase::Advance:
      clock_ = advance(clock_);
      break;
  }
}

bool Simulation::step() {
  if (done_) return false;
  for (Phase p : setup_.order) run_phase(p);
  if (setup_.check_invariants) {
    auto err = conservation_error();
    if (!err.empty()) throw std::logic_error("conservation violated at slot " +
                                             std::to_string(clock_.t) + ": " + err);
  }
  const auto& w = setup_.workload;
  if (w.mode == ArrivalMode::Burst && ue_.total >= w.packets) done_ = true;
  if (clock_.t >= setup_.max_slots) done_ = true;
  return !done_;
}

RunResult Simulation::run() {
  while (step()) {
  }
  RunResult r;
  r.summary = summarize();
  r.trace = std::move(trace_);
  trace_.clear();
  return r;
}

RunSummary Simulation::summarize() const {
  RunSummary s;
  s.mode = setup_.mode;
  s.policy = setup_.mode == RunMode::CA ? splitter_->name() : to_string(setup_.mode) + "_only";
  s.total_delivered = ue_.total;
  s.slots = clock_.t;
  s.completed = setup_.workload.mode == ArrivalMode::Burst && ue_.total >= setup_.workload.packets;
  s.per_slot = ue_.per_slot;
  if (s.slots > 0) {
    s.mean_throughput = static_cast<double>(s.total_delivered) / static_cast<double>(s.slots);
    s.mean_abs_b = abs_b_sum_ / static_cast<double>(s.slots);
  }
  return s;
}

std::string Simulation::conservation_error() const {
  const std::uint64_t in_pdcp = pdcp_.queue.size();
  std::uint64_t pending = 0;
  for (const auto& c : delivered_) pending += c.size();
  const std::uint64_t total = in_pdcp + rlc_.total_inflight() + rlc_.total_buffered() + ue_.total + pending;
  std::ostringstream os;
  if (total != pdcp_.n_max) {
    os << "count " << total << " != ingested " << pdcp_.n_max;
    return os.str();
  }
  if (pdcp_.n_max - pdcp_.n_min != in_pdcp) {
    os << "pdcp counters " << pdcp_.n_max << "-" << pdcp_.n_min << " != " << in_pdcp;
    return os.str();
  }
  std::vector<char> seen(pdcp_.n_max, 0);
  auto mark = [&](std::uint64_t seq) {
    if (seq >= seen.size() || seen[seq]) return false;
    seen[seq] = 1;
    return true;
  };
  for (const auto& p : pdcp_.queue)
    if (!mark(p.seq)) return "pdcp seq " + std::to_string(p.seq) + " duplicated or unknown";
  for (const auto& q : rlc_.xn)
    for (const auto& f : q)
      if (!mark(f.packet.seq)) return "xn seq " + std::to_string(f.packet.seq) + " duplicated";
  for (const auto& b : rlc_.buffer)
    for (const auto& p : b)
      if (!mark(p.seq)) return "rlc seq " + std::to_string(p.seq) + " duplicated";
  for (const auto& c : delivered_)
    for (const auto& p : c)
      if (!mark(p.seq)) return "served seq " + std::to_string(p.seq) + " duplicated";
  for (auto seq : ue_.received)
    if (!mark(seq)) return "ue seq " + std::to_string(seq) + " duplicated";
  return {};
}

}  // namespace casplit
