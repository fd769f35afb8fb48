#include "casplit/stack.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace casplit {

std::size_t RlcState::total_buffered() const {
  std::size_t n = 0;
  for (const auto& b : buffer) n += b.size();
  return n;
}

std::size_t RlcState::total_inflight() const {
  std::size_t n = 0;
  for (const auto& x : xn) n += x.size();
  return n;
}

void pdcp_ingest(PdcpState& st, std::uint64_t arrivals, Slot now) {
  for (std::uint64_t i = 0; i < arrivals; ++i) st.queue.push_back({st.n_max++, now});
}

namespace {
void take(PdcpState& st, std::vector<Packet>& out, int quantum) {
  for (int i = 0; i < quantum && !st.queue.empty(); ++i) {
    out.push_back(st.queue.front());
    st.queue.pop_front();
    ++st.n_min;
  }
}
}  // namespace

PerCarrier pdcp_dispatch(PdcpState& st, SplitAction action, std::size_t n_scc, DispatchQuanta q) {
  if (st.out_count.size() < n_scc + 1) st.out_count.resize(n_scc + 1, 0);
  PerCarrier out(n_scc + 1);
  if (action.a_p) take(st, out[0], q.pcc);
  if (action.a_s)
    for (std::size_t s = 1; s <= n_scc; ++s) take(st, out[s], q.scc);
  for (std::size_t c = 0; c <= n_scc; ++c) st.out_count[c] += out[c].size();
  return out;
}

void rlc_accept(RlcState& rlc, const PerCarrier& dispatched, Slot now, int d_xn) {
  for (const auto& p : dispatched[0]) rlc.buffer[0].push_back(p);
  for (std::size_t s = 1; s < dispatched.size(); ++s)
    for (const auto& p : dispatched[s])
      rlc.xn[s].push_back({p, now + static_cast<Slot>(d_xn)});
}

void xn_tick(RlcState& rlc, Slot now) {
  for (std::size_t s = 1; s < rlc.xn.size(); ++s) {
    auto& q = rlc.xn[s];
    while (!q.empty() && q.front().arrival <= now) {
      rlc.buffer[s].push_back(q.front().packet);
      q.pop_front();
    }
  }
}

PerCarrier rlc_serve(RlcState& rlc, const std::vector<int>& capacity) {
  PerCarrier out(rlc.buffer.size());
  for (std::size_t c = 0; c < rlc.buffer.size(); ++c) {
    auto& b = rlc.buffer[c];
    const std::size_t cap = c < capacity.size() ? static_cast<std::size_t>(std::max(0, capacity[c])) : 0;
    const std::size_t n = std::min(cap, b.size());
    for (std::size_t i = 0; i < n; ++i) {
      out[c].push_back(b.front());
      b.pop_front();
    }
  }
  return out;
}

std::uint64_t ue_receive(UeState& ue, const PerCarrier& delivered) {
  std::uint64_t n = 0;
  for (const auto& c : delivered)
    for (const auto& p : c) {
      if (!ue.received.insert(p.seq).second)
        throw std::logic_error("duplicate delivery of seq " + std::to_string(p.seq));
      ++n;
    }
  ue.per_slot.push_back(n);
  ue.total += n;
  return n;
}

std::int64_t buffer_difference(const RlcState& rlc) {
  std::int64_t b = static_cast<std::int64_t>(rlc.buffer[0].size());
  for (std::size_t s = 1; s < rlc.buffer.size(); ++s)
    b -= static_cast<std::int64_t>(rlc.buffer[s].size());
  return b;
}

}  // namespace casplit
