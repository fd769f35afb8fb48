#include "casplit/sim.hpp"

#include <limits>
#include <stdexcept>

namespace casplit {

PhaseOrder step_order() {
  return {Phase::SampleChannel, Phase::Decide,  Phase::Dispatch, Phase::XnArrivals,
          Phase::Serve,         Phase::Receive, Phase::Trace,    Phase::Advance};
}

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::SampleChannel: return "sample_channel";
    case Phase::Decide: return "decide";
    case Phase::Dispatch: return "pdcp_dispatch";
    case Phase::XnArrivals: return "xn_arrivals";
    case Phase::Serve: return "rlc_serve";
    case Phase::Receive: return "ue_receive";
    case Phase::Trace: return "trace";
    case Phase::Advance: return "advance";
  }
  return "unknown";
}

SlotClock advance(SlotClock clock) {
  if (clock.t == std::numeric_limits<Slot>::max())
    throw std::overflow_error("slot counter overflow");
  ++clock.t;
  return clock;
}

namespace {
std::seed_seq make_seq(std::uint64_t seed, std::uint64_t id) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed), hi(seed), lo(id), hi(id), 0x9e3779b9u};
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  auto seq = make_seq(seed, stream_id);
  eng_.seed(seq);
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
}

double RngStream::gamma(double shape, double scale) {
  return std::gamma_distribution<double>(shape, scale)(eng_);
}

double RngStream::normal(double mean, double stddev) {
  return std::normal_distribution<double>(mean, stddev)(eng_);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
}

}  // namespace casplit
