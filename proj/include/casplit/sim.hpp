#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace casplit {

using Slot = std::uint64_t;

struct Packet {
  std::uint64_t seq = 0;
  Slot ingest_slot = 0;
};

enum class Phase {
  SampleChannel,
  Decide,
  Dispatch,
  XnArrivals,
  Serve,
  Receive,
  Trace,
  Advance,
};

using PhaseOrder = std::array<Phase, 8>;

// Fixed per-slot evaluation order used by every run.
PhaseOrder step_order();
std::string_view phase_name(Phase p);

struct SlotClock {
  Slot t = 0;
  double slot_duration = 1e-3;  // seconds, metadata only
};

// Throws std::overflow_error when the slot counter would wrap.
SlotClock advance(SlotClock clock);

// One independent generator per (seed, stream_id). Carriers use their
// index as stream id so CA and single-carrier runs see identical fading.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double uniform();
  double gamma(double shape, double scale);
  double normal(double mean, double stddev);
  std::uint64_t below(std::uint64_t n);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 eng_;
};

}  // namespace casplit
