#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tschls/core.hpp"
#include "tschls/lse.hpp"
#include "tschls/rng.hpp"

namespace tschls {

/// Independent Bernoulli loss for data frames and acks. The same seed always
/// reproduces the same trace.
struct ChannelSpec {
    double data_loss_prob = 0.0;
    double ack_loss_prob = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Everything one simulation run needs.
struct Scenario {
    SlotframeConfig slotframe{};
    EnergyModel energy{};
    FrameSpec frames{};
    TrafficSpec traffic{};
    StrategyKind strategy = StrategyKind::conventional_tsch;
    ChannelSpec channel{};
    std::int64_t horizon_slotframes = 100'000;
    int allocated_slot_offset = 0;

    /// Slotframes excluded from the report: one nominal traffic interval,
    /// rounded up, so measurements start in steady state.
    std::int64_t warmup_slotframes() const;

    void validate() const;
};

/// Post-warm-up event counts, one bucket per distinct on-air energy class.
struct SimCounts {
    std::int64_t data_tx_plain = 0;
    std::int64_t data_tx_basic_ie = 0;
    std::int64_t data_tx_xsleep_ie = 0;
    std::int64_t empty_tx = 0;
    std::int64_t ack_rx = 0;
    std::int64_t ack_timeouts = 0;
    std::int64_t frame_drops = 0;
    std::int64_t queue_overflows = 0;

    std::int64_t data_rx_plain = 0;
    std::int64_t data_rx_basic_ie = 0;
    std::int64_t data_rx_xsleep_ie = 0;
    std::int64_t empty_rx = 0;
    std::int64_t ack_tx = 0;
    std::int64_t idle_listens = 0;
    std::int64_t duplicate_rx = 0;

    std::int64_t packets_released = 0;
    std::int64_t packets_delivered = 0;

    std::int64_t data_tx_attempts() const {
        return data_tx_plain + data_tx_basic_ie + data_tx_xsleep_ie;
    }
    std::int64_t data_rx_total() const {
        return data_rx_plain + data_rx_basic_ie + data_rx_xsleep_ie;
    }

    friend bool operator==(const SimCounts&, const SimCounts&) = default;
};

struct LatencySummary {
    std::int64_t count = 0;
    double mean_s = 0.0;
    double max_s = 0.0;
    /// Delay distribution in whole-slotframe bins.
    std::vector<std::int64_t> histogram;
};

/// Result of one run. Energy totals are derived from the event counts, so
/// accounting closure holds by construction and is re-checkable externally.
struct SimReport {
    SimCounts counts{};
    double tx_energy_uj = 0.0;
    double rx_energy_uj = 0.0;
    double tx_power_uw = 0.0;
    double rx_power_uw = 0.0;
    std::vector<double> latencies_s;  // per delivered packet, delivery order
    double mean_queue_depth = 0.0;
    std::int64_t max_queue_depth = 0;
    std::int64_t warmup_slotframes = 0;
    std::int64_t horizon_slotframes = 0;
    double measured_seconds = 0.0;
    double slotframe_seconds = 0.0;
    StrategyKind strategy = StrategyKind::conventional_tsch;
    std::uint64_t seed = 0;

    /// Stable machine-readable form: one CSV header plus one row.
    std::string to_csv(bool include_baseline = false, double baseline_power_uw = 0.0) const;
    /// Human-readable multi-line summary.
    std::string summary(bool include_baseline = false, double baseline_power_uw = 0.0) const;
};

/// Access-delay statistics of a finished run.
LatencySummary measure_latency(const SimReport& report);

/// Next packet release time. Periodic streams advance exactly one period;
/// quasi-periodic ones add uniform jitter of +-jitter_fraction * period;
/// sporadic ones add max(min_interarrival, Exponential(mean)).
std::int64_t next_release_us(const TrafficSpec& traffic, SplitMix64& rng,
                             std::int64_t previous_us);

/// Slot-by-slot engine for a single link (one transmitter, one receiver,
/// one allocated cell per slotframe). Deterministic: identical scenarios
/// produce identical reports and traces, byte for byte.
class LinkSimulation {
  public:
    /// Lifecycle record for one released packet.
    struct PacketInfo {
        std::int64_t release_us = 0;
        bool counted = false;     // release fell inside the measured window
        bool delivered = false;   // receiver decoded it at least once
        bool left_queue = false;  // acked, dropped, or rejected on overflow
    };

    explicit LinkSimulation(Scenario scenario, std::ostream* trace = nullptr);

    void step_slotframe();
    void run_to_horizon();
    bool finished() const { return slotframe_ >= scenario_.horizon_slotframes; }
    std::int64_t slotframe_index() const { return slotframe_; }

    SimReport report() const;

    const Scenario& scenario() const { return scenario_; }
    const LinkTransmitter& transmitter() const { return tx_; }
    const LinkReceiver& receiver() const { return rx_; }
    const std::vector<PacketInfo>& packets() const { return packets_; }

  private:
    bool in_window() const { return slotframe_ >= warmup_; }
    void trace_event(const char* kind, const char* side, double energy_uj) const;
    void resolve_failed_attempt(const FrameToSend& frame);

    Scenario scenario_;
    StrategyParams params_;
    LinkTransmitter tx_;
    LinkReceiver rx_;
    SplitMix64 traffic_rng_;
    SplitMix64 channel_rng_;
    std::ostream* trace_ = nullptr;

    std::int64_t slotframe_ = 0;
    std::int64_t warmup_ = 0;
    std::int64_t slot_start_us_ = 0;
    std::int64_t next_release_time_us_ = 0;
    std::uint64_t next_packet_id_ = 0;
    std::vector<PacketInfo> packets_;

    SimCounts counts_{};
    std::vector<double> latencies_s_;
    std::int64_t depth_samples_ = 0;
    std::int64_t depth_sum_ = 0;
    std::int64_t max_depth_ = 0;
};

/// Convenience wrapper: construct, run to the horizon, report.
SimReport run_scenario(const Scenario& scenario, std::ostream* trace = nullptr);

}  // namespace tschls
