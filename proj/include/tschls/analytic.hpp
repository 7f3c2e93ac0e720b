#pragma once

#include <optional>

#include "tschls/core.hpp"

namespace tschls {

/// Closed-form per-strategy figures for one periodic stream on one link.
struct PowerFigures {
    StrategyKind strategy = StrategyKind::conventional_tsch;
    double p_tx_uw = 0.0;
    double p_rx_uw = 0.0;
    /// Receiver power with oracle listening; lower bound for every strategy.
    double p_rz_oracle_uw = 0.0;
    /// Worst-case transmission latency.
    double t_wc_s = 0.0;
    std::optional<int> n_slp;
    std::optional<int> n_snz;
    std::optional<int> n_emp;
    std::optional<int> n_wup;
};

/// Evaluate the power model for a periodic (or quasi-periodic, jitter
/// ignored) stream. Sporadic traffic has no closed form and is rejected.
/// `n_snz_override` replaces the deadline-derived snooze time for the
/// extended strategy.
PowerFigures analytic_power(StrategyKind strategy, const TrafficSpec& traffic,
                            const SlotframeConfig& cfg, const EnergyModel& energy,
                            const FrameSpec& frames,
                            std::optional<int> n_snz_override = std::nullopt);

/// Constant total excess of the basic periodic strategy over the oracle when
/// the period is an exact slotframe multiple: the sleep IE's on-air cost.
double oracle_gap_periodic(const TrafficSpec& traffic, const SlotframeConfig& cfg,
                           const EnergyModel& energy, const FrameSpec& frames);

/// Largest n_slp that keeps the worst-case latency within the deadline on an
/// error-free channel. Rejects deadlines of one slotframe or less.
int deadline_max_nslp(std::int64_t deadline_us, const SlotframeConfig& cfg);

}  // namespace tschls
