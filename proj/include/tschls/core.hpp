#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tschls/errors.hpp"

namespace tschls {

// All times are carried as integer microseconds so that slot arithmetic,
// floors of normalized periods, and long-horizon schedules stay exact.
// Energies are double microjoules, powers microwatts.
inline constexpr std::int64_t kMicrosPerSecond = 1'000'000;

double to_seconds(std::int64_t micros);
std::int64_t to_micros(double seconds);

/// TSCH schedule geometry plus the MAC retry limit.
struct SlotframeConfig {
    std::int64_t slot_us = 20'000;
    int slots_per_slotframe = 101;
    int retry_limit = 15;

    std::int64_t slotframe_us() const { return slot_us * slots_per_slotframe; }
    double slot_seconds() const { return to_seconds(slot_us); }
    double slotframe_seconds() const { return to_seconds(slotframe_us()); }
    /// Slotframe repetition rate in Hz.
    double slotframe_rate() const { return 1.0 / slotframe_seconds(); }

    void validate() const;
};

/// Per-event radio energy costs. Defaults are OpenMote B measurements.
/// `baseline_power_uw` is the platform's always-on drain; it is kept out of
/// every figure unless a report explicitly asks for it.
struct EnergyModel {
    double e_tx0_uj = 7.0;
    double e_tx_per_byte_uj = 2.0;
    double e_rx0_uj = 65.0;
    double e_rx_per_byte_uj = 1.3;
    double e_ack_tx_uj = 106.0;
    double e_ack_rx_uj = 79.0;
    double e_idle_listen_uj = 138.0;
    double baseline_power_uw = 31'400.0;

    void validate() const;
};

/// On-air frame sizes in bytes.
struct FrameSpec {
    int payload_frame_bytes = 90;
    int sleep_ie_bytes = 3;
    int xsleep_ie_bytes = 5;
    int empty_sleep_frame_bytes = 40;

    void validate() const;
};

enum class SleepKind { basic, extended };

inline constexpr int kMaxBasicSleep = 63;      // 6-bit field
inline constexpr int kMaxExtendedSleep = 4095; // 12-bit field
inline constexpr int kMaxSnooze = 63;          // 6-bit field

/// A decoded sleep or xsleep command.
///
/// Basic commands suspend the receiver for `n_slp` slotframes. Extended
/// commands add a snooze time `n_snz`: the link re-enables for one slotframe
/// every `n_snz + 1` slotframes during the nominal suspension. The all-zero
/// extended command is the reset that restores conventional behavior.
struct SleepCommand {
    SleepKind kind = SleepKind::basic;
    int n_slp = 0;
    int n_snz = 0;

    static SleepCommand basic(int n_slp);
    static SleepCommand extended(int n_slp, int n_snz);
    static SleepCommand reset() { return extended(0, 0); }

    bool is_reset() const { return kind == SleepKind::extended && n_slp == 0 && n_snz == 0; }
    int snooze_modulus() const { return kind == SleepKind::extended ? n_snz + 1 : 1; }

    void validate() const;

    friend bool operator==(const SleepCommand&, const SleepCommand&) = default;
};

enum class TrafficKind { periodic, quasi_periodic, sporadic };

/// Packet release process for one link, plus the timing hints the suspension
/// strategies key off (nominal period, optional relative deadline).
struct TrafficSpec {
    TrafficKind kind = TrafficKind::periodic;
    std::int64_t period_us = 30 * kMicrosPerSecond;   // (quasi-)periodic nominal period
    double jitter_fraction = 0.0;                     // quasi-periodic, in [0,1)
    std::int64_t mean_interarrival_us = 0;            // sporadic
    std::int64_t min_interarrival_us = 0;             // sporadic
    std::optional<std::int64_t> relative_deadline_us; // sporadic service bound

    /// Interval that sizes warm-up and sleep counters: the period when one is
    /// defined, the mean interarrival otherwise.
    std::int64_t nominal_interval_us() const;

    void validate() const;
};

enum class StrategyKind {
    conventional_tsch,
    oracle,
    periodic_ls,
    slow_periodic_ls,
    extended_periodic_ls,
};

/// Human-facing label, e.g. "Basic (slow)".
std::string strategy_label(StrategyKind kind);
/// Stable config-file token, e.g. "slow".
std::string strategy_token(StrategyKind kind);
std::optional<StrategyKind> strategy_from_token(std::string_view token);

/// True for the strategies that attach sleep commands to traffic.
bool strategy_uses_ls(StrategyKind kind);

/// Energy to transmit one frame of `length_bytes`, affine in the length.
double frame_tx_energy(const EnergyModel& model, int length_bytes);
/// Energy for one reception attempt of a frame of `length_bytes`.
double frame_rx_energy(const EnergyModel& model, int length_bytes);

/// Interval expressed in slotframes (tau). Rejects non-positive intervals.
double normalized_period(double interval_seconds, const SlotframeConfig& cfg);
/// Exact floor of the normalized interval, free of floating-point error.
std::int64_t floor_normalized(std::int64_t interval_us, const SlotframeConfig& cfg);

}  // namespace tschls
