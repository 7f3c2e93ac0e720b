#include "tschls/core.hpp"

#include <cmath>

namespace tschls {

double to_seconds(std::int64_t micros) {
    return static_cast<double>(micros) / static_cast<double>(kMicrosPerSecond);
}

std::int64_t to_micros(double seconds) {
    if (!std::isfinite(seconds)) {
        throw ConfigError("time value must be finite");
    }
    return std::llround(seconds * static_cast<double>(kMicrosPerSecond));
}

void SlotframeConfig::validate() const {
    if (slot_us <= 0) {
        throw ConfigError("slot duration must be positive");
    }
    if (slots_per_slotframe < 1) {
        throw ConfigError("slotframe must contain at least one slot");
    }
    if (retry_limit < 0) {
        throw ConfigError("retry limit must be non-negative");
    }
}

void EnergyModel::validate() const {
    const double fields[] = {e_tx0_uj,    e_tx_per_byte_uj, e_rx0_uj,        e_rx_per_byte_uj,
                             e_ack_tx_uj, e_ack_rx_uj,      e_idle_listen_uj, baseline_power_uw};
    for (double v : fields) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError("energy model fields must be non-negative and finite");
        }
    }
}

void FrameSpec::validate() const {
    if (payload_frame_bytes < 0 || sleep_ie_bytes < 0 || xsleep_ie_bytes < 0 ||
        empty_sleep_frame_bytes < 0) {
        throw ConfigError("frame sizes must be non-negative");
    }
    if (xsleep_ie_bytes <= sleep_ie_bytes) {
        throw ConfigError("xsleep IE must be larger than the basic sleep IE");
    }
}

SleepCommand SleepCommand::basic(int n_slp) {
    SleepCommand cmd{SleepKind::basic, n_slp, 0};
    cmd.validate();
    return cmd;
}

SleepCommand SleepCommand::extended(int n_slp, int n_snz) {
    SleepCommand cmd{SleepKind::extended, n_slp, n_snz};
    cmd.validate();
    return cmd;
}

void SleepCommand::validate() const {
    if (kind == SleepKind::basic) {
        if (n_slp < 0 || n_slp > kMaxBasicSleep) {
            throw ConfigError("basic sleep command requires 0 <= n_slp <= 63");
        }
        if (n_snz != 0) {
            throw ConfigError("basic sleep command carries no snooze time");
        }
        return;
    }
    if (n_slp < 0 || n_slp > kMaxExtendedSleep) {
        throw ConfigError("xsleep command requires 0 <= n_slp <= 4095");
    }
    if (n_snz < 0 || n_snz > kMaxSnooze) {
        throw ConfigError("xsleep command requires 0 <= n_snz <= 63");
    }
    if (!(n_snz < n_slp || (n_slp == 0 && n_snz == 0))) {
        throw ConfigError("xsleep command requires n_snz < n_slp (or the all-zero reset)");
    }
}

std::int64_t TrafficSpec::nominal_interval_us() const {
    if (kind == TrafficKind::sporadic && period_us <= 0) {
        return mean_interarrival_us;
    }
    return period_us;
}

void TrafficSpec::validate() const {
    switch (kind) {
        case TrafficKind::periodic:
            if (period_us <= 0) {
                throw ConfigError("periodic traffic requires a positive period");
            }
            break;
        case TrafficKind::quasi_periodic:
            if (period_us <= 0) {
                throw ConfigError("quasi-periodic traffic requires a positive period");
            }
            if (!(jitter_fraction >= 0.0) || jitter_fraction >= 1.0) {
                throw ConfigError("jitter fraction must lie in [0, 1)");
            }
            break;
        case TrafficKind::sporadic:
            if (mean_interarrival_us <= 0) {
                throw ConfigError("sporadic traffic requires a positive mean interarrival");
            }
            if (min_interarrival_us < 0 || min_interarrival_us > mean_interarrival_us) {
                throw ConfigError("sporadic traffic requires 0 <= min <= mean interarrival");
            }
            break;
    }
    if (relative_deadline_us && *relative_deadline_us <= 0) {
        throw ConfigError("relative deadline must be positive when present");
    }
}

std::string strategy_label(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::conventional_tsch: return "TSCH";
        case StrategyKind::oracle: return "Oracle";
        case StrategyKind::periodic_ls: return "Basic";
        case StrategyKind::slow_periodic_ls: return "Basic (slow)";
        case StrategyKind::extended_periodic_ls: return "eXtended";
    }
    return "?";
}

std::string strategy_token(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::conventional_tsch: return "tsch";
        case StrategyKind::oracle: return "oracle";
        case StrategyKind::periodic_ls: return "basic";
        case StrategyKind::slow_periodic_ls: return "slow";
        case StrategyKind::extended_periodic_ls: return "extended";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_token(std::string_view token) {
    if (token == "tsch") return StrategyKind::conventional_tsch;
    if (token == "oracle") return StrategyKind::oracle;
    if (token == "basic") return StrategyKind::periodic_ls;
    if (token == "slow") return StrategyKind::slow_periodic_ls;
    if (token == "extended") return StrategyKind::extended_periodic_ls;
    return std::nullopt;
}

bool strategy_uses_ls(StrategyKind kind) {
    return kind == StrategyKind::periodic_ls || kind == StrategyKind::slow_periodic_ls ||
           kind == StrategyKind::extended_periodic_ls;
}

double frame_tx_energy(const EnergyModel& model, int length_bytes) {
    if (length_bytes < 0) {
        throw ConfigError("frame length must be non-negative");
    }
    return model.e_tx0_uj + model.e_tx_per_byte_uj * static_cast<double>(length_bytes);
}

double frame_rx_energy(const EnergyModel& model, int length_bytes) {
    if (length_bytes < 0) {
        throw ConfigError("frame length must be non-negative");
    }
    return model.e_rx0_uj + model.e_rx_per_byte_uj * static_cast<double>(length_bytes);
}

double normalized_period(double interval_seconds, const SlotframeConfig& cfg) {
    if (!(interval_seconds > 0.0)) {
        throw ConfigError("normalized period requires a positive interval");
    }
    // Quantizing to microseconds first keeps exact slotframe multiples exact.
    return static_cast<double>(to_micros(interval_seconds)) /
           static_cast<double>(cfg.slotframe_us());
}

std::int64_t floor_normalized(std::int64_t interval_us, const SlotframeConfig& cfg) {
    if (interval_us <= 0) {
        throw ConfigError("normalized period requires a positive interval");
    }
    return interval_us / cfg.slotframe_us();
}

}  // namespace tschls
