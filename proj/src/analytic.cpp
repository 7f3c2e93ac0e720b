#include "tschls/analytic.hpp"

#include <algorithm>

#include "tschls/lse.hpp"

namespace tschls {

PowerFigures analytic_power(StrategyKind strategy, const TrafficSpec& traffic,
                            const SlotframeConfig& cfg, const EnergyModel& energy,
                            const FrameSpec& frames, std::optional<int> n_snz_override) {
    cfg.validate();
    energy.validate();
    frames.validate();
    traffic.validate();
    if (traffic.kind == TrafficKind::sporadic) {
        throw ConfigError("analytic power figures exist for periodic streams only");
    }
    const std::int64_t period_us = traffic.period_us;
    const std::int64_t sf_us = cfg.slotframe_us();
    if (period_us < sf_us) {
        throw ConfigError("period below one slotframe exceeds the link capacity");
    }

    const double lambda_c = 1.0 / to_seconds(period_us);
    const double t_sf = cfg.slotframe_seconds();
    const double e_tx_data = frame_tx_energy(energy, frames.payload_frame_bytes);
    const double e_rx_data = frame_rx_energy(energy, frames.payload_frame_bytes);

    // lambda_sf - k * lambda_c, with the numerator carried in exact integer
    // microseconds so the term vanishes exactly at slotframe multiples.
    const auto idle_rate = [&](std::int64_t listens_per_period) {
        return to_seconds(period_us - listens_per_period * sf_us) /
               (t_sf * to_seconds(period_us));
    };

    PowerFigures figures;
    figures.strategy = strategy;
    figures.p_tx_uw = (e_tx_data + energy.e_ack_rx_uj) * lambda_c;
    figures.p_rz_oracle_uw = (e_rx_data + energy.e_ack_tx_uj) * lambda_c;

    const auto require_suspendable = [&] {
        if (period_us <= sf_us) {
            throw ConfigError(
                "listening suspension requires a period strictly above one slotframe");
        }
        return floor_normalized(period_us, cfg);  // floor(tau_c) >= 1
    };

    switch (strategy) {
        case StrategyKind::oracle:
            figures.p_rx_uw = figures.p_rz_oracle_uw;
            figures.t_wc_s = t_sf;
            break;

        case StrategyKind::conventional_tsch:
            figures.p_rx_uw = figures.p_rz_oracle_uw + energy.e_idle_listen_uj * idle_rate(1);
            figures.t_wc_s = t_sf;
            break;

        case StrategyKind::periodic_ls: {
            const auto q = require_suspendable();
            if (q - 1 > kMaxBasicSleep) {
                throw ConfigError(
                    "period too long for the 6-bit sleep field; use the slow strategy");
            }
            figures.n_slp = static_cast<int>(q - 1);
            figures.p_tx_uw += frames.sleep_ie_bytes * energy.e_tx_per_byte_uj * lambda_c;
            figures.p_rx_uw = figures.p_rz_oracle_uw +
                              frames.sleep_ie_bytes * energy.e_rx_per_byte_uj * lambda_c +
                              energy.e_idle_listen_uj * idle_rate(q);
            figures.t_wc_s = static_cast<double>(q) * t_sf;
            break;
        }

        case StrategyKind::slow_periodic_ls: {
            const auto q = require_suspendable();
            figures.n_slp = static_cast<int>(q - 1);
            // ceil(tau_c / 64) - 1 empty sleep frames per packet.
            const std::int64_t n_emp = (period_us + 64 * sf_us - 1) / (64 * sf_us) - 1;
            figures.n_emp = static_cast<int>(n_emp);
            const double e_tx_empty = frame_tx_energy(energy, frames.empty_sleep_frame_bytes);
            const double e_rx_empty = frame_rx_energy(energy, frames.empty_sleep_frame_bytes);
            figures.p_tx_uw += frames.sleep_ie_bytes * energy.e_tx_per_byte_uj * lambda_c +
                               e_tx_empty * static_cast<double>(n_emp) * lambda_c;
            figures.p_rx_uw = figures.p_rz_oracle_uw +
                              frames.sleep_ie_bytes * energy.e_rx_per_byte_uj * lambda_c +
                              energy.e_idle_listen_uj * idle_rate(q) +
                              e_rx_empty * static_cast<double>(n_emp) * lambda_c;
            figures.t_wc_s = static_cast<double>(std::min<std::int64_t>(q, 64)) * t_sf;
            break;
        }

        case StrategyKind::extended_periodic_ls: {
            const auto q = require_suspendable();
            if (q > kMaxExtendedSleep + 1) {
                throw ConfigError("period too long for the 12-bit xsleep field");
            }
            int snooze = 0;
            if (n_snz_override) {
                snooze = *n_snz_override;
            } else {
                if (!traffic.relative_deadline_us) {
                    throw ConfigError("extended strategy requires a relative deadline");
                }
                const auto d = floor_normalized(*traffic.relative_deadline_us, cfg);
                if (d < 1) {
                    throw ConfigError("relative deadline must be at least one slotframe");
                }
                snooze = static_cast<int>(std::min<std::int64_t>(d - 1, kMaxSnooze));
            }
            figures.n_slp = static_cast<int>(q - 1);
            if (snooze < 0 || snooze > kMaxSnooze || snooze >= *figures.n_slp) {
                throw ConfigError("snooze time must satisfy 0 <= n_snz <= 63 and n_snz < n_slp");
            }
            figures.n_snz = snooze;
            figures.n_wup = n_wup(*figures.n_slp, snooze);
            figures.p_tx_uw += frames.xsleep_ie_bytes * energy.e_tx_per_byte_uj * lambda_c;
            figures.p_rx_uw = figures.p_rz_oracle_uw +
                              frames.xsleep_ie_bytes * energy.e_rx_per_byte_uj * lambda_c +
                              energy.e_idle_listen_uj * idle_rate(q - *figures.n_wup);
            figures.t_wc_s = static_cast<double>(snooze + 1) * t_sf;
            break;
        }
    }
    return figures;
}

double oracle_gap_periodic(const TrafficSpec& traffic, const SlotframeConfig& cfg,
                           const EnergyModel& energy, const FrameSpec& frames) {
    cfg.validate();
    energy.validate();
    frames.validate();
    traffic.validate();
    if (traffic.kind == TrafficKind::sporadic) {
        throw ConfigError("oracle gap is defined for periodic streams only");
    }
    if (traffic.period_us % cfg.slotframe_us() != 0) {
        throw ConfigError("oracle gap requires the period to be an exact slotframe multiple");
    }
    const double lambda_c = 1.0 / to_seconds(traffic.period_us);
    return frames.sleep_ie_bytes * (energy.e_tx_per_byte_uj + energy.e_rx_per_byte_uj) * lambda_c;
}

int deadline_max_nslp(std::int64_t deadline_us, const SlotframeConfig& cfg) {
    cfg.validate();
    if (deadline_us <= cfg.slotframe_us()) {
        throw ConfigError("no sleep time satisfies a deadline of one slotframe or less");
    }
    return static_cast<int>(floor_normalized(deadline_us, cfg) - 1);
}

}  // namespace tschls
