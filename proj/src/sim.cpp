#include "tschls/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace tschls {

namespace {

constexpr std::uint64_t kTrafficStream = 0;
constexpr std::uint64_t kChannelStream = 1;

std::string format_line(const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

}  // namespace

void ChannelSpec::validate() const {
    const bool data_ok = data_loss_prob >= 0.0 && data_loss_prob < 1.0;
    const bool ack_ok = ack_loss_prob >= 0.0 && ack_loss_prob < 1.0;
    if (!data_ok || !ack_ok) {
        throw ConfigError("loss probabilities must lie in [0, 1)");
    }
}

std::int64_t Scenario::warmup_slotframes() const {
    const std::int64_t interval = std::max<std::int64_t>(traffic.nominal_interval_us(), 1);
    const std::int64_t sf = slotframe.slotframe_us();
    return (interval + sf - 1) / sf;
}

void Scenario::validate() const {
    slotframe.validate();
    energy.validate();
    frames.validate();
    traffic.validate();
    channel.validate();
    if (horizon_slotframes < 1) {
        throw ConfigError("horizon must cover at least one slotframe");
    }
    if (allocated_slot_offset < 0 || allocated_slot_offset >= slotframe.slots_per_slotframe) {
        throw ConfigError("allocated slot offset must lie inside the slotframe");
    }
    if (warmup_slotframes() >= horizon_slotframes) {
        throw ConfigError("horizon must extend beyond the warm-up interval");
    }
    // Surfaces strategy/traffic mismatches (missing deadline, period too
    // short or too long for the command encoding) at configuration time.
    compute_strategy_params(strategy, traffic, slotframe);
}

std::int64_t next_release_us(const TrafficSpec& traffic, SplitMix64& rng,
                             std::int64_t previous_us) {
    std::int64_t gap = 0;
    switch (traffic.kind) {
        case TrafficKind::periodic:
            gap = traffic.period_us;
            break;
        case TrafficKind::quasi_periodic: {
            const double span = traffic.jitter_fraction * static_cast<double>(traffic.period_us);
            gap = traffic.period_us + std::llround(rng.uniform(-span, span));
            break;
        }
        case TrafficKind::sporadic: {
            const auto drawn = static_cast<std::int64_t>(std::llround(
                rng.exponential(static_cast<double>(traffic.mean_interarrival_us))));
            gap = std::max(traffic.min_interarrival_us, drawn);
            break;
        }
    }
    return previous_us + std::max<std::int64_t>(gap, 1);
}

LinkSimulation::LinkSimulation(Scenario scenario, std::ostream* trace)
    : scenario_(std::move(scenario)),
      traffic_rng_(substream(scenario_.channel.seed, kTrafficStream)),
      channel_rng_(substream(scenario_.channel.seed, kChannelStream)),
      trace_(trace) {
    scenario_.validate();
    params_ = compute_strategy_params(scenario_.strategy, scenario_.traffic, scenario_.slotframe);
    tx_ = LinkTransmitter(params_, scenario_.slotframe);
    rx_ = LinkReceiver();
    warmup_ = scenario_.warmup_slotframes();
    next_release_time_us_ = next_release_us(scenario_.traffic, traffic_rng_, 0);
    if (trace_) {
        *trace_ << "slot,event,side,energy_uj,c_tx,c_rx\n";
    }
}

void LinkSimulation::trace_event(const char* kind, const char* side, double energy_uj) const {
    if (!trace_) {
        return;
    }
    const std::int64_t slot =
        slotframe_ * scenario_.slotframe.slots_per_slotframe + scenario_.allocated_slot_offset;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%lld,%s,%s,%.3f,%d,%d\n", static_cast<long long>(slot), kind,
                  side, energy_uj, tx_.c_tx(), rx_.c_rx());
    *trace_ << buf;
}

void LinkSimulation::resolve_failed_attempt(const FrameToSend& frame) {
    if (in_window()) {
        ++counts_.ack_timeouts;
    }
    trace_event("ack_timeout", "tx", 0.0);
    if (tx_.on_ack_timeout()) {
        if (in_window()) {
            ++counts_.frame_drops;
        }
        packets_[frame.packet_id].left_queue = true;
        trace_event("frame_drop", "tx", 0.0);
    }
}

void LinkSimulation::step_slotframe() {
    if (finished()) {
        return;
    }
    const auto& cfg = scenario_.slotframe;
    const auto& energy = scenario_.energy;
    const auto& frames = scenario_.frames;
    slot_start_us_ = (slotframe_ * cfg.slots_per_slotframe + scenario_.allocated_slot_offset) *
                     cfg.slot_us;
    const std::int64_t window_start_us = warmup_ * cfg.slotframe_us();

    // Upper-layer releases due by this cell.
    while (next_release_time_us_ <= slot_start_us_) {
        PacketInfo info;
        info.release_us = next_release_time_us_;
        info.counted = next_release_time_us_ >= window_start_us;
        if (info.counted) {
            ++counts_.packets_released;
        }
        trace_event("release", "tx", 0.0);
        if (!tx_.on_transmission_request(next_release_time_us_, next_packet_id_)) {
            info.left_queue = true;
            if (info.counted) {
                ++counts_.queue_overflows;
            }
            trace_event("queue_overflow", "tx", 0.0);
        }
        packets_.push_back(info);
        ++next_packet_id_;
        next_release_time_us_ = next_release_us(scenario_.traffic, traffic_rng_,
                                                next_release_time_us_);
    }

    tx_.slot_begin();

    const auto frame = tx_.select_frame();
    const bool oracle = scenario_.strategy == StrategyKind::oracle;
    const bool rx_listening = oracle ? frame.has_value() : rx_.listening_enabled();

    if (frame) {
        const bool data_lost = channel_rng_.bernoulli(scenario_.channel.data_loss_prob);
        if (frame->is_empty) {
            if (in_window()) {
                ++counts_.empty_tx;
            }
            trace_event("empty_tx", "tx", frame_tx_energy(energy, frames.empty_sleep_frame_bytes));
            tx_.on_sent_empty(*frame);
            if (rx_listening) {
                if (!data_lost) {
                    if (in_window()) {
                        ++counts_.empty_rx;
                    }
                    rx_.on_frame(frame->command, true);
                    trace_event("empty_rx", "rx",
                                frame_rx_energy(energy, frames.empty_sleep_frame_bytes));
                } else {
                    if (in_window()) {
                        ++counts_.idle_listens;
                    }
                    trace_event("idle_listen", "rx", energy.e_idle_listen_uj);
                }
            }
        } else {
            const bool basic_ie = frame->command && frame->command->kind == SleepKind::basic;
            int length = frames.payload_frame_bytes;
            if (frame->command) {
                length += basic_ie ? frames.sleep_ie_bytes : frames.xsleep_ie_bytes;
            }
            if (in_window()) {
                if (!frame->command) {
                    ++counts_.data_tx_plain;
                } else if (basic_ie) {
                    ++counts_.data_tx_basic_ie;
                } else {
                    ++counts_.data_tx_xsleep_ie;
                }
            }
            trace_event("data_tx", "tx", frame_tx_energy(energy, length));

            if (rx_listening && !data_lost) {
                if (in_window()) {
                    if (!frame->command) {
                        ++counts_.data_rx_plain;
                    } else if (frame->command->kind == SleepKind::basic) {
                        ++counts_.data_rx_basic_ie;
                    } else {
                        ++counts_.data_rx_xsleep_ie;
                    }
                }
                rx_.on_frame(frame->command, false);
                trace_event("data_rx", "rx", frame_rx_energy(energy, length));

                PacketInfo& packet = packets_[frame->packet_id];
                if (!packet.delivered) {
                    packet.delivered = true;
                    if (packet.counted) {
                        ++counts_.packets_delivered;
                        latencies_s_.push_back(to_seconds(slot_start_us_ - packet.release_us));
                    }
                } else if (in_window()) {
                    ++counts_.duplicate_rx;
                }

                if (in_window()) {
                    ++counts_.ack_tx;
                }
                trace_event("ack_tx", "rx", energy.e_ack_tx_uj);
                if (!channel_rng_.bernoulli(scenario_.channel.ack_loss_prob)) {
                    if (in_window()) {
                        ++counts_.ack_rx;
                    }
                    trace_event("ack_rx", "tx", energy.e_ack_rx_uj);
                    packets_[frame->packet_id].left_queue = true;
                    tx_.on_ack(*frame);
                } else {
                    resolve_failed_attempt(*frame);
                }
            } else {
                if (rx_listening && data_lost) {
                    if (in_window()) {
                        ++counts_.idle_listens;
                    }
                    trace_event("idle_listen", "rx", energy.e_idle_listen_uj);
                }
                resolve_failed_attempt(*frame);
            }
        }
    } else if (rx_listening) {
        if (in_window()) {
            ++counts_.idle_listens;
        }
        trace_event("idle_listen", "rx", energy.e_idle_listen_uj);
    }

    tx_.slot_end();
    rx_.slot_end();

    if (in_window()) {
        const auto depth = static_cast<std::int64_t>(tx_.queue_depth());
        ++depth_samples_;
        depth_sum_ += depth;
        max_depth_ = std::max(max_depth_, depth);
    }
    ++slotframe_;
}

void LinkSimulation::run_to_horizon() {
    while (!finished()) {
        step_slotframe();
    }
}

SimReport LinkSimulation::report() const {
    const auto& energy = scenario_.energy;
    const auto& frames = scenario_.frames;
    const int basic_len = frames.payload_frame_bytes + frames.sleep_ie_bytes;
    const int xsleep_len = frames.payload_frame_bytes + frames.xsleep_ie_bytes;

    SimReport r;
    r.counts = counts_;
    r.tx_energy_uj =
        static_cast<double>(counts_.data_tx_plain) *
            frame_tx_energy(energy, frames.payload_frame_bytes) +
        static_cast<double>(counts_.data_tx_basic_ie) * frame_tx_energy(energy, basic_len) +
        static_cast<double>(counts_.data_tx_xsleep_ie) * frame_tx_energy(energy, xsleep_len) +
        static_cast<double>(counts_.empty_tx) *
            frame_tx_energy(energy, frames.empty_sleep_frame_bytes) +
        static_cast<double>(counts_.ack_rx) * energy.e_ack_rx_uj;
    r.rx_energy_uj =
        static_cast<double>(counts_.data_rx_plain) *
            frame_rx_energy(energy, frames.payload_frame_bytes) +
        static_cast<double>(counts_.data_rx_basic_ie) * frame_rx_energy(energy, basic_len) +
        static_cast<double>(counts_.data_rx_xsleep_ie) * frame_rx_energy(energy, xsleep_len) +
        static_cast<double>(counts_.empty_rx) *
            frame_rx_energy(energy, frames.empty_sleep_frame_bytes) +
        static_cast<double>(counts_.ack_tx) * energy.e_ack_tx_uj +
        static_cast<double>(counts_.idle_listens) * energy.e_idle_listen_uj;

    r.latencies_s = latencies_s_;
    r.warmup_slotframes = warmup_;
    r.horizon_slotframes = scenario_.horizon_slotframes;
    r.slotframe_seconds = scenario_.slotframe.slotframe_seconds();
    r.measured_seconds =
        static_cast<double>(scenario_.horizon_slotframes - warmup_) * r.slotframe_seconds;
    r.tx_power_uw = r.tx_energy_uj / r.measured_seconds;
    r.rx_power_uw = r.rx_energy_uj / r.measured_seconds;
    r.mean_queue_depth = depth_samples_ > 0
                             ? static_cast<double>(depth_sum_) / static_cast<double>(depth_samples_)
                             : 0.0;
    r.max_queue_depth = max_depth_;
    r.strategy = scenario_.strategy;
    r.seed = scenario_.channel.seed;
    return r;
}

SimReport run_scenario(const Scenario& scenario, std::ostream* trace) {
    LinkSimulation sim(scenario, trace);
    sim.run_to_horizon();
    return sim.report();
}

LatencySummary measure_latency(const SimReport& report) {
    LatencySummary summary;
    summary.count = static_cast<std::int64_t>(report.latencies_s.size());
    if (summary.count == 0) {
        return summary;
    }
    double sum = 0.0;
    for (double v : report.latencies_s) {
        sum += v;
        summary.max_s = std::max(summary.max_s, v);
    }
    summary.mean_s = sum / static_cast<double>(summary.count);
    const auto bins = static_cast<std::size_t>(summary.max_s / report.slotframe_seconds) + 1;
    summary.histogram.assign(bins, 0);
    for (double v : report.latencies_s) {
        auto bin = static_cast<std::size_t>(v / report.slotframe_seconds);
        bin = std::min(bin, bins - 1);
        ++summary.histogram[bin];
    }
    return summary;
}

std::string SimReport::to_csv(bool include_baseline, double baseline_power_uw) const {
    const double base = include_baseline ? baseline_power_uw : 0.0;
    const LatencySummary lat = measure_latency(*this);
    std::ostringstream out;
    out << "strategy,seed,horizon_slotframes,warmup_slotframes,measured_s,"
           "tx_power_uw,rx_power_uw,baseline_uw,tx_energy_uj,rx_energy_uj,"
           "data_tx_attempts,data_tx_plain,data_tx_basic_ie,data_tx_xsleep_ie,empty_tx,"
           "ack_rx,ack_timeouts,frame_drops,queue_overflows,"
           "data_rx,empty_rx,ack_tx,idle_listens,duplicate_rx,"
           "packets_released,packets_delivered,delay_mean_s,delay_max_s,delay_count,"
           "mean_queue_depth,max_queue_depth\n";
    out << strategy_label(strategy) << ',' << seed << ',' << horizon_slotframes << ','
        << warmup_slotframes << ',' << format_line("%.2f", measured_seconds) << ','
        << format_line("%.4f,%.4f,%.4f", tx_power_uw + base, rx_power_uw + base, base) << ','
        << format_line("%.1f,%.1f", tx_energy_uj, rx_energy_uj) << ','
        << counts.data_tx_attempts() << ',' << counts.data_tx_plain << ','
        << counts.data_tx_basic_ie << ',' << counts.data_tx_xsleep_ie << ',' << counts.empty_tx
        << ',' << counts.ack_rx << ',' << counts.ack_timeouts << ',' << counts.frame_drops << ','
        << counts.queue_overflows << ',' << counts.data_rx_total() << ',' << counts.empty_rx
        << ',' << counts.ack_tx << ',' << counts.idle_listens << ',' << counts.duplicate_rx << ','
        << counts.packets_released << ',' << counts.packets_delivered << ','
        << format_line("%.2f,%.2f", lat.mean_s, lat.max_s) << ',' << lat.count << ','
        << format_line("%.4f", mean_queue_depth) << ',' << max_queue_depth << '\n';
    return out.str();
}

std::string SimReport::summary(bool include_baseline, double baseline_power_uw) const {
    const double base = include_baseline ? baseline_power_uw : 0.0;
    const LatencySummary lat = measure_latency(*this);
    std::ostringstream out;
    out << "strategy:          " << strategy_label(strategy) << " (seed " << seed << ")\n";
    out << format_line("horizon:           %lld slotframes (%lld warm-up excluded, %.2f s measured)\n",
                       static_cast<long long>(horizon_slotframes),
                       static_cast<long long>(warmup_slotframes), measured_seconds);
    out << format_line("tx power:          %.4f uW  (energy %.1f uJ)\n", tx_power_uw + base,
                       tx_energy_uj);
    out << format_line("rx power:          %.4f uW  (energy %.1f uJ)\n", rx_power_uw + base,
                       rx_energy_uj);
    if (include_baseline) {
        out << format_line("baseline included: %.4f uW per side\n", base);
    }
    out << format_line(
        "tx events:         %lld data attempts (%lld plain, %lld +sleep, %lld +xsleep), "
        "%lld empty, %lld acks, %lld timeouts, %lld drops, %lld overflows\n",
        static_cast<long long>(counts.data_tx_attempts()),
        static_cast<long long>(counts.data_tx_plain),
        static_cast<long long>(counts.data_tx_basic_ie),
        static_cast<long long>(counts.data_tx_xsleep_ie), static_cast<long long>(counts.empty_tx),
        static_cast<long long>(counts.ack_rx), static_cast<long long>(counts.ack_timeouts),
        static_cast<long long>(counts.frame_drops),
        static_cast<long long>(counts.queue_overflows));
    out << format_line(
        "rx events:         %lld data, %lld empty, %lld acks, %lld idle listens, %lld duplicates\n",
        static_cast<long long>(counts.data_rx_total()), static_cast<long long>(counts.empty_rx),
        static_cast<long long>(counts.ack_tx), static_cast<long long>(counts.idle_listens),
        static_cast<long long>(counts.duplicate_rx));
    out << format_line("packets:           %lld released, %lld delivered\n",
                       static_cast<long long>(counts.packets_released),
                       static_cast<long long>(counts.packets_delivered));
    out << format_line("access delay:      mean %.4f s, max %.4f s over %lld packets\n",
                       lat.mean_s, lat.max_s, static_cast<long long>(lat.count));
    out << format_line("queue depth:       mean %.4f, max %lld\n", mean_queue_depth,
                       static_cast<long long>(max_queue_depth));
    return out.str();
}

}  // namespace tschls
