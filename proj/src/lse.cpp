#include "tschls/lse.hpp"

#include <algorithm>

namespace tschls {

namespace {

// A side is enabled when its counter sits at zero, or, while snoozing, in the
// periodic wake slotframes where the counter is a multiple of the modulus.
bool side_enabled(int counter, int modulus) {
    return counter == 0 || (modulus > 1 && counter % modulus == 0);
}

}  // namespace

StrategyParams compute_strategy_params(StrategyKind strategy, const TrafficSpec& traffic,
                                       const SlotframeConfig& cfg) {
    cfg.validate();
    traffic.validate();

    StrategyParams params;
    params.strategy = strategy;
    if (!strategy_uses_ls(strategy)) {
        return params;
    }

    const std::int64_t interval_us = traffic.nominal_interval_us();
    if (interval_us <= cfg.slotframe_us()) {
        throw ConfigError("listening suspension requires a period strictly above one slotframe");
    }
    const auto q = floor_normalized(interval_us, cfg);  // >= 1

    switch (strategy) {
        case StrategyKind::periodic_ls:
            if (q - 1 > kMaxBasicSleep) {
                throw ConfigError(
                    "period too long for the 6-bit sleep field; use the slow strategy");
            }
            params.n_slp = static_cast<int>(q - 1);
            break;

        case StrategyKind::slow_periodic_ls: {
            if (q - 1 > (std::int64_t{1} << 20)) {
                throw ConfigError("slow suspension beyond 2^20 slotframes is not supported");
            }
            params.n_slp = static_cast<int>(q - 1);
            params.slow_sequence = slow_command_sequence(params.n_slp);
            params.n_emp = static_cast<int>(params.slow_sequence.size()) - 1;
            break;
        }

        case StrategyKind::extended_periodic_ls: {
            if (!traffic.relative_deadline_us) {
                throw ConfigError("extended strategy requires a relative deadline");
            }
            if (q > kMaxExtendedSleep + 1) {
                throw ConfigError("period too long for the 12-bit xsleep field");
            }
            const auto d = floor_normalized(*traffic.relative_deadline_us, cfg);
            if (d < 1) {
                throw ConfigError("relative deadline must be at least one slotframe");
            }
            if (d >= q) {
                throw ConfigError(
                    "deadline at or above the period defeats snoozing; use the basic strategy");
            }
            params.n_slp = static_cast<int>(q - 1);
            params.n_snz = static_cast<int>(std::min<std::int64_t>(d - 1, kMaxSnooze));
            break;
        }

        default:
            break;
    }
    return params;
}

std::vector<int> slow_command_sequence(int total_sleep) {
    if (total_sleep < 0) {
        throw ConfigError("slow sequence requires a non-negative sleep total");
    }
    // total_sleep = v yields v/64 commands of 63 followed by v mod 64, so the
    // per-command offsets (value + 1) telescope to v + 1 slotframes overall.
    std::vector<int> seq(static_cast<std::size_t>(total_sleep / 64), kMaxBasicSleep);
    seq.push_back(total_sleep % 64);
    return seq;
}

std::vector<int> wake_slotframes(int n_slp, int n_snz) {
    SleepCommand::extended(n_slp, n_snz);  // range/ordering validation
    if (n_slp < 1) {
        throw ConfigError("wake_slotframes requires n_slp >= 1");
    }
    const int modulus = n_snz + 1;
    std::vector<int> offsets;
    for (int k = 1; k <= n_slp; ++k) {
        // Counter value seen during the cell at offset k is n_slp - k + 1.
        if ((n_slp - k + 1) % modulus == 0) {
            offsets.push_back(k);
        }
    }
    offsets.push_back(n_slp + 1);  // full re-enable
    return offsets;
}

int n_wup(int n_slp, int n_snz) {
    SleepCommand::extended(n_slp, n_snz);
    if (n_slp < 1) {
        throw ConfigError("n_wup requires n_slp >= 1");
    }
    return static_cast<int>((n_slp + 1 + n_snz) / (n_snz + 1)) - 1;
}

LinkTransmitter::LinkTransmitter(StrategyParams params, const SlotframeConfig& cfg,
                                 std::size_t queue_capacity)
    : params_(std::move(params)), retry_limit_(cfg.retry_limit), capacity_(queue_capacity) {
    cfg.validate();
    if (capacity_ < 1) {
        throw ConfigError("transmit queue needs capacity for at least one frame");
    }
    if (strategy_uses_ls(params_.strategy)) {
        initial_c_fr_ = params_.n_slp + 1;  // floor(tau_c)
    }
}

bool LinkTransmitter::on_transmission_request(std::int64_t release_us, std::uint64_t packet_id) {
    pending_.clear();  // a fresh data frame interrupts any slow sequence
    if (queue_.size() >= capacity_) {
        return false;
    }
    queue_.push_back(QueuedFrame{release_us, packet_id, initial_c_fr_, 0, false});
    return true;
}

void LinkTransmitter::slot_begin() {
    for (auto& frame : queue_) {
        if (frame.c_fr > 0) {
            --frame.c_fr;
        }
    }
}

bool LinkTransmitter::transmit_enabled() const {
    return side_enabled(c_tx_, modulus_);
}

std::optional<SleepCommand> LinkTransmitter::command_for_head(const QueuedFrame& head) const {
    if (queue_.size() > 1) {
        // Queue backlog: drain at full speed without prolonging suspension.
        // The extended strategy additionally reverts a still-suspended
        // receiver to conventional behavior with the all-zero reset.
        if (params_.strategy == StrategyKind::extended_periodic_ls &&
            (c_tx_ > 0 || modulus_ > 1)) {
            return SleepCommand::reset();
        }
        return std::nullopt;
    }
    if (head.c_fr <= 0) {
        return std::nullopt;
    }
    switch (params_.strategy) {
        case StrategyKind::periodic_ls:
            return SleepCommand::basic(head.c_fr);
        case StrategyKind::slow_periodic_ls:
            return SleepCommand::basic(std::min(head.c_fr, kMaxBasicSleep));
        case StrategyKind::extended_periodic_ls:
            return SleepCommand::extended(head.c_fr, std::min(params_.n_snz, head.c_fr - 1));
        default:
            return std::nullopt;
    }
}

std::optional<FrameToSend> LinkTransmitter::select_frame() const {
    if (!transmit_enabled()) {
        return std::nullopt;
    }
    if (!queue_.empty()) {
        const QueuedFrame& head = queue_.front();
        return FrameToSend{false, head.packet_id, head.c_fr, command_for_head(head)};
    }
    if (params_.strategy == StrategyKind::slow_periodic_ls && !pending_.empty() && c_tx_ == 0) {
        return FrameToSend{true, 0, 0, SleepCommand::basic(pending_.front())};
    }
    return std::nullopt;
}

void LinkTransmitter::on_sent_empty(const FrameToSend& frame) {
    if (!frame.is_empty || !frame.command) {
        throw ConfigError("on_sent_empty expects an empty sleep frame");
    }
    c_tx_ = frame.command->n_slp;
    modulus_ = 1;
    set_this_slot_ = true;
    if (!pending_.empty()) {
        pending_.erase(pending_.begin());
    }
}

void LinkTransmitter::on_ack(const FrameToSend& frame) {
    if (frame.is_empty || queue_.empty()) {
        throw ConfigError("on_ack expects the head-of-queue data frame");
    }
    if (frame.command) {
        c_tx_ = frame.command->n_slp;
        modulus_ = frame.command->snooze_modulus();
        set_this_slot_ = true;
        if (params_.strategy == StrategyKind::slow_periodic_ls &&
            frame.c_fr > kMaxBasicSleep) {
            // Remainder of the suspension rides on empty sleep frames.
            auto seq = slow_command_sequence(frame.c_fr);
            pending_.assign(seq.begin() + 1, seq.end());
        }
    }
    queue_.pop_front();
}

bool LinkTransmitter::on_ack_timeout() {
    if (queue_.empty()) {
        throw ConfigError("on_ack_timeout without an outstanding frame");
    }
    QueuedFrame& head = queue_.front();
    if (head.retries_used >= retry_limit_) {
        queue_.pop_front();
        return true;
    }
    ++head.retries_used;
    return false;
}

void LinkTransmitter::slot_end() {
    if (!set_this_slot_ && c_tx_ > 0) {
        --c_tx_;
    }
    set_this_slot_ = false;
}

void LinkTransmitter::on_desync() {
    c_tx_ = 0;
    modulus_ = 1;
    set_this_slot_ = false;
    pending_.clear();
}

bool LinkReceiver::listening_enabled() const {
    return side_enabled(c_rx_, modulus_);
}

bool LinkReceiver::on_frame(const std::optional<SleepCommand>& command,
                            bool is_empty_sleep_frame) {
    if (command && ls_enabled_) {
        c_rx_ = command->n_slp;
        modulus_ = command->snooze_modulus();
        set_this_slot_ = true;
    }
    return !is_empty_sleep_frame;
}

void LinkReceiver::slot_end() {
    if (!set_this_slot_ && c_rx_ > 0) {
        --c_rx_;
    }
    set_this_slot_ = false;
}

void LinkReceiver::on_desync() {
    c_rx_ = 0;
    modulus_ = 1;
    set_this_slot_ = false;
}

}  // namespace tschls
