#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "tschls/core.hpp"

namespace tschls {

/// Resolved per-link strategy parameters.
///
/// For the slow strategy, `slow_sequence` is the full chain of command values
/// issued per packet when the frame goes out at its first opportunity: the
/// first value rides the data frame, every later one rides an empty sleep
/// frame, and the last value re-enables the link at the intended time.
struct StrategyParams {
    StrategyKind strategy = StrategyKind::conventional_tsch;
    int n_slp = 0;
    int n_snz = 0;
    int n_emp = 0;
    std::vector<int> slow_sequence;
};

/// Derive strategy parameters from the traffic description.
///   periodic:  n_slp = floor(tau_c) - 1, which must fit the 6-bit field;
///   slow:      chained commands of value 63 ending with (floor(tau_c)-1) mod 64;
///   extended:  n_slp = floor(tau_c) - 1, n_snz = floor(tau_d) - 1.
StrategyParams compute_strategy_params(StrategyKind strategy, const TrafficSpec& traffic,
                                       const SlotframeConfig& cfg);

/// Command-value chain that suspends the receiver for `total_sleep + 1`
/// slotframes counted from the frame that carries the first value.
std::vector<int> slow_command_sequence(int total_sleep);

/// Slotframe offsets (1-based, counted from the command slotframe) at which
/// an xsleep(n_slp, n_snz) leaves the link enabled. Wake-ups are aligned
/// backwards from the end of the sleeping period; the last element, at
/// offset n_slp + 1, is the full re-enable.
std::vector<int> wake_slotframes(int n_slp, int n_snz);

/// Number of temporary wake-ups before the full re-enable:
/// ceil((n_slp+1)/(n_snz+1)) - 1. Always |wake_slotframes| - 1.
int n_wup(int n_slp, int n_snz);

/// One pending data frame on the transmitter side. `c_fr` counts down at the
/// start of every allocated slot so that the command eventually sent keeps
/// the receiver's re-enable instant where the release time demanded it.
struct QueuedFrame {
    std::int64_t release_us = 0;
    std::uint64_t packet_id = 0;
    int c_fr = 0;
    int retries_used = 0;
    bool is_empty_sleep_frame = false;
};

/// What the transmitter puts on air in the current slot.
struct FrameToSend {
    bool is_empty = false;
    std::uint64_t packet_id = 0;
    int c_fr = 0;  // frame counter value at this attempt (data frames only)
    std::optional<SleepCommand> command;
};

/// Transmitter side of one link's listening-suspension entity.
///
/// Drive it once per allocated slot: slot_begin(), then (if transmit_enabled
/// and select_frame yields something) report the exchange outcome through
/// on_ack / on_ack_timeout / on_sent_empty, then slot_end().
class LinkTransmitter {
  public:
    static constexpr std::size_t kDefaultQueueCapacity = 16;

    LinkTransmitter() = default;
    LinkTransmitter(StrategyParams params, const SlotframeConfig& cfg,
                    std::size_t queue_capacity = kDefaultQueueCapacity);

    /// New packet released by the upper layer. Interrupts a pending slow
    /// sequence. Returns false when the queue is full (frame dropped).
    bool on_transmission_request(std::int64_t release_us, std::uint64_t packet_id);

    /// Start-of-slot bookkeeping for the link's allocated cell: every queued
    /// frame's c_fr counts down (never below zero).
    void slot_begin();

    bool transmit_enabled() const;

    /// Frame for this slot, if any; returns nothing when disabled, or when
    /// there is neither a queued frame nor a due empty sleep frame.
    std::optional<FrameToSend> select_frame() const;

    /// Empty sleep frames are unacknowledged; the counter loads at send time.
    void on_sent_empty(const FrameToSend& frame);

    /// Ack received for the head-of-queue data frame sent this slot.
    void on_ack(const FrameToSend& frame);

    /// No ack before timeout. Returns true when the retry budget is spent
    /// and the head frame was dropped.
    bool on_ack_timeout();

    /// End-of-slot counter update; a counter set in this same slot holds.
    void slot_end();

    /// Synchronization loss: every sleep counter clears, suspension ends.
    void on_desync();

    int c_tx() const { return c_tx_; }
    int snooze_modulus() const { return modulus_; }
    std::size_t queue_depth() const { return queue_.size(); }
    std::size_t queue_capacity() const { return capacity_; }
    const std::deque<QueuedFrame>& queue() const { return queue_; }
    const std::vector<int>& pending_sequence() const { return pending_; }
    const StrategyParams& params() const { return params_; }

  private:
    std::optional<SleepCommand> command_for_head(const QueuedFrame& head) const;

    StrategyParams params_{};
    int retry_limit_ = 15;
    int initial_c_fr_ = 0;
    std::size_t capacity_ = kDefaultQueueCapacity;
    std::deque<QueuedFrame> queue_;
    std::vector<int> pending_;  // empty-sleep-frame command values, front is next
    int c_tx_ = 0;
    int modulus_ = 1;
    bool set_this_slot_ = false;
};

/// Receiver side: obeys sleep commands unless listening suspension is locally
/// disabled, in which case commands are ignored and the radio stays on.
class LinkReceiver {
  public:
    explicit LinkReceiver(bool ls_enabled = true) : ls_enabled_(ls_enabled) {}

    bool listening_enabled() const;

    /// Frame decoded in this slot. Applies the embedded command (if any) and
    /// returns whether an ack goes back: data frames are acknowledged, empty
    /// sleep frames are not.
    bool on_frame(const std::optional<SleepCommand>& command, bool is_empty_sleep_frame);

    void slot_end();
    void on_desync();

    int c_rx() const { return c_rx_; }
    int snooze_modulus() const { return modulus_; }
    bool ls_enabled() const { return ls_enabled_; }

  private:
    bool ls_enabled_ = true;
    int c_rx_ = 0;
    int modulus_ = 1;
    bool set_this_slot_ = false;
};

}  // namespace tschls
