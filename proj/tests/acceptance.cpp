// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 only when all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "tschls/analytic.hpp"
#include "tschls/ie_codec.hpp"
#include "tschls/lse.hpp"
#include "tschls/rng.hpp"
#include "tschls/sim.hpp"
#include "tschls/table1.hpp"

using namespace tschls;

namespace {

struct Gate {
    bool all_ok = true;

    void report(int number, const std::string& name, bool ok, const std::string& detail,
                double seconds) {
        std::printf("%s  criterion %d: %-34s  %s  (%.2f s)\n", ok ? "PASS" : "FAIL", number,
                    name.c_str(), detail.c_str(), seconds);
        all_ok = all_ok && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Scenario periodic_scenario(StrategyKind strategy, double period_s,
                           std::optional<double> deadline_s, std::int64_t horizon,
                           std::uint64_t seed) {
    Scenario scenario;
    scenario.strategy = strategy;
    scenario.traffic.kind = TrafficKind::periodic;
    scenario.traffic.period_us = to_micros(period_s);
    if (deadline_s) {
        scenario.traffic.relative_deadline_us = to_micros(*deadline_s);
    }
    scenario.horizon_slotframes = horizon;
    scenario.channel.seed = seed;
    return scenario;
}

// --- criterion 1: analytic reproduction of the reference table ------------

void criterion_table(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    const Table1Check check = table1_verify();
    for (const std::string& line : check.mismatches) {
        std::printf("        %s\n", line.c_str());
    }
    const double elapsed = seconds_since(start);
    const bool ok = check.ok && elapsed < 1.0;
    gate.report(1, "reference table reproduction",
                ok, check.ok ? "14/14 rows within 0.0005 uW / 0.005 s" : "rows deviate", elapsed);
}

// --- criterion 2: worked protocol examples --------------------------------

void criterion_worked_examples(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    const int wakeups = n_wup(296, 13);
    ok &= wakeups == 21;
    detail << "n_wup(296,13)=" << wakeups;

    const std::vector<int> wakes = wake_slotframes(58, 13);
    ok &= wakes == std::vector<int>{3, 17, 31, 45, 59};
    detail << ", wakes(58,13)={";
    for (std::size_t i = 0; i < wakes.size(); ++i) {
        detail << (i ? "," : "") << wakes[i];
    }
    detail << "}";

    TrafficSpec slow_traffic;
    slow_traffic.period_us = to_micros(600.0);
    const StrategyParams slow =
        compute_strategy_params(StrategyKind::slow_periodic_ls, slow_traffic, SlotframeConfig{});
    ok &= slow.slow_sequence.size() == 5;
    ok &= slow.n_emp == 4;
    ok &= slow.slow_sequence.back() == 40;
    detail << ", slow frames=" << slow.slow_sequence.size() << " n_emp=" << slow.n_emp;

    TrafficSpec multiple;
    multiple.period_us = to_micros(30.3);
    const double gap =
        oracle_gap_periodic(multiple, SlotframeConfig{}, EnergyModel{}, FrameSpec{});
    ok &= std::fabs(gap - 0.33) <= 0.005;
    detail << ", gap(30.3s)=" << gap;

    const double elapsed = seconds_since(start);
    ok &= elapsed < 1.0;
    gate.report(2, "worked protocol examples", ok, detail.str(), elapsed);
}

// --- criterion 3: simulation converges to the analytic figures ------------

void criterion_convergence(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    for (const Table1Row& row : table1_reference()) {
        const Scenario scenario =
            periodic_scenario(row.strategy, row.t_c_s, row.t_d_s, 200'000, 1234);
        const SimReport report = run_scenario(scenario);
        const PowerFigures figures =
            analytic_power(row.strategy, scenario.traffic, scenario.slotframe, scenario.energy,
                           scenario.frames);
        const double err_tx = std::fabs(report.tx_power_uw - figures.p_tx_uw) / figures.p_tx_uw;
        const double err_rx = std::fabs(report.rx_power_uw - figures.p_rx_uw) / figures.p_rx_uw;
        worst = std::max({worst, err_tx, err_rx});
        if (err_tx > 0.01 || err_rx > 0.01) {
            ok = false;
            std::printf("        %s T_c=%.0f: err_tx=%.4f%% err_rx=%.4f%%\n",
                        strategy_label(row.strategy).c_str(), row.t_c_s, err_tx * 100.0,
                        err_rx * 100.0);
        }
    }
    const double elapsed = seconds_since(start);
    ok &= elapsed < 30.0;
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "14 configs at 2e5 slotframes, worst error %.4f%% (limit 1%%)", worst * 100.0);
    gate.report(3, "simulation vs analytic power", ok, detail, elapsed);
}

// --- criterion 4: latency properties ---------------------------------------

void criterion_latency(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;

    {  // (a) conventional TSCH, sporadic traffic: uniform access delay
        Scenario scenario;
        scenario.strategy = StrategyKind::conventional_tsch;
        scenario.traffic.kind = TrafficKind::sporadic;
        scenario.traffic.period_us = 0;
        scenario.traffic.mean_interarrival_us = to_micros(10.0);
        scenario.traffic.min_interarrival_us = to_micros(2.5);
        scenario.horizon_slotframes = 120'000;
        scenario.channel.seed = 20;
        const SimReport report = run_scenario(scenario);
        const LatencySummary lat = measure_latency(report);
        const double half_sf = report.slotframe_seconds / 2.0;
        const bool mean_ok = std::fabs(lat.mean_s - half_sf) / half_sf <= 0.02;
        const bool max_ok = lat.max_s <= report.slotframe_seconds;
        ok &= mean_ok && max_ok && lat.count >= 20'000;
        detail << "tsch mean=" << lat.mean_s << "s max=" << lat.max_s << "s n=" << lat.count;
    }

    {  // (b) extended strategy bounds sporadic delay by the snooze period
        Scenario scenario;
        scenario.strategy = StrategyKind::extended_periodic_ls;
        scenario.traffic.kind = TrafficKind::sporadic;
        scenario.traffic.period_us = to_micros(600.0);
        scenario.traffic.relative_deadline_us = to_micros(30.0);
        scenario.traffic.mean_interarrival_us = to_micros(120.0);
        scenario.traffic.min_interarrival_us = to_micros(30.0);
        scenario.horizon_slotframes = 650'000;
        scenario.channel.seed = 21;
        const SimReport report = run_scenario(scenario);
        const LatencySummary lat = measure_latency(report);
        ok &= lat.count >= 10'000;
        ok &= lat.max_s <= 28.28;
        detail << " | xsleep n=" << lat.count << " max=" << lat.max_s << "s (cap 28.28)";
    }

    {  // (c) exact-multiple period: no idle listening after warm-up
        const Scenario scenario =
            periodic_scenario(StrategyKind::periodic_ls, 30.3, std::nullopt, 100'000, 22);
        const SimReport report = run_scenario(scenario);
        ok &= report.counts.idle_listens == 0;
        detail << " | lock-step idle=" << report.counts.idle_listens;
    }

    gate.report(4, "latency properties", ok, detail.str(), seconds_since(start));
}

// --- criterion 5: protocol property suite ----------------------------------

bool property_codec_roundtrip(std::string& note) {
    for (int n = 0; n <= kMaxBasicSleep; ++n) {
        if (!(decode_ie(encode_ie(SleepCommand::basic(n))) == SleepCommand::basic(n))) {
            note = "basic roundtrip failed at " + std::to_string(n);
            return false;
        }
    }
    SplitMix64 rng(0x5EED);
    int checked = 0;
    while (checked < 100'000) {
        const int n_slp = static_cast<int>(rng.next_u64() % (kMaxExtendedSleep + 1));
        const int n_snz = static_cast<int>(rng.next_u64() % (kMaxSnooze + 1));
        if (!(n_snz < n_slp || (n_slp == 0 && n_snz == 0))) {
            continue;
        }
        const SleepCommand cmd = SleepCommand::extended(n_slp, n_snz);
        if (!(decode_ie(encode_ie(cmd)) == cmd)) {
            note = "extended roundtrip failed at " + std::to_string(n_slp) + "/" +
                   std::to_string(n_snz);
            return false;
        }
        ++checked;
    }
    note = "codec 64 + 100000 roundtrips";
    return true;
}

bool property_counter_coherence(std::string& note) {
    const std::vector<Scenario> setups = {
        periodic_scenario(StrategyKind::periodic_ls, 30.0, std::nullopt, 5'000, 31),
        periodic_scenario(StrategyKind::slow_periodic_ls, 600.0, std::nullopt, 5'000, 32),
        periodic_scenario(StrategyKind::extended_periodic_ls, 120.0, 30.0, 5'000, 33),
    };
    for (const Scenario& scenario : setups) {
        LinkSimulation sim(scenario);
        while (!sim.finished()) {
            sim.step_slotframe();
            if (sim.transmitter().c_tx() != sim.receiver().c_rx()) {
                note = "counters diverged under " + strategy_label(scenario.strategy) +
                       " at slotframe " + std::to_string(sim.slotframe_index());
                return false;
            }
        }
    }
    note = "c_tx == c_rx at every boundary, 3 strategies x 5000 sf";
    return true;
}

bool property_loss_safety(std::string& note) {
    // A frame at the head of the queue sees a transmitter-enabled slot at
    // least every 64 slotframes, so its retry budget (retry_limit + 1
    // attempts) resolves it within ~1100 slotframes; a stall beyond that
    // means the receiver slept through every attempt, i.e. a deadlock.
    constexpr std::int64_t kStallBound = 1'100;
    SplitMix64 pattern_rng(0xFEED);
    for (int pattern = 0; pattern < 1'000; ++pattern) {
        Scenario scenario;
        const int which = static_cast<int>(pattern_rng.next_u64() % 3);
        const double period_s = 10.0 + pattern_rng.next_double() * 70.0;
        if (which == 0) {
            scenario = periodic_scenario(StrategyKind::periodic_ls, period_s, std::nullopt,
                                         2'600, pattern_rng.next_u64());
        } else if (which == 1) {
            scenario = periodic_scenario(StrategyKind::slow_periodic_ls, period_s, std::nullopt,
                                         2'600, pattern_rng.next_u64());
        } else {
            const double deadline_s = 4.1 + pattern_rng.next_double() * 15.0;
            scenario = periodic_scenario(StrategyKind::extended_periodic_ls,
                                         std::max(period_s, 3 * deadline_s), deadline_s, 2'600,
                                         pattern_rng.next_u64());
        }
        scenario.channel.data_loss_prob = pattern_rng.next_double() * 0.3;
        scenario.channel.ack_loss_prob = pattern_rng.next_double() * 0.3;

        LinkSimulation sim(scenario);
        std::size_t previous_depth = 0;
        std::int64_t stall = 0;
        while (!sim.finished()) {
            sim.step_slotframe();
            const std::size_t depth = sim.transmitter().queue_depth();
            if (depth == 0 || depth < previous_depth) {
                stall = 0;
            } else {
                ++stall;
            }
            previous_depth = depth;
            if (stall > kStallBound) {
                note = "queue stalled " + std::to_string(stall) + " slotframes in pattern " +
                       std::to_string(pattern);
                return false;
            }
        }
        const SimReport report = sim.report();
        if (report.counts.packets_delivered == 0) {
            note = "nothing delivered in pattern " + std::to_string(pattern);
            return false;
        }
    }
    note = "1000 loss patterns at p <= 0.3, no stall beyond 1100 sf";
    return true;
}

bool property_queue_stability(std::string& note) {
    Scenario scenario = periodic_scenario(StrategyKind::periodic_ls, 5.05, std::nullopt,
                                          100'000, 77);  // tau_c = 2.5
    scenario.channel.data_loss_prob = 0.1;
    scenario.channel.ack_loss_prob = 0.1;
    const SimReport report = run_scenario(scenario);
    char buf[96];
    std::snprintf(buf, sizeof buf, "p=0.1, tau_c=2.5: mean depth %.3f, max %lld, overflows %lld",
                  report.mean_queue_depth, static_cast<long long>(report.max_queue_depth),
                  static_cast<long long>(report.counts.queue_overflows));
    note = buf;
    return report.mean_queue_depth <= 2.0 && report.counts.queue_overflows == 0 &&
           report.max_queue_depth < 16;
}

void criterion_properties(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = true;
    std::ostringstream detail;

    ok &= property_codec_roundtrip(note);
    detail << note;
    ok &= property_counter_coherence(note);
    detail << " | coherence ok";
    ok &= property_loss_safety(note);
    detail << " | " << note;
    ok &= property_queue_stability(note);
    detail << " | " << note;

    gate.report(5, "protocol property suite", ok, detail.str(), seconds_since(start));
}

// --- criterion 6: determinism ----------------------------------------------

void criterion_determinism(Gate& gate) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;

    Scenario lossy = periodic_scenario(StrategyKind::extended_periodic_ls, 120.0, 30.0, 20'000,
                                       0xDE7E);
    lossy.channel.data_loss_prob = 0.15;
    lossy.channel.ack_loss_prob = 0.1;

    Scenario sporadic;
    sporadic.strategy = StrategyKind::conventional_tsch;
    sporadic.traffic.kind = TrafficKind::sporadic;
    sporadic.traffic.period_us = 0;
    sporadic.traffic.mean_interarrival_us = to_micros(15.0);
    sporadic.traffic.min_interarrival_us = to_micros(3.0);
    sporadic.horizon_slotframes = 20'000;
    sporadic.channel.seed = 0xACE;

    for (const Scenario& scenario : {lossy, sporadic}) {
        std::ostringstream trace_a;
        std::ostringstream trace_b;
        const SimReport a = run_scenario(scenario, &trace_a);
        const SimReport b = run_scenario(scenario, &trace_b);
        ok &= a.to_csv() == b.to_csv();
        ok &= a.summary() == b.summary();
        ok &= trace_a.str() == trace_b.str();
        ok &= !trace_a.str().empty();
    }
    gate.report(6, "seeded determinism", ok, "reports and traces byte-identical on reruns",
                seconds_since(start));
}

}  // namespace

int main() {
    Gate gate;
    criterion_table(gate);
    criterion_worked_examples(gate);
    criterion_convergence(gate);
    criterion_latency(gate);
    criterion_properties(gate);
    criterion_determinism(gate);
    std::printf("%s\n", gate.all_ok ? "acceptance: all criteria passed"
                                    : "acceptance: FAILURES present");
    return gate.all_ok ? 0 : 1;
}
