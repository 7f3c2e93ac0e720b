#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tschls/analytic.hpp"
#include "tschls/lse.hpp"
#include "tschls/table1.hpp"

using namespace tschls;

namespace {

TrafficSpec periodic(double period_s, std::optional<double> deadline_s = std::nullopt) {
    TrafficSpec traffic;
    traffic.period_us = to_micros(period_s);
    if (deadline_s) {
        traffic.relative_deadline_us = to_micros(*deadline_s);
    }
    return traffic;
}

PowerFigures figures_for(StrategyKind kind, double period_s,
                         std::optional<double> deadline_s = std::nullopt,
                         std::optional<int> n_snz_override = std::nullopt) {
    return analytic_power(kind, periodic(period_s, deadline_s), SlotframeConfig{}, EnergyModel{},
                          FrameSpec{}, n_snz_override);
}

}  // namespace

TEST_CASE("analytic spot values") {
    const PowerFigures tsch = figures_for(StrategyKind::conventional_tsch, 30.0);
    CHECK(tsch.p_tx_uw == doctest::Approx(8.8667).epsilon(5e-5));
    CHECK(tsch.p_rx_uw == doctest::Approx(73.3168).epsilon(5e-6));
    CHECK(tsch.t_wc_s == doctest::Approx(2.02));

    const PowerFigures ext = figures_for(StrategyKind::extended_periodic_ls, 120.0, 10.0);
    CHECK(ext.p_tx_uw == doctest::Approx(2.3000).epsilon(5e-5));
    CHECK(ext.p_rx_uw == doctest::Approx(19.0210).epsilon(5e-5));
    CHECK(ext.t_wc_s == doctest::Approx(8.08));
    CHECK(*ext.n_wup == 14);

    const PowerFigures slow = figures_for(StrategyKind::slow_periodic_ls, 600.0);
    CHECK(slow.p_tx_uw == doctest::Approx(1.0333).epsilon(5e-5));
    CHECK(slow.p_rx_uw == doctest::Approx(1.2733).epsilon(5e-5));
    CHECK(*slow.n_emp == 4);
    CHECK(slow.t_wc_s == doctest::Approx(129.28));
}

TEST_CASE("reference table matches the pinned values") {
    const Table1Check check = table1_verify();
    for (const auto& line : check.mismatches) {
        MESSAGE(line);
    }
    CHECK(check.ok);
    CHECK(table1_reference().size() == 14);
}

TEST_CASE("analytic preconditions") {
    TrafficSpec sporadic;
    sporadic.kind = TrafficKind::sporadic;
    sporadic.period_us = 0;
    sporadic.mean_interarrival_us = 60 * kMicrosPerSecond;
    CHECK_THROWS_AS(analytic_power(StrategyKind::conventional_tsch, sporadic, SlotframeConfig{},
                                   EnergyModel{}, FrameSpec{}),
                    ConfigError);
    CHECK_THROWS_AS(figures_for(StrategyKind::periodic_ls, 2.02), ConfigError);
    CHECK_THROWS_AS(figures_for(StrategyKind::periodic_ls, 600.0), ConfigError);
    CHECK_THROWS_AS(figures_for(StrategyKind::extended_periodic_ls, 600.0), ConfigError);
    CHECK_THROWS_AS(figures_for(StrategyKind::conventional_tsch, 1.5), ConfigError);
}

TEST_CASE("oracle gap for exact-multiple periods") {
    CHECK(oracle_gap_periodic(periodic(30.3), SlotframeConfig{}, EnergyModel{}, FrameSpec{}) ==
          doctest::Approx(0.3267).epsilon(1e-3));
    CHECK(oracle_gap_periodic(periodic(2.02), SlotframeConfig{}, EnergyModel{}, FrameSpec{}) ==
          doctest::Approx(4.9010).epsilon(1e-4));

    FrameSpec no_ie;
    no_ie.sleep_ie_bytes = 0;
    no_ie.xsleep_ie_bytes = 1;
    CHECK(oracle_gap_periodic(periodic(30.3), SlotframeConfig{}, EnergyModel{}, no_ie) == 0.0);

    CHECK_THROWS_AS(oracle_gap_periodic(periodic(30.0), SlotframeConfig{}, EnergyModel{},
                                        FrameSpec{}),
                    ConfigError);
}

TEST_CASE("oracle gap equals the analytic difference at exact multiples") {
    for (int k : {2, 5, 15, 33, 64}) {
        const double period_s = k * SlotframeConfig{}.slotframe_seconds();
        const TrafficSpec traffic = periodic(period_s);
        const PowerFigures basic =
            analytic_power(StrategyKind::periodic_ls, traffic, SlotframeConfig{}, EnergyModel{},
                           FrameSpec{});
        const PowerFigures oracle =
            analytic_power(StrategyKind::oracle, traffic, SlotframeConfig{}, EnergyModel{},
                           FrameSpec{});
        const double gap =
            oracle_gap_periodic(traffic, SlotframeConfig{}, EnergyModel{}, FrameSpec{});
        const double total_excess =
            (basic.p_tx_uw - oracle.p_tx_uw) + (basic.p_rx_uw - oracle.p_rx_uw);
        CHECK(total_excess == doctest::Approx(gap).epsilon(1e-9));
    }
}

TEST_CASE("deadline bound on the sleep time") {
    SlotframeConfig cfg;
    CHECK(deadline_max_nslp(to_micros(30.0), cfg) == 13);
    CHECK(deadline_max_nslp(to_micros(2.03), cfg) == 0);
    CHECK(deadline_max_nslp(to_micros(4.04), cfg) == 1);
    CHECK_THROWS_AS(deadline_max_nslp(to_micros(2.02), cfg), ConfigError);
    CHECK_THROWS_AS(deadline_max_nslp(to_micros(1.0), cfg), ConfigError);
}

TEST_CASE("receiver power ordering: oracle <= suspension <= conventional") {
    for (double period_s : {4.3, 30.0, 60.61, 120.0, 300.0, 600.0, 2000.0}) {
        const PowerFigures oracle = figures_for(StrategyKind::oracle, period_s);
        const PowerFigures tsch = figures_for(StrategyKind::conventional_tsch, period_s);
        CHECK(oracle.p_rx_uw <= tsch.p_rx_uw);

        const auto q = floor_normalized(to_micros(period_s), SlotframeConfig{});
        if (q >= 2 && q - 1 <= kMaxBasicSleep) {
            const PowerFigures basic = figures_for(StrategyKind::periodic_ls, period_s);
            CHECK(oracle.p_rx_uw <= basic.p_rx_uw);
            CHECK(basic.p_rx_uw <= tsch.p_rx_uw);
            CHECK(basic.p_rz_oracle_uw == doctest::Approx(oracle.p_rx_uw));
        }
        for (double deadline_s : {4.1, 10.0, 30.0}) {
            const auto d = floor_normalized(to_micros(deadline_s), SlotframeConfig{});
            if (d >= 1 && d < q) {
                const PowerFigures ext =
                    figures_for(StrategyKind::extended_periodic_ls, period_s, deadline_s);
                CHECK(oracle.p_rx_uw <= ext.p_rx_uw);
                CHECK(ext.p_rx_uw <= tsch.p_rx_uw);
            }
        }
    }
}

TEST_CASE("extended receiver power is non-increasing in the snooze time") {
    double previous = 1e9;
    for (int snooze = 1; snooze <= 63; ++snooze) {
        const PowerFigures ext =
            figures_for(StrategyKind::extended_periodic_ls, 600.0, std::nullopt, snooze);
        CHECK(ext.p_rx_uw <= previous + 1e-12);
        previous = ext.p_rx_uw;
    }
}

TEST_CASE("zero-size IE at an exact multiple reduces to the oracle") {
    FrameSpec frames;
    frames.sleep_ie_bytes = 0;
    frames.xsleep_ie_bytes = 1;
    const PowerFigures basic = analytic_power(StrategyKind::periodic_ls, periodic(30.3),
                                              SlotframeConfig{}, EnergyModel{}, frames);
    CHECK(basic.p_rx_uw == basic.p_rz_oracle_uw);
}

TEST_CASE("analytic n_wup agrees with the wake-set enumeration") {
    for (double period_s : {120.0, 240.0, 600.0}) {
        for (double deadline_s : {8.2, 10.0, 30.0, 120.0}) {
            const auto q = floor_normalized(to_micros(period_s), SlotframeConfig{});
            const auto d = floor_normalized(to_micros(deadline_s), SlotframeConfig{});
            if (d < 1 || d >= q) {
                continue;
            }
            const PowerFigures ext =
                figures_for(StrategyKind::extended_periodic_ls, period_s, deadline_s);
            const auto wakes = wake_slotframes(*ext.n_slp, *ext.n_snz);
            CHECK(*ext.n_wup == static_cast<int>(wakes.size()) - 1);
        }
    }
}
