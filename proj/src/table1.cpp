#include "tschls/table1.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tschls {

namespace {

using K = StrategyKind;

constexpr std::optional<double> kNone = std::nullopt;
constexpr std::optional<int> kNoInt = std::nullopt;

const std::array<Table1Row, 14> kReference = {{
    {30.0, kNone, K::oracle, kNoInt, kNoInt, 2.02, 8.8667, 9.6000},
    {30.0, kNone, K::conventional_tsch, kNoInt, kNoInt, 2.02, 8.8667, 73.3168},
    {30.0, kNone, K::periodic_ls, 13, kNoInt, 28.28, 9.0667, 13.6468},
    {120.0, kNone, K::oracle, kNoInt, kNoInt, 2.02, 2.2167, 2.4000},
    {120.0, kNone, K::conventional_tsch, kNoInt, kNoInt, 2.02, 2.2167, 69.5668},
    {120.0, kNone, K::periodic_ls, 58, kNoInt, 119.18, 2.2667, 2.8993},
    {120.0, 10.0, K::extended_periodic_ls, 58, 3, 8.08, 2.3000, 19.0210},
    {120.0, 30.0, K::extended_periodic_ls, 58, 13, 28.28, 2.3000, 7.5210},
    {600.0, kNone, K::oracle, kNoInt, kNoInt, 2.02, 0.4433, 0.4800},
    {600.0, kNone, K::conventional_tsch, kNoInt, kNoInt, 2.02, 0.4433, 68.5668},
    {600.0, kNone, K::slow_periodic_ls, 296, kNoInt, 129.28, 1.0333, 1.2733},
    {600.0, 10.0, K::extended_periodic_ls, 296, 3, 8.08, 0.4600, 17.5177},
    {600.0, 30.0, K::extended_periodic_ls, 296, 13, 28.28, 0.4600, 5.3277},
    {600.0, 120.0, K::extended_periodic_ls, 296, 58, 119.18, 0.4600, 1.6477},
}};

std::string fmt(const char* pattern, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string opt_int(const std::optional<int>& v, const char* none) {
    return v ? std::to_string(*v) : std::string(none);
}

std::string opt_seconds(const std::optional<double>& v, const char* none) {
    return v ? fmt("%.0f", *v) : std::string(none);
}

}  // namespace

std::span<const Table1Row> table1_reference() {
    return kReference;
}

TrafficSpec table1_traffic(const Table1Row& row) {
    TrafficSpec traffic;
    traffic.kind = TrafficKind::periodic;
    traffic.period_us = to_micros(row.t_c_s);
    if (row.t_d_s) {
        traffic.relative_deadline_us = to_micros(*row.t_d_s);
    }
    return traffic;
}

PowerFigures table1_compute(const Table1Row& row) {
    return analytic_power(row.strategy, table1_traffic(row), SlotframeConfig{}, EnergyModel{},
                          FrameSpec{});
}

Table1Check table1_verify() {
    Table1Check check;
    int index = 0;
    for (const Table1Row& row : kReference) {
        ++index;
        const PowerFigures got = table1_compute(row);
        const auto complain = [&](const std::string& what) {
            check.ok = false;
            check.mismatches.push_back("row " + std::to_string(index) + " (" +
                                       strategy_label(row.strategy) + ", T_c=" +
                                       fmt("%.0f", row.t_c_s) + " s): " + what);
        };
        if (row.n_slp && (!got.n_slp || *got.n_slp != *row.n_slp)) {
            complain("n_slp " + opt_int(got.n_slp, "none") + " != " + std::to_string(*row.n_slp));
        }
        if (row.n_snz && (!got.n_snz || *got.n_snz != *row.n_snz)) {
            complain("n_snz " + opt_int(got.n_snz, "none") + " != " + std::to_string(*row.n_snz));
        }
        if (std::fabs(got.t_wc_s - row.t_wc_s) > kTable1TimeTolS) {
            complain("t_wc " + fmt("%.4f", got.t_wc_s) + " != " + fmt("%.2f", row.t_wc_s));
        }
        if (std::fabs(got.p_tx_uw - row.p_tx_uw) > kTable1PowerTolUw) {
            complain("p_tx " + fmt("%.6f", got.p_tx_uw) + " != " + fmt("%.4f", row.p_tx_uw));
        }
        if (std::fabs(got.p_rx_uw - row.p_rx_uw) > kTable1PowerTolUw) {
            complain("p_rx " + fmt("%.6f", got.p_rx_uw) + " != " + fmt("%.4f", row.p_rx_uw));
        }
    }
    return check;
}

std::string table1_render(TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::csv) {
        out << "t_c_s,t_d_s,strategy,n_slp,n_snz,t_wc_s,p_tx_uw,p_rx_uw\n";
    } else {
        out << "| T_c (s) | T_d (s) | Strategy | N_slp | N_snz | T_wc (s) | P_tx (uW) | P_rx (uW) |\n";
        out << "|--------:|--------:|----------|------:|------:|---------:|----------:|----------:|\n";
    }
    for (const Table1Row& row : kReference) {
        const PowerFigures got = table1_compute(row);
        if (format == TableFormat::csv) {
            out << fmt("%.0f", row.t_c_s) << ',' << opt_seconds(row.t_d_s, "") << ','
                << strategy_label(row.strategy) << ',' << opt_int(got.n_slp, "") << ','
                << opt_int(got.n_snz, "") << ',' << fmt("%.2f", got.t_wc_s) << ','
                << fmt("%.4f", got.p_tx_uw) << ',' << fmt("%.4f", got.p_rx_uw) << '\n';
        } else {
            out << "| " << fmt("%.0f", row.t_c_s) << " | " << opt_seconds(row.t_d_s, "--")
                << " | " << strategy_label(row.strategy) << " | " << opt_int(got.n_slp, "--")
                << " | " << opt_int(got.n_snz, "--") << " | " << fmt("%.2f", got.t_wc_s) << " | "
                << fmt("%.4f", got.p_tx_uw) << " | " << fmt("%.4f", got.p_rx_uw) << " |\n";
        }
    }
    return out.str();
}

}  // namespace tschls
