#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tschls/analytic.hpp"
#include "tschls/scenario_io.hpp"
#include "tschls/sim.hpp"
#include "tschls/table1.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMismatch = 2;

std::string fmt(const char* pattern, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

int cmd_table1(const std::string& format) {
    const auto table_format =
        format == "csv" ? tschls::TableFormat::csv : tschls::TableFormat::markdown;
    std::cout << tschls::table1_render(table_format);
    const tschls::Table1Check check = tschls::table1_verify();
    if (!check.ok) {
        for (const std::string& line : check.mismatches) {
            std::cerr << "reference mismatch: " << line << "\n";
        }
        return kExitMismatch;
    }
    return kExitOk;
}

void print_comparison(const tschls::Scenario& scenario, const tschls::SimReport& report,
                      const std::string& format) {
    if (scenario.traffic.kind == tschls::TrafficKind::sporadic) {
        std::cout << (format == "csv" ? "analytic,n/a\n" : "analytic:          n/a (sporadic traffic)\n");
        return;
    }
    const tschls::PowerFigures figures =
        tschls::analytic_power(scenario.strategy, scenario.traffic, scenario.slotframe,
                               scenario.energy, scenario.frames);
    const double err_tx = (report.tx_power_uw - figures.p_tx_uw) / figures.p_tx_uw * 100.0;
    const double err_rx = (report.rx_power_uw - figures.p_rx_uw) / figures.p_rx_uw * 100.0;
    if (format == "csv") {
        std::cout << "analytic_ptx_uw,analytic_prx_uw,analytic_twc_s,err_ptx_pct,err_prx_pct\n"
                  << fmt("%.4f", figures.p_tx_uw) << ',' << fmt("%.4f", figures.p_rx_uw) << ','
                  << fmt("%.2f", figures.t_wc_s) << ',' << fmt("%.4f", err_tx) << ','
                  << fmt("%.4f", err_rx) << '\n';
    } else {
        std::cout << "analytic:          p_tx " << fmt("%.4f", figures.p_tx_uw) << " uW (err "
                  << fmt("%.4f", err_tx) << "%), p_rx " << fmt("%.4f", figures.p_rx_uw)
                  << " uW (err " << fmt("%.4f", err_rx) << "%), t_wc "
                  << fmt("%.2f", figures.t_wc_s) << " s\n";
    }
}

int cmd_run(const std::string& path, const std::string& trace_path, bool compare,
            bool include_baseline, std::optional<std::uint64_t> seed, const std::string& format) {
    tschls::Scenario scenario = tschls::load_scenario(path);
    if (seed) {
        scenario.channel.seed = *seed;
    }

    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) {
            throw tschls::ConfigError("cannot open trace file: " + trace_path);
        }
        trace = &trace_file;
    }

    const tschls::SimReport report = tschls::run_scenario(scenario, trace);
    if (format == "csv") {
        std::cout << report.to_csv(include_baseline, scenario.energy.baseline_power_uw);
    } else {
        std::cout << report.summary(include_baseline, scenario.energy.baseline_power_uw);
    }
    if (compare) {
        print_comparison(scenario, report, format);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& parameter,
              const std::vector<double>& values) {
    const tschls::Scenario base = tschls::load_scenario(path);
    std::cout << "param,value,strategy,n_slp,n_snz,t_wc_s,analytic_ptx_uw,analytic_prx_uw,"
                 "sim_ptx_uw,sim_prx_uw,err_ptx_pct,err_prx_pct\n";
    for (double value : values) {
        tschls::Scenario scenario = base;
        if (parameter == "period_s") {
            scenario.traffic.period_us = tschls::to_micros(value);
        } else if (parameter == "deadline_s") {
            scenario.traffic.relative_deadline_us = tschls::to_micros(value);
        } else if (parameter == "data_loss") {
            scenario.channel.data_loss_prob = value;
        } else if (parameter == "n_snz_override") {
            // An exact-multiple deadline pins floor(tau_d) and hence n_snz.
            const auto snooze = static_cast<std::int64_t>(value);
            scenario.traffic.relative_deadline_us =
                (snooze + 1) * scenario.slotframe.slotframe_us();
        } else {
            throw tschls::ConfigError("unknown sweep parameter: " + parameter);
        }
        scenario.validate();

        std::string analytic_tx = "";
        std::string analytic_rx = "";
        std::string n_slp = "";
        std::string n_snz = "";
        std::string t_wc = "";
        double analytic_tx_value = 0.0;
        double analytic_rx_value = 0.0;
        bool have_analytic = false;
        if (scenario.traffic.kind != tschls::TrafficKind::sporadic) {
            const tschls::PowerFigures figures =
                tschls::analytic_power(scenario.strategy, scenario.traffic, scenario.slotframe,
                                       scenario.energy, scenario.frames);
            analytic_tx = fmt("%.4f", figures.p_tx_uw);
            analytic_rx = fmt("%.4f", figures.p_rx_uw);
            analytic_tx_value = figures.p_tx_uw;
            analytic_rx_value = figures.p_rx_uw;
            t_wc = fmt("%.2f", figures.t_wc_s);
            if (figures.n_slp) n_slp = std::to_string(*figures.n_slp);
            if (figures.n_snz) n_snz = std::to_string(*figures.n_snz);
            have_analytic = true;
        }

        const tschls::SimReport report = tschls::run_scenario(scenario);
        std::string err_tx = "";
        std::string err_rx = "";
        if (have_analytic) {
            err_tx = fmt("%.4f", (report.tx_power_uw - analytic_tx_value) / analytic_tx_value * 100.0);
            err_rx = fmt("%.4f", (report.rx_power_uw - analytic_rx_value) / analytic_rx_value * 100.0);
        }
        std::cout << parameter << ',' << fmt("%g", value) << ','
                  << tschls::strategy_label(scenario.strategy) << ',' << n_slp << ',' << n_snz
                  << ',' << t_wc << ',' << analytic_tx << ',' << analytic_rx << ','
                  << fmt("%.4f", report.tx_power_uw) << ',' << fmt("%.4f", report.rx_power_uw)
                  << ',' << err_tx << ',' << err_rx << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TSCH listening-suspension simulator and power model"};
    app.require_subcommand(1);

    std::string format = "md";

    auto* table1 = app.add_subcommand(
        "table1", "Print the reference power table and verify the analytic model against it");
    table1->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"md", "csv"}));

    std::string scenario_path;
    std::string trace_path;
    bool compare = false;
    bool include_baseline = false;
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "Simulate one scenario file and print the report");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--trace", trace_path, "Write a per-slot event trace to this path");
    run->add_flag("--compare", compare, "Append the analytic prediction and relative error");
    run->add_flag("--include-baseline", include_baseline,
                  "Fold the platform baseline power into the reported figures");
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"md", "csv"}));

    std::string parameter;
    std::vector<double> values;
    auto* sweep = app.add_subcommand(
        "sweep", "Run the scenario across a parameter range and emit one CSV row per value");
    sweep->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--param", parameter, "Parameter to vary")
        ->required()
        ->check(CLI::IsMember({"period_s", "deadline_s", "data_loss", "n_snz_override"}));
    sweep->add_option("--values", values, "Comma-separated values (empty: header-only output)")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (table1->parsed()) {
            return cmd_table1(format);
        }
        if (run->parsed()) {
            return cmd_run(scenario_path, trace_path, compare, include_baseline, seed, format);
        }
        if (sweep->parsed()) {
            return cmd_sweep(scenario_path, parameter, values);
        }
    } catch (const tschls::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
