#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "tschls/analytic.hpp"
#include "tschls/ie_codec.hpp"
#include "tschls/lse.hpp"
#include "tschls/scenario_io.hpp"
#include "tschls/sim.hpp"
#include "tschls/table1.hpp"

namespace py = pybind11;
using namespace tschls;

namespace {

SimReport run_with_optional_trace(const Scenario& scenario, const std::string& trace_path) {
    if (trace_path.empty()) {
        return run_scenario(scenario);
    }
    std::ofstream trace(trace_path);
    if (!trace) {
        throw ConfigError("cannot open trace file: " + trace_path);
    }
    return run_scenario(scenario, &trace);
}

}  // namespace

PYBIND11_MODULE(_tschls, m) {
    m.doc() = "TSCH listening-suspension simulator and power model";

    py::register_exception<Error>(m, "TschlsError");

    py::enum_<SleepKind>(m, "SleepKind")
        .value("basic", SleepKind::basic)
        .value("extended", SleepKind::extended);

    py::enum_<TrafficKind>(m, "TrafficKind")
        .value("periodic", TrafficKind::periodic)
        .value("quasi_periodic", TrafficKind::quasi_periodic)
        .value("sporadic", TrafficKind::sporadic);

    py::enum_<StrategyKind>(m, "StrategyKind")
        .value("tsch", StrategyKind::conventional_tsch)
        .value("oracle", StrategyKind::oracle)
        .value("basic", StrategyKind::periodic_ls)
        .value("slow", StrategyKind::slow_periodic_ls)
        .value("extended", StrategyKind::extended_periodic_ls);

    py::class_<SlotframeConfig>(m, "SlotframeConfig")
        .def(py::init<>())
        .def_readwrite("slot_us", &SlotframeConfig::slot_us)
        .def_readwrite("slots_per_slotframe", &SlotframeConfig::slots_per_slotframe)
        .def_readwrite("retry_limit", &SlotframeConfig::retry_limit)
        .def_property_readonly("slotframe_seconds", &SlotframeConfig::slotframe_seconds);

    py::class_<EnergyModel>(m, "EnergyModel")
        .def(py::init<>())
        .def_readwrite("e_tx0_uj", &EnergyModel::e_tx0_uj)
        .def_readwrite("e_tx_per_byte_uj", &EnergyModel::e_tx_per_byte_uj)
        .def_readwrite("e_rx0_uj", &EnergyModel::e_rx0_uj)
        .def_readwrite("e_rx_per_byte_uj", &EnergyModel::e_rx_per_byte_uj)
        .def_readwrite("e_ack_tx_uj", &EnergyModel::e_ack_tx_uj)
        .def_readwrite("e_ack_rx_uj", &EnergyModel::e_ack_rx_uj)
        .def_readwrite("e_idle_listen_uj", &EnergyModel::e_idle_listen_uj)
        .def_readwrite("baseline_power_uw", &EnergyModel::baseline_power_uw);

    py::class_<FrameSpec>(m, "FrameSpec")
        .def(py::init<>())
        .def_readwrite("payload_frame_bytes", &FrameSpec::payload_frame_bytes)
        .def_readwrite("sleep_ie_bytes", &FrameSpec::sleep_ie_bytes)
        .def_readwrite("xsleep_ie_bytes", &FrameSpec::xsleep_ie_bytes)
        .def_readwrite("empty_sleep_frame_bytes", &FrameSpec::empty_sleep_frame_bytes);

    py::class_<SleepCommand>(m, "SleepCommand")
        .def_static("basic", &SleepCommand::basic, py::arg("n_slp"))
        .def_static("extended", &SleepCommand::extended, py::arg("n_slp"), py::arg("n_snz"))
        .def_static("reset", &SleepCommand::reset)
        .def_readonly("kind", &SleepCommand::kind)
        .def_readonly("n_slp", &SleepCommand::n_slp)
        .def_readonly("n_snz", &SleepCommand::n_snz)
        .def("is_reset", &SleepCommand::is_reset)
        .def("__eq__",
             [](const SleepCommand& a, const SleepCommand& b) { return a == b; })
        .def("__repr__", [](const SleepCommand& c) {
            std::ostringstream out;
            out << (c.kind == SleepKind::basic ? "SleepCommand.basic(" : "SleepCommand.extended(")
                << c.n_slp;
            if (c.kind == SleepKind::extended) {
                out << ", " << c.n_snz;
            }
            out << ")";
            return out.str();
        });

    py::class_<TrafficSpec>(m, "TrafficSpec")
        .def(py::init<>())
        .def_readwrite("kind", &TrafficSpec::kind)
        .def_readwrite("period_us", &TrafficSpec::period_us)
        .def_readwrite("jitter_fraction", &TrafficSpec::jitter_fraction)
        .def_readwrite("mean_interarrival_us", &TrafficSpec::mean_interarrival_us)
        .def_readwrite("min_interarrival_us", &TrafficSpec::min_interarrival_us)
        .def_readwrite("relative_deadline_us", &TrafficSpec::relative_deadline_us);

    py::class_<ChannelSpec>(m, "ChannelSpec")
        .def(py::init<>())
        .def_readwrite("data_loss_prob", &ChannelSpec::data_loss_prob)
        .def_readwrite("ack_loss_prob", &ChannelSpec::ack_loss_prob)
        .def_readwrite("seed", &ChannelSpec::seed);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("slotframe", &Scenario::slotframe)
        .def_readwrite("energy", &Scenario::energy)
        .def_readwrite("frames", &Scenario::frames)
        .def_readwrite("traffic", &Scenario::traffic)
        .def_readwrite("strategy", &Scenario::strategy)
        .def_readwrite("channel", &Scenario::channel)
        .def_readwrite("horizon_slotframes", &Scenario::horizon_slotframes)
        .def_readwrite("allocated_slot_offset", &Scenario::allocated_slot_offset)
        .def("validate", &Scenario::validate);

    py::class_<StrategyParams>(m, "StrategyParams")
        .def_readonly("strategy", &StrategyParams::strategy)
        .def_readonly("n_slp", &StrategyParams::n_slp)
        .def_readonly("n_snz", &StrategyParams::n_snz)
        .def_readonly("n_emp", &StrategyParams::n_emp)
        .def_readonly("slow_sequence", &StrategyParams::slow_sequence);

    py::class_<PowerFigures>(m, "PowerFigures")
        .def_readonly("strategy", &PowerFigures::strategy)
        .def_readonly("p_tx_uw", &PowerFigures::p_tx_uw)
        .def_readonly("p_rx_uw", &PowerFigures::p_rx_uw)
        .def_readonly("p_rz_oracle_uw", &PowerFigures::p_rz_oracle_uw)
        .def_readonly("t_wc_s", &PowerFigures::t_wc_s)
        .def_readonly("n_slp", &PowerFigures::n_slp)
        .def_readonly("n_snz", &PowerFigures::n_snz)
        .def_readonly("n_emp", &PowerFigures::n_emp)
        .def_readonly("n_wup", &PowerFigures::n_wup);

    py::class_<SimCounts>(m, "SimCounts")
        .def_readonly("data_tx_plain", &SimCounts::data_tx_plain)
        .def_readonly("data_tx_basic_ie", &SimCounts::data_tx_basic_ie)
        .def_readonly("data_tx_xsleep_ie", &SimCounts::data_tx_xsleep_ie)
        .def_readonly("empty_tx", &SimCounts::empty_tx)
        .def_readonly("ack_rx", &SimCounts::ack_rx)
        .def_readonly("ack_timeouts", &SimCounts::ack_timeouts)
        .def_readonly("frame_drops", &SimCounts::frame_drops)
        .def_readonly("queue_overflows", &SimCounts::queue_overflows)
        .def_readonly("empty_rx", &SimCounts::empty_rx)
        .def_readonly("ack_tx", &SimCounts::ack_tx)
        .def_readonly("idle_listens", &SimCounts::idle_listens)
        .def_readonly("duplicate_rx", &SimCounts::duplicate_rx)
        .def_readonly("packets_released", &SimCounts::packets_released)
        .def_readonly("packets_delivered", &SimCounts::packets_delivered)
        .def_property_readonly("data_tx_attempts", &SimCounts::data_tx_attempts)
        .def_property_readonly("data_rx_total", &SimCounts::data_rx_total);

    py::class_<LatencySummary>(m, "LatencySummary")
        .def_readonly("count", &LatencySummary::count)
        .def_readonly("mean_s", &LatencySummary::mean_s)
        .def_readonly("max_s", &LatencySummary::max_s)
        .def_readonly("histogram", &LatencySummary::histogram);

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("counts", &SimReport::counts)
        .def_readonly("tx_energy_uj", &SimReport::tx_energy_uj)
        .def_readonly("rx_energy_uj", &SimReport::rx_energy_uj)
        .def_readonly("tx_power_uw", &SimReport::tx_power_uw)
        .def_readonly("rx_power_uw", &SimReport::rx_power_uw)
        .def_readonly("latencies_s", &SimReport::latencies_s)
        .def_readonly("mean_queue_depth", &SimReport::mean_queue_depth)
        .def_readonly("max_queue_depth", &SimReport::max_queue_depth)
        .def_readonly("warmup_slotframes", &SimReport::warmup_slotframes)
        .def_readonly("horizon_slotframes", &SimReport::horizon_slotframes)
        .def_readonly("measured_seconds", &SimReport::measured_seconds)
        .def("to_csv", &SimReport::to_csv, py::arg("include_baseline") = false,
             py::arg("baseline_power_uw") = 0.0)
        .def("summary", &SimReport::summary, py::arg("include_baseline") = false,
             py::arg("baseline_power_uw") = 0.0);

    m.def("frame_tx_energy", &frame_tx_energy, py::arg("model"), py::arg("length_bytes"));
    m.def("frame_rx_energy", &frame_rx_energy, py::arg("model"), py::arg("length_bytes"));
    m.def("normalized_period", &normalized_period, py::arg("interval_seconds"), py::arg("cfg"));

    m.def(
        "encode_ie",
        [](const SleepCommand& cmd) {
            const IeBytes bytes = encode_ie(cmd);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("command"));
    m.def(
        "decode_ie",
        [](const py::bytes& raw) {
            const std::string buffer = raw;
            return decode_ie(std::span<const std::uint8_t>(
                reinterpret_cast<const std::uint8_t*>(buffer.data()), buffer.size()));
        },
        py::arg("octets"));

    m.def("compute_strategy_params", &compute_strategy_params, py::arg("strategy"),
          py::arg("traffic"), py::arg("cfg") = SlotframeConfig{});
    m.def("wake_slotframes", &wake_slotframes, py::arg("n_slp"), py::arg("n_snz"));
    m.def("n_wup", &n_wup, py::arg("n_slp"), py::arg("n_snz"));

    m.def("analytic_power", &analytic_power, py::arg("strategy"), py::arg("traffic"),
          py::arg("cfg") = SlotframeConfig{}, py::arg("energy") = EnergyModel{},
          py::arg("frames") = FrameSpec{}, py::arg("n_snz_override") = std::nullopt);
    m.def("oracle_gap_periodic", &oracle_gap_periodic, py::arg("traffic"),
          py::arg("cfg") = SlotframeConfig{}, py::arg("energy") = EnergyModel{},
          py::arg("frames") = FrameSpec{});
    m.def("deadline_max_nslp", &deadline_max_nslp, py::arg("deadline_us"),
          py::arg("cfg") = SlotframeConfig{});

    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("run", &run_with_optional_trace, py::arg("scenario"), py::arg("trace_path") = "",
          "Run one scenario to its horizon and return the report.");
    m.def("measure_latency", &measure_latency, py::arg("report"));

    m.def("table1_markdown", [] { return table1_render(TableFormat::markdown); });
    m.def("table1_csv", [] { return table1_render(TableFormat::csv); });
    m.def("table1_ok", [] { return table1_verify().ok; });
}
