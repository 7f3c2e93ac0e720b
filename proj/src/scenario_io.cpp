#include "tschls/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace tschls {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& section,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (std::string_view candidate : allowed) {
            if (key == candidate) {
                known = true;
                break;
            }
        }
        if (!known) {
            const std::string path = section.empty() ? key : section + "." + key;
            throw SchemaError(path, "unknown key");
        }
    }
}

const json* find(const json& object, const char* key) {
    const auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

std::string key_path(const std::string& section, const char* key) {
    return section.empty() ? key : section + "." + key;
}

double get_number(const json& object, const std::string& section, const char* key,
                  double fallback) {
    const json* v = find(object, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_number()) {
        throw SchemaError(key_path(section, key), "expected a number");
    }
    return v->get<double>();
}

std::int64_t get_integer(const json& object, const std::string& section, const char* key,
                         std::int64_t fallback) {
    const json* v = find(object, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_number_integer() && !v->is_number_unsigned()) {
        throw SchemaError(key_path(section, key), "expected an integer");
    }
    return v->get<std::int64_t>();
}

std::string get_string(const json& object, const std::string& section, const char* key,
                       const std::string& fallback) {
    const json* v = find(object, key);
    if (!v) {
        return fallback;
    }
    if (!v->is_string()) {
        throw SchemaError(key_path(section, key), "expected a string");
    }
    return v->get<std::string>();
}

std::int64_t seconds_field_us(const json& object, const std::string& section, const char* key,
                              std::int64_t fallback_us) {
    const json* v = find(object, key);
    if (!v) {
        return fallback_us;
    }
    if (!v->is_number()) {
        throw SchemaError(key_path(section, key), "expected a number of seconds");
    }
    return to_micros(v->get<double>());
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw SchemaError("<document>", err.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("<document>", "expected a JSON object");
    }
    reject_unknown_keys(doc, "",
                        {"version", "slotframe", "energy", "frames", "traffic", "strategy",
                         "channel", "horizon_slotframes", "allocated_slot_offset"});

    if (!find(doc, "version")) {
        throw SchemaError("version", "mandatory field missing");
    }
    if (get_integer(doc, "", "version", -1) != kScenarioSchemaVersion) {
        throw SchemaError("version", "unsupported schema version");
    }

    Scenario scenario;

    if (const json* section = find(doc, "slotframe")) {
        reject_unknown_keys(*section, "slotframe", {"slot_ms", "slots", "retry_limit"});
        const double slot_ms = get_number(*section, "slotframe", "slot_ms", 20.0);
        scenario.slotframe.slot_us = to_micros(slot_ms / 1000.0);
        scenario.slotframe.slots_per_slotframe =
            static_cast<int>(get_integer(*section, "slotframe", "slots", 101));
        scenario.slotframe.retry_limit =
            static_cast<int>(get_integer(*section, "slotframe", "retry_limit", 15));
    }

    if (const json* section = find(doc, "energy")) {
        reject_unknown_keys(*section, "energy",
                            {"e_tx0_uj", "e_tx_per_byte_uj", "e_rx0_uj", "e_rx_per_byte_uj",
                             "e_ack_tx_uj", "e_ack_rx_uj", "e_idle_listen_uj",
                             "baseline_power_uw"});
        EnergyModel& e = scenario.energy;
        e.e_tx0_uj = get_number(*section, "energy", "e_tx0_uj", e.e_tx0_uj);
        e.e_tx_per_byte_uj = get_number(*section, "energy", "e_tx_per_byte_uj", e.e_tx_per_byte_uj);
        e.e_rx0_uj = get_number(*section, "energy", "e_rx0_uj", e.e_rx0_uj);
        e.e_rx_per_byte_uj = get_number(*section, "energy", "e_rx_per_byte_uj", e.e_rx_per_byte_uj);
        e.e_ack_tx_uj = get_number(*section, "energy", "e_ack_tx_uj", e.e_ack_tx_uj);
        e.e_ack_rx_uj = get_number(*section, "energy", "e_ack_rx_uj", e.e_ack_rx_uj);
        e.e_idle_listen_uj = get_number(*section, "energy", "e_idle_listen_uj", e.e_idle_listen_uj);
        e.baseline_power_uw = get_number(*section, "energy", "baseline_power_uw",
                                         e.baseline_power_uw);
    }

    if (const json* section = find(doc, "frames")) {
        reject_unknown_keys(*section, "frames",
                            {"payload_frame_bytes", "sleep_ie_bytes", "xsleep_ie_bytes",
                             "empty_sleep_frame_bytes"});
        FrameSpec& f = scenario.frames;
        f.payload_frame_bytes = static_cast<int>(
            get_integer(*section, "frames", "payload_frame_bytes", f.payload_frame_bytes));
        f.sleep_ie_bytes =
            static_cast<int>(get_integer(*section, "frames", "sleep_ie_bytes", f.sleep_ie_bytes));
        f.xsleep_ie_bytes =
            static_cast<int>(get_integer(*section, "frames", "xsleep_ie_bytes", f.xsleep_ie_bytes));
        f.empty_sleep_frame_bytes = static_cast<int>(get_integer(
            *section, "frames", "empty_sleep_frame_bytes", f.empty_sleep_frame_bytes));
    }

    if (const json* section = find(doc, "traffic")) {
        reject_unknown_keys(*section, "traffic",
                            {"kind", "period_s", "deadline_s", "jitter", "mean_s", "min_s"});
        TrafficSpec& t = scenario.traffic;
        const std::string kind = get_string(*section, "traffic", "kind", "periodic");
        if (kind == "periodic") {
            t.kind = TrafficKind::periodic;
        } else if (kind == "quasi_periodic") {
            t.kind = TrafficKind::quasi_periodic;
        } else if (kind == "sporadic") {
            t.kind = TrafficKind::sporadic;
        } else {
            throw SchemaError("traffic.kind",
                              "expected one of periodic, quasi_periodic, sporadic");
        }
        const std::int64_t default_period =
            t.kind == TrafficKind::sporadic ? 0 : 30 * kMicrosPerSecond;
        t.period_us = seconds_field_us(*section, "traffic", "period_s", default_period);
        t.jitter_fraction = get_number(*section, "traffic", "jitter", 0.0);
        t.mean_interarrival_us = seconds_field_us(*section, "traffic", "mean_s", 0);
        t.min_interarrival_us = seconds_field_us(*section, "traffic", "min_s", 0);
        if (find(*section, "deadline_s")) {
            t.relative_deadline_us = seconds_field_us(*section, "traffic", "deadline_s", 0);
        }
    }

    const std::string strategy = get_string(doc, "", "strategy", "tsch");
    if (const auto kind = strategy_from_token(strategy)) {
        scenario.strategy = *kind;
    } else {
        throw SchemaError("strategy", "expected one of tsch, oracle, basic, slow, extended");
    }

    if (const json* section = find(doc, "channel")) {
        reject_unknown_keys(*section, "channel", {"data_loss", "ack_loss", "seed"});
        scenario.channel.data_loss_prob = get_number(*section, "channel", "data_loss", 0.0);
        scenario.channel.ack_loss_prob = get_number(*section, "channel", "ack_loss", 0.0);
        scenario.channel.seed =
            static_cast<std::uint64_t>(get_integer(*section, "channel", "seed", 1));
    }

    scenario.horizon_slotframes = get_integer(doc, "", "horizon_slotframes", 100'000);
    scenario.allocated_slot_offset =
        static_cast<int>(get_integer(doc, "", "allocated_slot_offset", 0));

    scenario.validate();
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

}  // namespace tschls
