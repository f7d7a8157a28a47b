#include "vmbt/instance_json.hpp"

#include <fstream>

#include <json.hpp>

namespace vmbt {

namespace {

using json = nlohmann::ordered_json;

std::int64_t require_int(const json& node, const char* key, const char* context) {
    if (!node.contains(key)) {
        throw FormatError(std::string(context) + ": missing field '" + key + "'");
    }
    const json& value = node[key];
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        throw FormatError(std::string(context) + ": field '" + key +
                          "' must be an integer (exact arithmetic)");
    }
    return value.get<std::int64_t>();
}

ResourceVector parse_resources(const json& node, const char* context) {
    ResourceVector r;
    r.cores = require_int(node, "cores", context);
    r.mips = require_int(node, "mips", context);
    r.ram = require_int(node, "ram", context);
    r.netbw = require_int(node, "netbw", context);
    r.storage = require_int(node, "storage", context);
    if (!r.non_negative()) {
        throw FormatError(std::string(context) + ": negative resource component");
    }
    return r;
}

json resources_to_json(const ResourceVector& r) {
    return json{{"cores", r.cores},
                {"mips", r.mips},
                {"ram", r.ram},
                {"netbw", r.netbw},
                {"storage", r.storage}};
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("instance JSON: ") + e.what());
    }

    Instance instance;
    if (!root.contains("vms") || !root["vms"].is_array()) {
        throw FormatError("instance JSON: missing 'vms' array");
    }
    if (!root.contains("hosts") || !root["hosts"].is_array()) {
        throw FormatError("instance JSON: missing 'hosts' array");
    }

    for (const json& node : root["vms"]) {
        VmRequest vm;
        vm.id = require_int(node, "id", "vm");
        const TimePoint start = require_int(node, "start", "vm");
        const Duration duration = require_int(node, "duration", "vm");
        if (start < 0 || duration <= 0) {
            throw FormatError("vm " + std::to_string(vm.id) +
                              ": start must be >= 0 and duration > 0");
        }
        vm.interval = Interval{start, start + duration};
        if (!node.contains("demand")) {
            throw FormatError("vm " + std::to_string(vm.id) + ": missing 'demand'");
        }
        vm.demand = parse_resources(node["demand"], "vm demand");
        instance.vms.push_back(vm);
    }
    for (const json& node : root["hosts"]) {
        HostConfig host;
        host.id = require_int(node, "id", "host");
        if (!node.contains("capacity")) {
            throw FormatError("host " + std::to_string(host.id) + ": missing 'capacity'");
        }
        host.capacity = parse_resources(node["capacity"], "host capacity");
        host.p_idle = require_int(node, "p_idle", "host");
        host.p_max = require_int(node, "p_max", "host");
        instance.hosts.push_back(host);
    }

    try {
        check_instance(instance);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("instance JSON: ") + e.what());
    }
    return instance;
}

std::string instance_to_json(const Instance& instance) {
    json root;
    root["vms"] = json::array();
    for (const VmRequest& vm : instance.vms) {
        root["vms"].push_back(json{{"id", vm.id},
                                   {"start", vm.interval.start},
                                   {"duration", vm.duration()},
                                   {"demand", resources_to_json(vm.demand)}});
    }
    root["hosts"] = json::array();
    for (const HostConfig& host : instance.hosts) {
        root["hosts"].push_back(json{{"id", host.id},
                                     {"capacity", resources_to_json(host.capacity)},
                                     {"p_idle", host.p_idle},
                                     {"p_max", host.p_max}});
    }
    return root.dump(2) + "\n";
}

Instance load_instance_json(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input) throw IoError("cannot open instance: " + path.string());
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    return parse_instance_json(text);
}

void save_instance_json(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream output(path);
    if (!output) throw IoError("cannot write instance: " + path.string());
    output << instance_to_json(instance);
    if (!output) throw IoError("failed writing instance: " + path.string());
}

}  // namespace vmbt
