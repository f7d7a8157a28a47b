#include "vmbt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "vmbt/instance_json.hpp"
#include "vmbt/schedule.hpp"

namespace vmbt {

namespace {

using json = nlohmann::ordered_json;

std::string format_weight(double w) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", w);
    return buffer;
}

std::string fixed3(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3f", value);
    return buffer;
}

double round3(double value) { return std::round(value * 1000.0) / 1000.0; }

unsigned thread_cap(unsigned requested, std::size_t jobs) {
    unsigned cap = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BENCH_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(parsed));
    }
    return std::max(1u, std::min<unsigned>(cap, static_cast<unsigned>(jobs)));
}

Schedule dispatch(const Instance& instance, const SchedulerSpec& spec) {
    if (spec.name == "vbp-norm-l2") return vbp_norm_l2(instance, spec.vbp_weights);
    return run_scheduler(spec.name, instance, spec.config);
}

SortOrder parse_sort_order(const std::string& text) {
    if (text == "lft") return SortOrder::LatestFinishFirst;
    if (text == "ldtf") return SortOrder::LongestDurationFirst;
    if (text == "esf") return SortOrder::EarliestStartFirst;
    if (text == "cpu") return SortOrder::CpuDemandDecreasing;
    throw FormatError("unknown sort order '" + text + "' (expected lft, ldtf, esf or cpu)");
}

}  // namespace

std::string SchedulerSpec::effective_label() const {
    if (!label.empty()) return label;
    if (name == "emintre-lft") return name + " wt" + format_weight(config.weight_time);
    return name;
}

std::vector<SchedulerSpec> default_scheduler_set() {
    std::vector<SchedulerSpec> set;
    for (double wt : {1.0, 0.01, 0.001}) {
        SchedulerSpec spec;
        spec.name = "emintre-lft";
        spec.config.weight_time = wt;
        set.push_back(std::move(spec));
    }
    for (const char* name : {"tian-mffde", "mindft-ldtf", "pabfd", "vbp-norm-l2"}) {
        SchedulerSpec spec;
        spec.name = name;
        set.push_back(std::move(spec));
    }
    return set;
}

ExperimentResult run_experiment_on(const Instance& instance, const ExperimentSpec& spec) {
    std::vector<SchedulerSpec> schedulers =
        spec.schedulers.empty() ? default_scheduler_set() : spec.schedulers;
    for (const SchedulerSpec& entry : schedulers) {
        if (!is_scheduler_name(entry.name)) {
            throw FormatError("unknown scheduler '" + entry.name + "'");
        }
    }
    const auto baseline_matches = [&](const SchedulerSpec& entry) {
        return entry.effective_label() == spec.baseline || entry.name == spec.baseline;
    };
    if (std::none_of(schedulers.begin(), schedulers.end(), baseline_matches)) {
        throw FormatError("baseline '" + spec.baseline + "' is not in the scheduler list");
    }
    check_instance(instance);

    struct RunSlot {
        Schedule schedule;
        std::int64_t wall_ms = 0;
        std::exception_ptr error;
    };
    std::vector<RunSlot> slots(schedulers.size());

    // Schedulers share the instance read-only; each run owns its schedule.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < schedulers.size(); i = next.fetch_add(1)) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                slots[i].schedule = dispatch(instance, schedulers[i]);
                const auto t1 = std::chrono::steady_clock::now();
                if (spec.measure_wall) {
                    slots[i].wall_ms =
                        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
                }
            } catch (...) {
                slots[i].error = std::current_exception();
            }
        }
    };
    const unsigned workers = thread_cap(spec.threads, schedulers.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (const RunSlot& slot : slots) {
        if (slot.error) std::rethrow_exception(slot.error);
    }

    ExperimentResult result;
    result.baseline = spec.baseline;

    std::vector<ResultRow> rows(schedulers.size());
    for (std::size_t i = 0; i < schedulers.size(); ++i) {
        const std::string label = schedulers[i].effective_label();
        if (auto issue = find_schedule_issue(instance, slots[i].schedule)) {
            issue->message = label + ": " + issue->message;
            throw ValidationError(std::move(*issue));
        }
        ResultRow& row = rows[i];
        row.algorithm = label;
        row.busy_time = schedule_cost(instance, slots[i].schedule);
        row.energy = schedule_energy(instance, slots[i].schedule).total;
        row.energy_kwh = to_kwh(row.energy);
        row.unplaced = slots[i].schedule.unplaced.size();
        row.wall_ms = slots[i].wall_ms;
    }

    Energy baseline_energy = 0;
    for (std::size_t i = 0; i < schedulers.size(); ++i) {
        if (baseline_matches(schedulers[i])) {
            baseline_energy = rows[i].energy;
            break;
        }
    }
    for (ResultRow& row : rows) {
        if (baseline_energy != 0) {
            row.norm_energy = to_double(Energy(row.energy / baseline_energy));
        } else {
            row.norm_energy = row.energy == 0 ? 1.0 : 0.0;
        }
        row.saving_pct = (1.0 - row.norm_energy) * 100.0;
    }

    const std::size_t min_unplaced =
        std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.unplaced < b.unplaced;
        })->unplaced;
    const std::size_t max_unplaced =
        std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.unplaced < b.unplaced;
        })->unplaced;
    if (max_unplaced > 0) {
        if (min_unplaced != max_unplaced) {
            result.warnings.push_back(
                "ASYMMETRIC PLACEMENT: unplaced VM counts differ across algorithms (" +
                std::to_string(min_unplaced) + ".." + std::to_string(max_unplaced) +
                "); the energy comparison is not like-for-like");
        } else {
            result.warnings.push_back("all algorithms left " + std::to_string(max_unplaced) +
                                      " VMs unplaced");
        }
    }

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.algorithm < b.algorithm;
    });
    result.rows = std::move(rows);
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    const int sources = (spec.instance_json ? 1 : 0) + (spec.swf_path ? 1 : 0) +
                        (spec.generator ? 1 : 0);
    if (sources != 1) {
        throw FormatError("experiment spec requires exactly one instance source "
                          "(json, swf or generator)");
    }

    auto make_fleet = [&](std::size_t count) {
        std::vector<HostConfig> hosts;
        hosts.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            HostConfig host = spec.host_template;
            host.id = static_cast<HostId>(i);
            hosts.push_back(host);
        }
        return hosts;
    };

    Instance instance;
    if (spec.instance_json) {
        instance = load_instance_json(*spec.instance_json);
        if (spec.host_count) instance.hosts = make_fleet(*spec.host_count);
    } else if (spec.swf_path) {
        const SwfParseResult parsed = parse_swf_file(*spec.swf_path);
        instance.vms =
            jobs_to_vms(parsed.jobs, VmTypeCatalog::standard(), spec.host_template.capacity).vms;
        instance.hosts = make_fleet(spec.host_count.value_or(5000));
    } else {
        instance.vms = generate_synthetic(*spec.generator);
        instance.hosts = make_fleet(spec.host_count.value_or(5000));
    }

    ExperimentResult result = run_experiment_on(instance, spec);
    emit_report(result, spec.csv_out, spec.json_out);
    return result;
}

std::string rows_to_csv(std::span<const ResultRow> rows) {
    std::string csv = "algorithm,energy_kwh,norm_energy,saving_pct,busy_time_s,unplaced,wall_ms\n";
    for (const ResultRow& row : rows) {
        csv += row.algorithm;
        csv += ',';
        csv += fixed3(row.energy_kwh);
        csv += ',';
        csv += fixed3(row.norm_energy);
        csv += ',';
        csv += fixed3(row.saving_pct);
        csv += ',';
        csv += std::to_string(row.busy_time);
        csv += ',';
        csv += std::to_string(row.unplaced);
        csv += ',';
        csv += std::to_string(row.wall_ms);
        csv += '\n';
    }
    return csv;
}

std::string rows_to_json(const ExperimentResult& result) {
    json root;
    root["baseline"] = result.baseline;
    root["rows"] = json::array();
    for (const ResultRow& row : result.rows) {
        root["rows"].push_back(json{{"algorithm", row.algorithm},
                                    {"energy_kwh", round3(row.energy_kwh)},
                                    {"norm_energy", round3(row.norm_energy)},
                                    {"saving_pct", round3(row.saving_pct)},
                                    {"busy_time_s", row.busy_time},
                                    {"unplaced", row.unplaced},
                                    {"wall_ms", row.wall_ms},
                                    {"energy_ws_exact", row.energy.str()}});
    }
    root["warnings"] = result.warnings;
    return root.dump(2) + "\n";
}

void emit_report(const ExperimentResult& result,
                 const std::optional<std::filesystem::path>& csv_path,
                 const std::optional<std::filesystem::path>& json_path) {
    if (result.rows.empty()) throw FormatError("refusing to emit an empty report");
    if (csv_path) {
        std::ofstream out(*csv_path);
        if (!out) throw IoError("cannot write report: " + csv_path->string());
        out << rows_to_csv(result.rows);
        if (!out) throw IoError("failed writing report: " + csv_path->string());
    }
    if (json_path) {
        std::ofstream out(*json_path);
        if (!out) throw IoError("cannot write report: " + json_path->string());
        out << rows_to_json(result);
        if (!out) throw IoError("failed writing report: " + json_path->string());
    }
}

namespace {

ResourceWeights parse_weights(const json& node, double* weight_time) {
    ResourceWeights weights;
    for (const auto& [key, value] : node.items()) {
        if (!value.is_number()) throw FormatError("weight '" + key + "' must be a number");
        const double w = value.get<double>();
        if (w < 0) throw FormatError("weight '" + key + "' must be non-negative");
        if (key == "time") {
            if (weight_time) *weight_time = w;
            continue;
        }
        bool known = false;
        for (std::size_t d = 0; d < ResourceVector::kDimensions; ++d) {
            if (key == kResourceNames[d]) {
                weights[d] = w;
                known = true;
                break;
            }
        }
        if (!known) throw FormatError("unknown weight '" + key + "'");
    }
    return weights;
}

HostConfig parse_host_template(const json& node) {
    const std::string text = node.dump();
    // reuse the instance parser for a single host entry
    const std::string wrapped = R"({"vms": [], "hosts": [)" + text + "]}";
    Instance parsed = parse_instance_json(wrapped);
    return parsed.hosts.at(0);
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("experiment spec: ") + e.what());
    }

    auto resolve = [&base_dir](const std::string& path) {
        std::filesystem::path p(path);
        if (p.is_relative() && !base_dir.empty()) return base_dir / p;
        return p;
    };

    ExperimentSpec spec;
    if (!root.contains("instance") || !root["instance"].is_object()) {
        throw FormatError("experiment spec: missing 'instance' object");
    }
    const json& source = root["instance"];
    if (source.contains("json")) {
        spec.instance_json = resolve(source["json"].get<std::string>());
    }
    if (source.contains("swf")) {
        spec.swf_path = resolve(source["swf"].get<std::string>());
    }
    if (source.contains("generator")) {
        const json& gen = source["generator"];
        GeneratorConfig config;
        if (gen.contains("seed")) config.seed = gen["seed"].get<std::uint64_t>();
        if (gen.contains("jobs")) config.job_count = gen["jobs"].get<std::size_t>();
        if (gen.contains("mean_interarrival"))
            config.mean_interarrival = gen["mean_interarrival"].get<Duration>();
        if (gen.contains("min_duration")) config.min_duration = gen["min_duration"].get<Duration>();
        if (gen.contains("max_duration")) config.max_duration = gen["max_duration"].get<Duration>();
        if (gen.contains("max_processor_exponent"))
            config.max_processor_exponent = gen["max_processor_exponent"].get<int>();
        if (gen.contains("power_of_two_bias"))
            config.power_of_two_bias = gen["power_of_two_bias"].get<double>();
        spec.generator = config;
    }

    if (root.contains("hosts")) {
        const json& hosts = root["hosts"];
        if (hosts.contains("count")) spec.host_count = hosts["count"].get<std::size_t>();
        if (hosts.contains("template")) spec.host_template = parse_host_template(hosts["template"]);
    }

    if (root.contains("schedulers")) {
        for (const json& node : root["schedulers"]) {
            SchedulerSpec entry;
            if (!node.contains("name")) throw FormatError("scheduler entry: missing 'name'");
            entry.name = node["name"].get<std::string>();
            if (!is_scheduler_name(entry.name)) {
                throw FormatError("unknown scheduler '" + entry.name + "'");
            }
            if (node.contains("label")) entry.label = node["label"].get<std::string>();
            if (node.contains("weight_time"))
                entry.config.weight_time = node["weight_time"].get<double>();
            if (node.contains("weights")) {
                entry.config.weight_resources =
                    parse_weights(node["weights"], &entry.config.weight_time);
                if (entry.name == "vbp-norm-l2") entry.vbp_weights = entry.config.weight_resources;
            }
            if (node.contains("sort")) {
                entry.config.sort_order = parse_sort_order(node["sort"].get<std::string>());
            }
            spec.schedulers.push_back(std::move(entry));
        }
    }

    if (root.contains("baseline")) spec.baseline = root["baseline"].get<std::string>();
    if (root.contains("output")) {
        const json& output = root["output"];
        if (output.contains("csv")) spec.csv_out = resolve(output["csv"].get<std::string>());
        if (output.contains("json")) spec.json_out = resolve(output["json"].get<std::string>());
    }
    if (root.contains("timing")) spec.measure_wall = root["timing"].get<bool>();
    if (root.contains("threads")) spec.threads = root["threads"].get<unsigned>();
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input) throw IoError("cannot open experiment spec: " + path.string());
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    return parse_experiment_spec(text, path.parent_path());
}

}  // namespace vmbt
