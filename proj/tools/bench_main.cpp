#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vmbt/experiment.hpp"
#include "vmbt/instance_json.hpp"
#include "vmbt/schedule.hpp"
#include "vmbt/schedulers.hpp"
#include "vmbt/swf.hpp"
#include "vmbt/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void apply_weight_flag(const std::string& flag, vmbt::ExperimentSpec& spec) {
    // time=0.01,cores=1,mips=1,...
    std::size_t pos = 0;
    while (pos < flag.size()) {
        std::size_t comma = flag.find(',', pos);
        if (comma == std::string::npos) comma = flag.size();
        const std::string item = flag.substr(pos, comma - pos);
        pos = comma + 1;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw vmbt::FormatError("weight '" + item + "' must be key=value");
        }
        const std::string key = item.substr(0, eq);
        double value = 0.0;
        try {
            value = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw vmbt::FormatError("weight '" + item + "' has a non-numeric value");
        }
        if (value < 0) throw vmbt::FormatError("weight '" + key + "' must be non-negative");
        for (vmbt::SchedulerSpec& entry : spec.schedulers) {
            if (key == "time") {
                entry.config.weight_time = value;
                continue;
            }
            bool known = false;
            for (std::size_t d = 0; d < vmbt::ResourceVector::kDimensions; ++d) {
                if (key == vmbt::kResourceNames[d]) {
                    entry.config.weight_resources[d] = value;
                    if (entry.name == "vbp-norm-l2") {
                        entry.vbp_weights = entry.config.weight_resources;
                    }
                    known = true;
                    break;
                }
            }
            if (!known && key != "time") {
                throw vmbt::FormatError("unknown weight '" + key + "'");
            }
        }
    }
}

int cmd_run(const std::string& spec_path, const std::optional<std::size_t>& hosts,
            const std::string& weights, const std::string& sort, const std::string& baseline,
            const std::optional<std::string>& csv_out, const std::optional<std::string>& json_out,
            bool timing) {
    vmbt::ExperimentSpec spec = vmbt::load_experiment_spec(spec_path);
    if (spec.schedulers.empty()) spec.schedulers = vmbt::default_scheduler_set();
    if (hosts) spec.host_count = *hosts;
    if (!weights.empty()) apply_weight_flag(weights, spec);
    if (!sort.empty()) {
        const vmbt::SortOrder order = sort == "lft" ? vmbt::SortOrder::LatestFinishFirst
                                                    : vmbt::SortOrder::LongestDurationFirst;
        for (vmbt::SchedulerSpec& entry : spec.schedulers) {
            if (entry.name == "emintre-lft") entry.config.sort_order = order;
        }
    }
    if (!baseline.empty()) spec.baseline = baseline;
    if (csv_out) spec.csv_out = *csv_out;
    if (json_out) spec.json_out = *json_out;
    if (timing) spec.measure_wall = true;

    const vmbt::ExperimentResult result = vmbt::run_experiment(spec);
    for (const std::string& warning : result.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::cout << vmbt::rows_to_csv(result.rows);
    if (spec.csv_out) std::cerr << "wrote " << spec.csv_out->string() << "\n";
    if (spec.json_out) std::cerr << "wrote " << spec.json_out->string() << "\n";
    return kExitOk;
}

int cmd_gen(std::uint64_t seed, std::size_t jobs, const std::string& out, std::size_t hosts,
            vmbt::Duration mean_interarrival, vmbt::Duration min_duration,
            vmbt::Duration max_duration) {
    vmbt::GeneratorConfig config;
    config.seed = seed;
    config.job_count = jobs;
    config.mean_interarrival = mean_interarrival;
    config.min_duration = min_duration;
    config.max_duration = max_duration;

    vmbt::Instance instance;
    instance.vms = vmbt::generate_synthetic(config);
    instance.hosts.reserve(hosts);
    for (std::size_t i = 0; i < hosts; ++i) {
        instance.hosts.push_back(vmbt::default_host(static_cast<vmbt::HostId>(i)));
    }
    vmbt::save_instance_json(instance, out);
    std::cerr << "wrote " << out << " (" << instance.vms.size() << " vms, "
              << instance.hosts.size() << " hosts)\n";
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const vmbt::Instance instance = vmbt::load_instance_json(path);
    const vmbt::InstanceBounds bounds = vmbt::bounds_for_instance(instance);

    // Constraint 2 against the most capable host
    vmbt::ResourceVector max_capacity;
    for (const vmbt::HostConfig& host : instance.hosts) {
        max_capacity = vmbt::componentwise_max(max_capacity, host.capacity);
    }
    std::size_t violations = 0;
    for (const vmbt::VmRequest& vm : instance.vms) {
        if (!vm.demand.fits_within(max_capacity)) {
            ++violations;
            if (violations <= 10) {
                std::cerr << "vm " << vm.id << " demands more than any host offers\n";
            }
        }
    }

    std::cout << "vms: " << instance.vms.size() << "\n"
              << "hosts: " << instance.hosts.size() << "\n"
              << "len: " << bounds.len << "\n"
              << "span: " << bounds.span << "\n"
              << "concurrency_cap: " << bounds.g << "\n"
              << "oversized_vms: " << violations << "\n";
    return violations == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-aware fixed-interval VM placement benchmark"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run an experiment spec and emit a comparison report");
    std::string spec_path;
    run->add_option("--spec", spec_path, "Experiment spec (JSON)")->required();
    std::optional<std::size_t> run_hosts;
    run->add_option("--hosts", run_hosts, "Override host count");
    std::string weights;
    run->add_option("--weights", weights, "Override weights, e.g. time=0.01,cores=1,mips=1");
    std::string sort;
    run->add_option("--sort", sort, "VM order for emintre-lft")
        ->check(CLI::IsMember({"lft", "ldtf"}));
    std::string baseline;
    run->add_option("--baseline", baseline, "Baseline algorithm for normalization");
    std::optional<std::string> csv_out;
    run->add_option("--out-csv", csv_out, "Report CSV path (overrides spec)");
    std::optional<std::string> json_out;
    run->add_option("--out-json", json_out, "Report JSON path (overrides spec)");
    bool timing = false;
    run->add_flag("--timing", timing, "Measure wall time per scheduler (non-reproducible)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a seeded synthetic instance");
    std::uint64_t seed = 0;
    gen->add_option("--seed", seed, "Generator seed")->required();
    std::size_t jobs = 0;
    gen->add_option("--jobs", jobs, "Number of jobs")->required();
    std::string gen_out;
    gen->add_option("--out", gen_out, "Output instance JSON")->required();
    std::size_t gen_hosts = 5000;
    gen->add_option("--hosts", gen_hosts, "Host count (identical reference hosts)");
    vmbt::Duration mean_interarrival = 60;
    gen->add_option("--mean-interarrival", mean_interarrival, "Mean job interarrival (s)");
    vmbt::Duration min_duration = 600;
    gen->add_option("--min-duration", min_duration, "Minimum job duration (s)");
    vmbt::Duration max_duration = 86400;
    gen->add_option("--max-duration", max_duration, "Maximum job duration (s)");

    // validate
    auto* validate = app.add_subcommand("validate", "Check an instance file");
    std::string instance_path;
    validate->add_option("--instance", instance_path, "Instance JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (run->parsed()) {
            return cmd_run(spec_path, run_hosts, weights, sort, baseline, csv_out, json_out,
                           timing);
        }
        if (gen->parsed()) {
            return cmd_gen(seed, jobs, gen_out, gen_hosts, mean_interarrival, min_duration,
                           max_duration);
        }
        if (validate->parsed()) {
            return cmd_validate(instance_path);
        }
    } catch (const vmbt::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const vmbt::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
