#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vmbt/energy.hpp"
#include "vmbt/schedulers.hpp"
#include "vmbt/swf.hpp"
#include "vmbt/synthetic.hpp"
#include "vmbt/types.hpp"

namespace vmbt {

/// One scheduler entry in an experiment: registry name, display label
/// (defaults to the name, with a weight suffix for emintre-lft), and its
/// configuration.
struct SchedulerSpec {
    std::string name;
    std::string label;
    SchedulerConfig config;
    std::optional<ResourceWeights> vbp_weights;  // vbp-norm-l2 only

    std::string effective_label() const;
};

/// A benchmark run: one instance source, a host fleet, a scheduler list and
/// a baseline to normalize against.
struct ExperimentSpec {
    // exactly one source
    std::optional<std::filesystem::path> instance_json;
    std::optional<std::filesystem::path> swf_path;
    std::optional<GeneratorConfig> generator;

    // fleet; ignored when the JSON instance carries hosts and host_count
    // is not set explicitly
    std::optional<std::size_t> host_count;
    HostConfig host_template = default_host();

    std::vector<SchedulerSpec> schedulers;  // empty -> default comparison set
    std::string baseline = "tian-mffde";

    std::optional<std::filesystem::path> csv_out;
    std::optional<std::filesystem::path> json_out;

    bool measure_wall = false;  // wall_ms stays 0 unless enabled, keeping reports reproducible
    unsigned threads = 0;       // 0 = hardware concurrency; BENCH_THREADS caps either way
};

/// The default comparison set: emintre-lft at time weights 1, 0.01 and
/// 0.001 plus the four baselines.
std::vector<SchedulerSpec> default_scheduler_set();

struct ResultRow {
    std::string algorithm;
    Energy energy;  // exact watt-ticks
    double energy_kwh = 0.0;
    double norm_energy = 0.0;
    double saving_pct = 0.0;
    Duration busy_time = 0;
    std::size_t unplaced = 0;
    std::int64_t wall_ms = 0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;  // sorted by energy ascending
    std::vector<std::string> warnings;
    std::string baseline;
};

/// Loads the instance, runs every scheduler on an identical copy,
/// re-validates every schedule through the independent checker, and
/// assembles normalized rows. Schedulers run in parallel up to the thread
/// cap. Throws ValidationError (with the offending algorithm and witness)
/// if any emitted schedule fails re-validation, FormatError for a bad spec.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Like run_experiment but on an already-loaded instance.
ExperimentResult run_experiment_on(const Instance& instance, const ExperimentSpec& spec);

std::string rows_to_csv(std::span<const ResultRow> rows);
std::string rows_to_json(const ExperimentResult& result);

/// Writes the CSV and JSON mirrors; output is byte-stable for equal rows.
void emit_report(const ExperimentResult& result,
                 const std::optional<std::filesystem::path>& csv_path,
                 const std::optional<std::filesystem::path>& json_path);

/// Experiment spec JSON:
///   {"instance": {"json": path} | {"swf": path} | {"generator": {...}},
///    "hosts": {"count": N, "template": {...}},
///    "schedulers": [{"name", "label", "weight_time", "weights", "sort"}],
///    "baseline": name, "output": {"csv": path, "json": path},
///    "timing": bool, "threads": N}
ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

}  // namespace vmbt
