#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vmbt/energy.hpp"
#include "vmbt/experiment.hpp"
#include "vmbt/host_state.hpp"
#include "vmbt/instance_json.hpp"
#include "vmbt/intervals.hpp"
#include "vmbt/schedule.hpp"
#include "vmbt/schedulers.hpp"
#include "vmbt/swf.hpp"
#include "vmbt/synthetic.hpp"
#include "vmbt/types.hpp"

namespace py = pybind11;
using namespace vmbt;

namespace {

std::string energy_str(const Energy& e) { return e.str(); }

std::vector<std::pair<HostId, double>> pairs_to_double(
    const std::vector<std::pair<HostId, Energy>>& pairs) {
    std::vector<std::pair<HostId, double>> out;
    out.reserve(pairs.size());
    for (const auto& [id, e] : pairs) out.emplace_back(id, to_double(e));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Energy-aware fixed-interval VM placement: interval algebra, "
              "power/energy accounting, schedulers and workload tooling";

    py::register_exception<ValidationError>(m, "ScheduleValidationError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<SwfParseError>(m, "SwfParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<OracleLimitError>(m, "OracleLimitError", PyExc_RuntimeError);
    py::register_exception<InfeasibleInstanceError>(m, "InfeasibleInstanceError",
                                                    PyExc_RuntimeError);

    py::class_<Interval>(m, "Interval")
        .def(py::init([](TimePoint start, TimePoint finish) {
                 return make_interval(start, finish);
             }),
             py::arg("start"), py::arg("finish"))
        .def_readonly("start", &Interval::start)
        .def_readonly("finish", &Interval::finish)
        .def("length", &Interval::length)
        .def("overlaps", &Interval::overlaps)
        .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; })
        .def("__repr__", [](const Interval& iv) {
            std::ostringstream out;
            out << "Interval[" << iv.start << ", " << iv.finish << ")";
            return out.str();
        });

    py::class_<ResourceVector>(m, "ResourceVector")
        .def(py::init([](std::int64_t cores, std::int64_t mips, std::int64_t ram,
                         std::int64_t netbw, std::int64_t storage) {
                 return ResourceVector{cores, mips, ram, netbw, storage};
             }),
             py::arg("cores") = 0, py::arg("mips") = 0, py::arg("ram") = 0,
             py::arg("netbw") = 0, py::arg("storage") = 0)
        .def_readwrite("cores", &ResourceVector::cores)
        .def_readwrite("mips", &ResourceVector::mips)
        .def_readwrite("ram", &ResourceVector::ram)
        .def_readwrite("netbw", &ResourceVector::netbw)
        .def_readwrite("storage", &ResourceVector::storage)
        .def("fits_within", &ResourceVector::fits_within)
        .def("__add__", [](const ResourceVector& a, const ResourceVector& b) { return a + b; })
        .def("__sub__", [](const ResourceVector& a, const ResourceVector& b) { return a - b; })
        .def("__eq__", [](const ResourceVector& a, const ResourceVector& b) { return a == b; })
        .def("__getitem__", [](const ResourceVector& r, std::size_t i) { return r[i]; })
        .def("__repr__", [](const ResourceVector& r) {
            std::ostringstream out;
            out << "ResourceVector(cores=" << r.cores << ", mips=" << r.mips << ", ram=" << r.ram
                << ", netbw=" << r.netbw << ", storage=" << r.storage << ")";
            return out.str();
        });

    py::class_<VmRequest>(m, "VmRequest")
        .def(py::init([](VmId id, TimePoint start, Duration duration, ResourceVector demand) {
                 if (duration <= 0) throw py::value_error("duration must be positive");
                 return VmRequest{id, make_interval(start, start + duration), demand};
             }),
             py::arg("id"), py::arg("start"), py::arg("duration"), py::arg("demand"))
        .def_readwrite("id", &VmRequest::id)
        .def_readwrite("interval", &VmRequest::interval)
        .def_readwrite("demand", &VmRequest::demand)
        .def("duration", &VmRequest::duration)
        .def("__repr__", [](const VmRequest& vm) {
            std::ostringstream out;
            out << "VmRequest(id=" << vm.id << ", [" << vm.interval.start << ", "
                << vm.interval.finish << "))";
            return out.str();
        });

    py::class_<HostConfig>(m, "HostConfig")
        .def(py::init([](HostId id, ResourceVector capacity, std::int64_t p_idle,
                         std::int64_t p_max) {
                 return HostConfig{id, capacity, p_idle, p_max};
             }),
             py::arg("id"), py::arg("capacity"), py::arg("p_idle"), py::arg("p_max"))
        .def_readwrite("id", &HostConfig::id)
        .def_readwrite("capacity", &HostConfig::capacity)
        .def_readwrite("p_idle", &HostConfig::p_idle)
        .def_readwrite("p_max", &HostConfig::p_max)
        .def("alpha", &HostConfig::alpha);

    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def(py::init([](std::vector<VmRequest> vms, std::vector<HostConfig> hosts) {
                 return Instance{std::move(vms), std::move(hosts)};
             }),
             py::arg("vms"), py::arg("hosts"))
        .def_readwrite("vms", &Instance::vms)
        .def_readwrite("hosts", &Instance::hosts);

    py::class_<HostState>(m, "HostState")
        .def(py::init<HostConfig>(), py::arg("config"))
        .def("config", &HostState::config, py::return_value_policy::copy)
        .def("can_place", &HostState::can_place)
        .def("add", &HostState::add)
        .def("remove", &HostState::remove)
        .def("busy_time", &HostState::busy_time)
        .def("busy_time_with", &HostState::busy_time_with)
        .def("aggregate_demand", &HostState::aggregate_demand, py::return_value_policy::copy)
        .def("demand_at", &HostState::demand_at)
        .def("assigned", &HostState::assigned, py::return_value_policy::copy)
        .def("empty", &HostState::empty);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init<>())
        .def_readwrite("host_of_vm", &Schedule::host_of_vm)
        .def_readwrite("unplaced", &Schedule::unplaced)
        .def("all_placed", &Schedule::all_placed)
        .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; });

    py::enum_<SortOrder>(m, "SortOrder")
        .value("LATEST_FINISH_FIRST", SortOrder::LatestFinishFirst)
        .value("LONGEST_DURATION_FIRST", SortOrder::LongestDurationFirst)
        .value("EARLIEST_START_FIRST", SortOrder::EarliestStartFirst)
        .value("CPU_DEMAND_DECREASING", SortOrder::CpuDemandDecreasing);

    py::class_<ResourceWeights>(m, "ResourceWeights")
        .def(py::init([](double cores, double mips, double ram, double netbw, double storage) {
                 return ResourceWeights{cores, mips, ram, netbw, storage};
             }),
             py::arg("cores") = 1.0, py::arg("mips") = 1.0, py::arg("ram") = 1.0,
             py::arg("netbw") = 1.0, py::arg("storage") = 1.0)
        .def_readwrite("cores", &ResourceWeights::cores)
        .def_readwrite("mips", &ResourceWeights::mips)
        .def_readwrite("ram", &ResourceWeights::ram)
        .def_readwrite("netbw", &ResourceWeights::netbw)
        .def_readwrite("storage", &ResourceWeights::storage);

    py::class_<SchedulerConfig>(m, "SchedulerConfig")
        .def(py::init([](double weight_time, ResourceWeights weights, SortOrder order) {
                 SchedulerConfig config;
                 config.weight_time = weight_time;
                 config.weight_resources = weights;
                 config.sort_order = order;
                 return config;
             }),
             py::arg("weight_time") = 1.0, py::arg("weight_resources") = ResourceWeights{},
             py::arg("sort_order") = SortOrder::LatestFinishFirst)
        .def_readwrite("weight_time", &SchedulerConfig::weight_time)
        .def_readwrite("weight_resources", &SchedulerConfig::weight_resources)
        .def_readwrite("sort_order", &SchedulerConfig::sort_order);

    py::class_<PlacementDecision>(m, "PlacementDecision")
        .def_readonly("vm", &PlacementDecision::vm)
        .def_readonly("chosen", &PlacementDecision::chosen)
        .def_readonly("metric_value", &PlacementDecision::metric_value)
        .def_readonly("candidates_examined", &PlacementDecision::candidates_examined);

    py::class_<InstanceBounds>(m, "InstanceBounds")
        .def_readonly("len", &InstanceBounds::len)
        .def_readonly("span", &InstanceBounds::span)
        .def_readonly("g", &InstanceBounds::g);

    py::class_<EnergyReport>(m, "EnergyReport")
        .def_property_readonly("total_ws", [](const EnergyReport& r) { return to_double(r.total); })
        .def_property_readonly("total_kwh", &EnergyReport::total_kwh)
        .def_property_readonly("total_exact",
                               [](const EnergyReport& r) { return energy_str(r.total); })
        .def_property_readonly(
            "increments_exact",
            [](const EnergyReport& r) { return energy_str(r.sum_increments()); })
        .def_property_readonly("base_exact",
                               [](const EnergyReport& r) { return energy_str(r.sum_base()); })
        .def_property_readonly(
            "per_host_base",
            [](const EnergyReport& r) { return pairs_to_double(r.per_host_base); })
        .def_property_readonly(
            "per_vm_increment",
            [](const EnergyReport& r) { return pairs_to_double(r.per_vm_increment); })
        .def_readonly("heterogeneous_hosts", &EnergyReport::heterogeneous_hosts);

    // interval algebra
    m.def("interval_union_length", &interval_union_length, py::arg("intervals"),
          "Length of the union of the intervals (their span).");
    m.def(
        "total_length",
        [](const std::vector<Interval>& intervals) {
            return total_length(std::span<const Interval>(intervals));
        },
        py::arg("intervals"), "Sum of the individual interval lengths.");
    m.def("host_busy_time", [](const HostState& host) { return host.busy_time(); });

    // schedule evaluation
    m.def("schedule_cost", &schedule_cost, py::arg("instance"), py::arg("schedule"));
    m.def("per_host_busy", &per_host_busy, py::arg("instance"), py::arg("schedule"));
    m.def("bounds_for_instance", &bounds_for_instance, py::arg("instance"));
    m.def(
        "find_schedule_issue",
        [](const Instance& instance, const Schedule& schedule) -> std::optional<std::string> {
            if (auto issue = find_schedule_issue(instance, schedule)) return issue->message;
            return std::nullopt;
        },
        py::arg("instance"), py::arg("schedule"),
        "None when the schedule passes re-validation, else a description of the violation.");
    m.def("validate_schedule", &validate_schedule, py::arg("instance"), py::arg("schedule"));

    // power / energy
    m.def("host_utilization", &host_utilization, py::arg("host"), py::arg("t"));
    m.def(
        "vm_energy", [](const VmRequest& vm, const HostConfig& host) {
            return to_double(vm_energy(vm, host));
        },
        py::arg("vm"), py::arg("host"), "Watt-seconds attributable to the VM, as a float.");
    m.def(
        "vm_energy_exact",
        [](const VmRequest& vm, const HostConfig& host) { return energy_str(vm_energy(vm, host)); },
        py::arg("vm"), py::arg("host"));
    m.def(
        "host_energy", [](const HostState& host) { return to_double(host_energy(host)); },
        py::arg("host"));
    m.def("schedule_energy", &schedule_energy, py::arg("instance"), py::arg("schedule"));
    m.def(
        "optimal_energy_bounds",
        [](const Instance& instance) {
            const EnergyBounds bounds = optimal_energy_bounds(instance);
            return py::make_tuple(to_double(bounds.lower), to_double(bounds.upper));
        },
        py::arg("instance"), "(lower, upper) watt-second bounds on the optimum's energy.");

    // schedulers
    m.def("tre_metric", &tre_metric, py::arg("host"), py::arg("vm"),
          py::arg("fleet_busy_before"), py::arg("config") = SchedulerConfig{});
    m.def(
        "emintre_lft",
        [](const Instance& instance, const SchedulerConfig& config) {
            return emintre_lft(instance, config);
        },
        py::arg("instance"), py::arg("config") = SchedulerConfig{});
    m.def(
        "pabfd", [](const Instance& instance) { return pabfd(instance); }, py::arg("instance"));
    m.def(
        "vbp_norm_l2",
        [](const Instance& instance, const std::optional<ResourceWeights>& weights) {
            return vbp_norm_l2(instance, weights);
        },
        py::arg("instance"), py::arg("weights") = std::nullopt);
    m.def("vbp_default_weights", &vbp_default_weights, py::arg("instance"));
    m.def(
        "tian_mffde", [](const Instance& instance) { return tian_mffde(instance); },
        py::arg("instance"));
    m.def(
        "mindft_ldtf", [](const Instance& instance) { return mindft_ldtf(instance); },
        py::arg("instance"));
    m.def(
        "brute_force_optimal",
        [](const Instance& instance, std::size_t max_vms, std::size_t max_hosts) {
            return brute_force_optimal(instance, OracleLimits{max_vms, max_hosts});
        },
        py::arg("instance"), py::arg("max_vms") = 8, py::arg("max_hosts") = 4);
    m.def("scheduler_names", [] { return scheduler_names(); });
    m.def(
        "run_scheduler",
        [](const std::string& name, const Instance& instance, const SchedulerConfig& config) {
            return run_scheduler(name, instance, config);
        },
        py::arg("name"), py::arg("instance"), py::arg("config") = SchedulerConfig{});

    // workload
    py::class_<SwfJob>(m, "SwfJob")
        .def(py::init([](std::int64_t id, std::int64_t submit, std::int64_t wait,
                         std::int64_t run_time, std::int64_t processors) {
                 return SwfJob{id, submit, wait, run_time, processors};
             }),
             py::arg("id"), py::arg("submit"), py::arg("wait"), py::arg("run_time"),
             py::arg("processors"))
        .def_readwrite("id", &SwfJob::id)
        .def_readwrite("submit", &SwfJob::submit)
        .def_readwrite("wait", &SwfJob::wait)
        .def_readwrite("run_time", &SwfJob::run_time)
        .def_readwrite("processors", &SwfJob::processors)
        .def("start", &SwfJob::start)
        .def("__eq__", [](const SwfJob& a, const SwfJob& b) { return a == b; });

    py::class_<SwfParseStats>(m, "SwfParseStats")
        .def_readonly("job_lines", &SwfParseStats::job_lines)
        .def_readonly("dropped_nonpositive_runtime", &SwfParseStats::dropped_nonpositive_runtime)
        .def_readonly("dropped_nonpositive_processors",
                      &SwfParseStats::dropped_nonpositive_processors)
        .def_readonly("dropped_unknown_start", &SwfParseStats::dropped_unknown_start)
        .def("dropped_total", &SwfParseStats::dropped_total);

    py::class_<SwfParseResult>(m, "SwfParseResult")
        .def_readonly("jobs", &SwfParseResult::jobs)
        .def_readonly("stats", &SwfParseResult::stats);

    m.def(
        "parse_swf",
        [](const std::string& text) {
            std::istringstream stream(text);
            return parse_swf(stream);
        },
        py::arg("text"));
    m.def("parse_swf_file", &parse_swf_file, py::arg("path"));

    py::class_<ConversionResult>(m, "ConversionResult")
        .def_readonly("vms", &ConversionResult::vms)
        .def_readonly("rejected", &ConversionResult::rejected)
        .def_readonly("type_histogram", &ConversionResult::type_histogram);

    m.def("default_vm_types", [] { return VmTypeCatalog::standard().types; });
    m.def("default_host", &default_host, py::arg("id") = 0);
    m.def(
        "jobs_to_vms",
        [](const std::vector<SwfJob>& jobs, const std::optional<std::vector<ResourceVector>>& types,
           const std::optional<ResourceVector>& capacity) {
            VmTypeCatalog catalog = VmTypeCatalog::standard();
            if (types) catalog.types = *types;
            return jobs_to_vms(jobs, catalog,
                               capacity ? *capacity : default_host().capacity);
        },
        py::arg("jobs"), py::arg("types") = std::nullopt, py::arg("capacity") = std::nullopt);

    py::class_<GeneratorConfig>(m, "GeneratorConfig")
        .def(py::init([](std::uint64_t seed, std::size_t jobs, Duration mean_interarrival,
                         Duration min_duration, Duration max_duration, int max_processor_exponent,
                         double power_of_two_bias) {
                 return GeneratorConfig{seed,         jobs,         mean_interarrival,
                                        min_duration, max_duration, max_processor_exponent,
                                        power_of_two_bias};
             }),
             py::arg("seed") = 0, py::arg("jobs") = 0, py::arg("mean_interarrival") = 60,
             py::arg("min_duration") = 600, py::arg("max_duration") = 86400,
             py::arg("max_processor_exponent") = 5, py::arg("power_of_two_bias") = 0.75)
        .def_readwrite("seed", &GeneratorConfig::seed)
        .def_readwrite("job_count", &GeneratorConfig::job_count)
        .def_readwrite("mean_interarrival", &GeneratorConfig::mean_interarrival)
        .def_readwrite("min_duration", &GeneratorConfig::min_duration)
        .def_readwrite("max_duration", &GeneratorConfig::max_duration);

    m.def("generate_jobs", &generate_jobs, py::arg("config"));
    m.def(
        "generate_synthetic",
        [](const GeneratorConfig& config) { return generate_synthetic(config); },
        py::arg("config"));

    // instance files
    m.def("load_instance", &load_instance_json, py::arg("path"));
    m.def("save_instance", &save_instance_json, py::arg("instance"), py::arg("path"));
    m.def("parse_instance_json", &parse_instance_json, py::arg("text"));
    m.def("instance_to_json", &instance_to_json, py::arg("instance"));

#ifdef VMBT_VERSION
    m.attr("__version__") = VMBT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
