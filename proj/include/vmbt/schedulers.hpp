#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmbt/host_state.hpp"
#include "vmbt/schedule.hpp"
#include "vmbt/types.hpp"

namespace vmbt {

enum class SortOrder {
    LatestFinishFirst,     // descending finish, then longer duration, then id
    LongestDurationFirst,  // descending duration, then descending finish, then id
    EarliestStartFirst,    // ascending start, then ascending finish, then id
    CpuDemandDecreasing,   // descending MIPS demand, then id
};

enum class TieBreak {
    LowestHostId,
};

/// Per-resource weights for the residual-capacity norm.
struct ResourceWeights {
    double cores = 1.0;
    double mips = 1.0;
    double ram = 1.0;
    double netbw = 1.0;
    double storage = 1.0;

    double operator[](std::size_t dim) const {
        switch (dim) {
            case 0: return cores;
            case 1: return mips;
            case 2: return ram;
            case 3: return netbw;
            case 4: return storage;
        }
        throw std::out_of_range("ResourceWeights index out of range");
    }

    double& operator[](std::size_t dim) {
        switch (dim) {
            case 0: return cores;
            case 1: return mips;
            case 2: return ram;
            case 3: return netbw;
            case 4: return storage;
        }
        throw std::out_of_range("ResourceWeights index out of range");
    }

    friend bool operator==(const ResourceWeights&, const ResourceWeights&) = default;
};

struct SchedulerConfig {
    double weight_time = 1.0;
    ResourceWeights weight_resources;
    SortOrder sort_order = SortOrder::LatestFinishFirst;
    TieBreak tie_break = TieBreak::LowestHostId;
};

/// Trace record of one placement decision.
struct PlacementDecision {
    VmId vm = 0;
    std::optional<HostId> chosen;
    double metric_value = 0.0;  // metric of the chosen host; NaN when unplaced
    std::size_t candidates_examined = 0;
};

/// used[dim] / capacity[dim]; a resource the host does not offer counts as
/// fully used.
double utilization_component(const ResourceVector& used, const ResourceVector& capacity,
                             std::size_t dim);

/// Squared weighted L2 norm of the residual-capacity ("diagonal") vector:
/// sum over resources of ((1 - used_r / capacity_r) * w_r)^2.
double weighted_residual_norm_squared(const ResourceVector& used, const ResourceVector& capacity,
                                      const ResourceWeights& weights);

/// Post-placement utilization of one resource during the VM's window: peak
/// active demand over [start, finish) including the candidate, over capacity.
double window_utilization(const HostState& host, const VmRequest& vm, std::size_t dim);

/// Time-agnostic utilization: demand summed over every assigned VM plus the
/// candidate, over capacity (the static vector-packing view; can exceed 1).
double aggregate_utilization(const HostState& host, const VmRequest& vm, std::size_t dim);

/// The combined time/resource-efficiency placement metric. Requires
/// can_place(host, vm). With busy_after the host's post-placement busy time
/// and busy_increase = max(fleet busy after - fleet_busy_before, 0):
///
///   metric = (busy_increase * weight_time / busy_after)^2
///          + sum_r ((1 - U_r) * w_r)^2
///
/// where U_r is the post-placement window_utilization, so the residual term
/// scores how tightly the VM packs against the load it will actually share
/// the host with. busy_after >= vm duration > 0, so the quotient is always
/// defined.
double tre_metric(const HostState& host, const VmRequest& vm, Duration fleet_busy_before,
                  const SchedulerConfig& config);

/// Greedy placement in configured order (default: latest finish time first),
/// assigning each VM to the feasible host with minimum tre_metric. VMs that
/// fit no host are recorded as unplaced.
Schedule emintre_lft(const Instance& instance, const SchedulerConfig& config = {},
                     std::vector<PlacementDecision>* trace = nullptr);

/// Power-aware best fit decreasing: VMs in decreasing CPU-demand order, each
/// placed on the feasible host with the smallest instantaneous power increase
/// at its start time.
Schedule pabfd(const Instance& instance, std::vector<PlacementDecision>* trace = nullptr);

/// Weights used by vbp_norm_l2 when none are supplied: per resource,
/// exp(mean normalized demand over the instance's VMs).
ResourceWeights vbp_default_weights(const Instance& instance);

/// Norm-based greedy vector packing of degree 2: VMs in decreasing weighted
/// demand-norm order, each placed on the feasible host minimizing the
/// weighted L2 norm of the post-placement residual capacity.
Schedule vbp_norm_l2(const Instance& instance,
                     const std::optional<ResourceWeights>& weights = std::nullopt,
                     std::vector<PlacementDecision>* trace = nullptr);

/// First fit decreasing by duration: VMs in longest-running-time-first
/// order, each placed on the first (lowest-id) feasible host.
Schedule tian_mffde(const Instance& instance, std::vector<PlacementDecision>* trace = nullptr);

/// VMs in start-then-finish order, each placed on the feasible host that
/// minimizes the increase in total fleet busy time.
Schedule mindft_ldtf(const Instance& instance, std::vector<PlacementDecision>* trace = nullptr);

struct OracleLimits {
    std::size_t max_vms = 8;
    std::size_t max_hosts = 4;
};

class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No complete feasible mapping exists.
class InfeasibleInstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact minimum-busy-time schedule by exhaustive enumeration of all
/// feasible complete mappings, with identical-host symmetry pruning.
/// Deterministic: among optimal mappings, returns the lexicographically
/// smallest host-index vector. Throws OracleLimitError beyond `limits` and
/// InfeasibleInstanceError when no complete mapping exists.
Schedule brute_force_optimal(const Instance& instance, const OracleLimits& limits = {});

/// Registry used by the CLI. Known names: emintre-lft, pabfd, vbp-norm-l2,
/// tian-mffde, mindft-ldtf, brute-force.
const std::vector<std::string>& scheduler_names();
bool is_scheduler_name(const std::string& name);
Schedule run_scheduler(const std::string& name, const Instance& instance,
                       const SchedulerConfig& config = {},
                       std::vector<PlacementDecision>* trace = nullptr);

}  // namespace vmbt
