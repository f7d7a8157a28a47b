#include "vmbt/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "vmbt/intervals.hpp"

namespace vmbt {

namespace {

std::vector<std::size_t> sorted_vm_order(const Instance& instance, SortOrder order) {
    std::vector<std::size_t> idx(instance.vms.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto& vms = instance.vms;
    auto cmp = [&vms, order](std::size_t a, std::size_t b) {
        const VmRequest& va = vms[a];
        const VmRequest& vb = vms[b];
        switch (order) {
            case SortOrder::LatestFinishFirst:
                if (va.interval.finish != vb.interval.finish)
                    return va.interval.finish > vb.interval.finish;
                if (va.duration() != vb.duration()) return va.duration() > vb.duration();
                break;
            case SortOrder::LongestDurationFirst:
                if (va.duration() != vb.duration()) return va.duration() > vb.duration();
                if (va.interval.finish != vb.interval.finish)
                    return va.interval.finish > vb.interval.finish;
                break;
            case SortOrder::EarliestStartFirst:
                if (va.interval.start != vb.interval.start)
                    return va.interval.start < vb.interval.start;
                if (va.interval.finish != vb.interval.finish)
                    return va.interval.finish < vb.interval.finish;
                break;
            case SortOrder::CpuDemandDecreasing:
                if (va.demand.mips != vb.demand.mips) return va.demand.mips > vb.demand.mips;
                break;
        }
        if (va.id != vb.id) return va.id < vb.id;
        return a < b;
    };
    std::sort(idx.begin(), idx.end(), cmp);
    return idx;
}

// Host fleet with a reduced candidate set: all non-empty hosts plus the
// first (lowest-id) empty host of each distinct host kind. Empty hosts of
// the same kind are interchangeable for every placement metric here, so
// restricting to the first one leaves argmin-with-lowest-id-tie-break and
// first-fit results unchanged while keeping large idle fleets cheap.
class Fleet {
public:
    explicit Fleet(const std::vector<HostConfig>& configs) {
        hosts_.reserve(configs.size());
        for (const HostConfig& config : configs) hosts_.emplace_back(config);

        // iterate hosts in ascending-id order so ties break on host id
        by_id_.resize(configs.size());
        std::iota(by_id_.begin(), by_id_.end(), std::size_t{0});
        std::sort(by_id_.begin(), by_id_.end(), [&configs](std::size_t a, std::size_t b) {
            if (configs[a].id != configs[b].id) return configs[a].id < configs[b].id;
            return a < b;
        });

        kind_of_.resize(configs.size());
        std::vector<const HostConfig*> kinds;
        for (std::size_t rank = 0; rank < by_id_.size(); ++rank) {
            const HostConfig& config = configs[by_id_[rank]];
            std::size_t kind = kinds.size();
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                if (kinds[k]->same_kind(config)) {
                    kind = k;
                    break;
                }
            }
            if (kind == kinds.size()) {
                kinds.push_back(&config);
                empty_ranks_.emplace_back();
            }
            kind_of_[rank] = kind;
            empty_ranks_[kind].insert(rank);
        }
    }

    // Ranks (positions in ascending-id order) worth examining, ascending.
    std::vector<std::size_t> candidate_ranks() const {
        std::vector<std::size_t> reps;
        reps.reserve(empty_ranks_.size());
        for (const auto& ranks : empty_ranks_) {
            if (!ranks.empty()) reps.push_back(*ranks.begin());
        }
        std::sort(reps.begin(), reps.end());

        std::vector<std::size_t> merged;
        merged.reserve(used_ranks_.size() + reps.size());
        std::merge(used_ranks_.begin(), used_ranks_.end(), reps.begin(), reps.end(),
                   std::back_inserter(merged));
        return merged;
    }

    const HostState& host_at_rank(std::size_t rank) const { return hosts_[by_id_[rank]]; }
    std::size_t index_of_rank(std::size_t rank) const { return by_id_[rank]; }

    void place(std::size_t rank, const VmRequest& vm) {
        HostState& host = hosts_[by_id_[rank]];
        const bool was_empty = host.empty();
        const Duration before = host.busy_time();
        host.add(vm);
        busy_total_ += host.busy_time() - before;
        if (was_empty) {
            empty_ranks_[kind_of_[rank]].erase(rank);
            used_ranks_.insert(std::lower_bound(used_ranks_.begin(), used_ranks_.end(), rank),
                               rank);
        }
    }

    Duration busy_total() const { return busy_total_; }

private:
    std::vector<HostState> hosts_;
    std::vector<std::size_t> by_id_;            // rank -> host index
    std::vector<std::size_t> kind_of_;          // rank -> kind
    std::vector<std::set<std::size_t>> empty_ranks_;  // kind -> empty ranks
    std::vector<std::size_t> used_ranks_;       // sorted ranks of non-empty hosts
    Duration busy_total_ = 0;
};

// Shared greedy loop: place VMs in `order`, each on the feasible candidate
// minimizing `metric` (or the first feasible one when first_fit).
template <typename MetricFn>
Schedule greedy_schedule(const Instance& instance, const std::vector<std::size_t>& order,
                         bool first_fit, MetricFn&& metric,
                         std::vector<PlacementDecision>* trace) {
    Schedule schedule;
    schedule.host_of_vm.assign(instance.vms.size(), Schedule::kUnplaced);

    Fleet fleet(instance.hosts);
    for (std::size_t vm_idx : order) {
        const VmRequest& vm = instance.vms[vm_idx];
        double best_metric = std::numeric_limits<double>::infinity();
        std::ptrdiff_t best_rank = -1;
        std::size_t examined = 0;

        for (std::size_t rank : fleet.candidate_ranks()) {
            ++examined;
            const HostState& host = fleet.host_at_rank(rank);
            if (!host.can_place(vm)) continue;
            if (first_fit) {
                best_rank = static_cast<std::ptrdiff_t>(rank);
                best_metric = 0.0;
                break;
            }
            const double value = metric(fleet, host, vm);
            if (value < best_metric) {
                best_metric = value;
                best_rank = static_cast<std::ptrdiff_t>(rank);
            }
        }

        if (trace) {
            PlacementDecision decision;
            decision.vm = vm.id;
            decision.candidates_examined = examined;
            if (best_rank >= 0) {
                decision.chosen = fleet.host_at_rank(best_rank).config().id;
                decision.metric_value = best_metric;
            } else {
                decision.metric_value = std::numeric_limits<double>::quiet_NaN();
            }
            trace->push_back(std::move(decision));
        }

        if (best_rank >= 0) {
            schedule.host_of_vm[vm_idx] =
                static_cast<std::int32_t>(fleet.index_of_rank(best_rank));
            fleet.place(static_cast<std::size_t>(best_rank), vm);
        }
    }

    for (std::size_t i = 0; i < schedule.host_of_vm.size(); ++i) {
        if (schedule.host_of_vm[i] == Schedule::kUnplaced) schedule.unplaced.push_back(i);
    }
    return schedule;
}

}  // namespace

double utilization_component(const ResourceVector& used, const ResourceVector& capacity,
                             std::size_t dim) {
    if (capacity[dim] == 0) return 1.0;  // nonexistent resource: nothing left to offer
    return static_cast<double>(used[dim]) / static_cast<double>(capacity[dim]);
}

double weighted_residual_norm_squared(const ResourceVector& used, const ResourceVector& capacity,
                                      const ResourceWeights& weights) {
    double sum = 0.0;
    for (std::size_t d = 0; d < ResourceVector::kDimensions; ++d) {
        const double residual = (1.0 - utilization_component(used, capacity, d)) * weights[d];
        sum += residual * residual;
    }
    return sum;
}

double window_utilization(const HostState& host, const VmRequest& vm, std::size_t dim) {
    return utilization_component(host.peak_demand_over(vm.interval) + vm.demand,
                                 host.config().capacity, dim);
}

double aggregate_utilization(const HostState& host, const VmRequest& vm, std::size_t dim) {
    return utilization_component(host.aggregate_demand() + vm.demand, host.config().capacity,
                                 dim);
}

double tre_metric(const HostState& host, const VmRequest& vm, Duration fleet_busy_before,
                  const SchedulerConfig& config) {
    const Duration busy_before = host.busy_time();
    const Duration busy_after = host.busy_time_with(vm.interval);
    const Duration fleet_busy_after = fleet_busy_before - busy_before + busy_after;
    const Duration busy_increase = std::max<Duration>(fleet_busy_after - fleet_busy_before, 0);
    // busy_after >= vm.duration() > 0
    const double time_term = config.weight_time * static_cast<double>(busy_increase) /
                             static_cast<double>(busy_after);
    return time_term * time_term +
           weighted_residual_norm_squared(host.peak_demand_over(vm.interval) + vm.demand,
                                          host.config().capacity, config.weight_resources);
}

Schedule emintre_lft(const Instance& instance, const SchedulerConfig& config,
                     std::vector<PlacementDecision>* trace) {
    auto metric = [&config](const Fleet& fleet, const HostState& host, const VmRequest& vm) {
        return tre_metric(host, vm, fleet.busy_total(), config);
    };
    return greedy_schedule(instance, sorted_vm_order(instance, config.sort_order), false,
                           metric, trace);
}

Schedule pabfd(const Instance& instance, std::vector<PlacementDecision>* trace) {
    auto metric = [](const Fleet&, const HostState& host, const VmRequest& vm) {
        // Instantaneous power increase at the VM's start. The power model is
        // linear, so P(u + du) - P(u) = (p_max - p_idle) * du independent of
        // the load already there; the direct form keeps equal increases
        // bitwise equal so ties break on host id, not rounding noise.
        const HostConfig& config = host.config();
        if (config.capacity.mips == 0) return 0.0;
        return static_cast<double>(config.p_max - config.p_idle) *
               static_cast<double>(vm.demand.mips) /
               static_cast<double>(config.capacity.mips);
    };
    return greedy_schedule(instance, sorted_vm_order(instance, SortOrder::CpuDemandDecreasing),
                           false, metric, trace);
}

ResourceWeights vbp_default_weights(const Instance& instance) {
    ResourceWeights weights;
    if (instance.vms.empty()) return weights;

    ResourceVector max_capacity;
    for (const HostConfig& host : instance.hosts) {
        max_capacity = componentwise_max(max_capacity, host.capacity);
    }
    for (std::size_t d = 0; d < ResourceVector::kDimensions; ++d) {
        double mean = 0.0;
        if (max_capacity[d] > 0) {
            double sum = 0.0;
            for (const VmRequest& vm : instance.vms) {
                sum += static_cast<double>(vm.demand[d]) / static_cast<double>(max_capacity[d]);
            }
            mean = sum / static_cast<double>(instance.vms.size());
        }
        weights[d] = std::exp(mean);
    }
    return weights;
}

Schedule vbp_norm_l2(const Instance& instance, const std::optional<ResourceWeights>& weights,
                     std::vector<PlacementDecision>* trace) {
    const ResourceWeights w = weights ? *weights : vbp_default_weights(instance);

    ResourceVector max_capacity;
    for (const HostConfig& host : instance.hosts) {
        max_capacity = componentwise_max(max_capacity, host.capacity);
    }
    // decreasing weighted demand norm, then id
    std::vector<std::size_t> order(instance.vms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> demand_norm(instance.vms.size(), 0.0);
    for (std::size_t i = 0; i < instance.vms.size(); ++i) {
        double sum = 0.0;
        for (std::size_t d = 0; d < ResourceVector::kDimensions; ++d) {
            if (max_capacity[d] == 0) continue;
            const double normalized = static_cast<double>(instance.vms[i].demand[d]) /
                                      static_cast<double>(max_capacity[d]) * w[d];
            sum += normalized * normalized;
        }
        demand_norm[i] = sum;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (demand_norm[a] != demand_norm[b]) return demand_norm[a] > demand_norm[b];
        if (instance.vms[a].id != instance.vms[b].id)
            return instance.vms[a].id < instance.vms[b].id;
        return a < b;
    });

    // classic static vector packing: residual against the time-agnostic
    // aggregate demand, the interval-blindness this baseline is known for
    auto metric = [&w](const Fleet&, const HostState& host, const VmRequest& vm) {
        return std::sqrt(weighted_residual_norm_squared(host.aggregate_demand() + vm.demand,
                                                        host.config().capacity, w));
    };
    return greedy_schedule(instance, order, false, metric, trace);
}

Schedule tian_mffde(const Instance& instance, std::vector<PlacementDecision>* trace) {
    auto metric = [](const Fleet&, const HostState&, const VmRequest&) { return 0.0; };
    return greedy_schedule(instance, sorted_vm_order(instance, SortOrder::LongestDurationFirst),
                           true, metric, trace);
}

Schedule mindft_ldtf(const Instance& instance, std::vector<PlacementDecision>* trace) {
    auto metric = [](const Fleet&, const HostState& host, const VmRequest& vm) {
        return static_cast<double>(host.busy_time_with(vm.interval) - host.busy_time());
    };
    return greedy_schedule(instance, sorted_vm_order(instance, SortOrder::EarliestStartFirst),
                           false, metric, trace);
}

namespace {

struct OracleSearch {
    const Instance& instance;
    std::vector<HostState> hosts;
    std::vector<std::size_t> kind_of;
    std::vector<std::int32_t> current;
    std::vector<std::int32_t> best;
    Duration current_cost = 0;
    Duration best_cost = std::numeric_limits<Duration>::max();

    explicit OracleSearch(const Instance& inst) : instance(inst) {
        hosts.reserve(inst.hosts.size());
        for (const HostConfig& config : inst.hosts) hosts.emplace_back(config);
        kind_of.resize(inst.hosts.size());
        std::vector<std::size_t> kind_reps;
        for (std::size_t h = 0; h < inst.hosts.size(); ++h) {
            std::size_t kind = kind_reps.size();
            for (std::size_t k = 0; k < kind_reps.size(); ++k) {
                if (inst.hosts[kind_reps[k]].same_kind(inst.hosts[h])) {
                    kind = k;
                    break;
                }
            }
            if (kind == kind_reps.size()) kind_reps.push_back(h);
            kind_of[h] = kind;
        }
        current.assign(inst.vms.size(), Schedule::kUnplaced);
    }

    void search(std::size_t vm_idx) {
        if (current_cost >= best_cost) return;  // cost never shrinks as VMs are added
        if (vm_idx == instance.vms.size()) {
            best_cost = current_cost;
            best = current;
            return;
        }
        const VmRequest& vm = instance.vms[vm_idx];
        // Identical empty hosts are interchangeable; trying only the first
        // empty host of each kind enumerates one canonical (lexicographically
        // smallest) representative per symmetry class.
        std::vector<bool> tried_empty_kind(hosts.size(), false);
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            if (hosts[h].empty()) {
                if (tried_empty_kind[kind_of[h]]) continue;
                tried_empty_kind[kind_of[h]] = true;
            }
            if (!hosts[h].can_place(vm)) continue;
            const Duration delta =
                hosts[h].busy_time_with(vm.interval) - hosts[h].busy_time();
            hosts[h].add(vm);
            current[vm_idx] = static_cast<std::int32_t>(h);
            current_cost += delta;
            search(vm_idx + 1);
            current_cost -= delta;
            current[vm_idx] = Schedule::kUnplaced;
            hosts[h].remove(vm.id);
        }
    }
};

}  // namespace

Schedule brute_force_optimal(const Instance& instance, const OracleLimits& limits) {
    if (instance.vms.size() > limits.max_vms) {
        throw OracleLimitError("oracle refused: " + std::to_string(instance.vms.size()) +
                               " vms exceed the limit of " + std::to_string(limits.max_vms));
    }
    if (instance.hosts.size() > limits.max_hosts) {
        throw OracleLimitError("oracle refused: " + std::to_string(instance.hosts.size()) +
                               " hosts exceed the limit of " + std::to_string(limits.max_hosts));
    }

    OracleSearch search(instance);
    search.search(0);
    if (search.best_cost == std::numeric_limits<Duration>::max()) {
        throw InfeasibleInstanceError("no complete feasible mapping exists");
    }
    Schedule schedule;
    schedule.host_of_vm = std::move(search.best);
    return schedule;
}

const std::vector<std::string>& scheduler_names() {
    static const std::vector<std::string> names = {"emintre-lft", "pabfd",       "vbp-norm-l2",
                                                   "tian-mffde",  "mindft-ldtf", "brute-force"};
    return names;
}

bool is_scheduler_name(const std::string& name) {
    const auto& names = scheduler_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Schedule run_scheduler(const std::string& name, const Instance& instance,
                       const SchedulerConfig& config, std::vector<PlacementDecision>* trace) {
    if (name == "emintre-lft") return emintre_lft(instance, config, trace);
    if (name == "pabfd") return pabfd(instance, trace);
    if (name == "vbp-norm-l2") return vbp_norm_l2(instance, std::nullopt, trace);
    if (name == "tian-mffde") return tian_mffde(instance, trace);
    if (name == "mindft-ldtf") return mindft_ldtf(instance, trace);
    if (name == "brute-force") return brute_force_optimal(instance);
    throw std::invalid_argument("unknown scheduler: " + name);
}

}  // namespace vmbt
