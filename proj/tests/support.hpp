#pragma once

// Test-side oracles and instance generators. Everything here recomputes from
// raw inputs (per-tick bitmaps, exhaustive enumeration) and stays independent
// of the library's incremental bookkeeping, so it can sit on the other side
// of a dual-route check.

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vmbt/energy.hpp"
#include "vmbt/schedule.hpp"
#include "vmbt/types.hpp"

namespace vmbt::testing {

class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(engine_() %
                                              static_cast<std::uint64_t>(hi - lo + 1));
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline TimePoint instance_horizon(std::span<const VmRequest> vms) {
    TimePoint horizon = 0;
    for (const VmRequest& vm : vms) horizon = std::max(horizon, vm.interval.finish);
    return horizon;
}

// ---- per-tick bitmap oracles -------------------------------------------

inline Duration bitmap_union_length(std::span<const Interval> intervals) {
    TimePoint horizon = 0;
    for (const Interval& iv : intervals) horizon = std::max(horizon, iv.finish);
    Duration covered = 0;
    for (TimePoint t = 0; t < horizon; ++t) {
        for (const Interval& iv : intervals) {
            if (iv.contains(t)) {
                ++covered;
                break;
            }
        }
    }
    return covered;
}

inline bool bitmap_fits(const ResourceVector& capacity, std::span<const VmRequest> assigned,
                        const VmRequest* extra) {
    TimePoint horizon = instance_horizon(assigned);
    if (extra) horizon = std::max(horizon, extra->interval.finish);
    for (TimePoint t = 0; t < horizon; ++t) {
        ResourceVector load;
        for (const VmRequest& vm : assigned) {
            if (vm.interval.contains(t)) load += vm.demand;
        }
        if (extra && extra->interval.contains(t)) load += extra->demand;
        if (!load.fits_within(capacity)) return false;
    }
    return true;
}

inline bool bitmap_can_place(const ResourceVector& capacity,
                             std::span<const VmRequest> assigned, const VmRequest& vm) {
    return bitmap_fits(capacity, assigned, &vm);
}

inline bool bitmap_schedule_feasible(const Instance& instance, const Schedule& schedule) {
    for (std::size_t h = 0; h < instance.hosts.size(); ++h) {
        std::vector<VmRequest> assigned;
        for (std::size_t i = 0; i < instance.vms.size(); ++i) {
            if (schedule.host_of_vm[i] == static_cast<std::int32_t>(h)) {
                assigned.push_back(instance.vms[i]);
            }
        }
        if (!bitmap_fits(instance.hosts[h].capacity, assigned, nullptr)) return false;
    }
    return true;
}

// Total busy time of a (not necessarily feasible) assignment, counted tick
// by tick: a host contributes 1 for every tick with at least one active VM.
inline Duration bitmap_cost(const Instance& instance, std::span<const std::int32_t> host_of_vm) {
    const TimePoint horizon = instance_horizon(instance.vms);
    Duration cost = 0;
    for (std::size_t h = 0; h < instance.hosts.size(); ++h) {
        for (TimePoint t = 0; t < horizon; ++t) {
            for (std::size_t i = 0; i < instance.vms.size(); ++i) {
                if (host_of_vm[i] == static_cast<std::int32_t>(h) &&
                    instance.vms[i].interval.contains(t)) {
                    ++cost;
                    break;
                }
            }
        }
    }
    return cost;
}

// Exhaustive reference optimum: try all m^n complete mappings, per-tick
// feasibility, per-tick cost. No pruning, no incremental state.
inline std::optional<Duration> naive_min_cost(const Instance& instance) {
    const std::size_t n = instance.vms.size();
    const std::size_t m = instance.hosts.size();
    if (n == 0) return Duration{0};
    if (m == 0) return std::nullopt;

    std::vector<std::int32_t> mapping(n, 0);
    std::optional<Duration> best;
    while (true) {
        bool feasible = true;
        for (std::size_t h = 0; h < m && feasible; ++h) {
            std::vector<VmRequest> assigned;
            for (std::size_t i = 0; i < n; ++i) {
                if (mapping[i] == static_cast<std::int32_t>(h)) {
                    assigned.push_back(instance.vms[i]);
                }
            }
            feasible = bitmap_fits(instance.hosts[h].capacity, assigned, nullptr);
        }
        if (feasible) {
            const Duration cost = bitmap_cost(instance, mapping);
            if (!best || cost < *best) best = cost;
        }
        // odometer increment
        std::size_t pos = 0;
        while (pos < n) {
            if (++mapping[pos] < static_cast<std::int32_t>(m)) break;
            mapping[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return best;
}

// Sweep-integral of the power model over a host's busy time, computed from
// the raw VM list (independent of HostState's merged structures). Exact.
inline Energy sweep_host_energy(const HostConfig& config, std::span<const VmRequest> assigned) {
    std::vector<TimePoint> events;
    for (const VmRequest& vm : assigned) {
        events.push_back(vm.interval.start);
        events.push_back(vm.interval.finish);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    Energy energy = 0;
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        const TimePoint t0 = events[k];
        const TimePoint t1 = events[k + 1];
        std::int64_t active_mips = 0;
        bool busy = false;
        for (const VmRequest& vm : assigned) {
            if (vm.interval.contains(t0)) {
                busy = true;
                active_mips += vm.demand.mips;
            }
        }
        if (!busy) continue;  // powered off between busy segments
        Energy utilization = config.capacity.mips == 0
                                 ? Energy(0)
                                 : Energy(active_mips, config.capacity.mips);
        const Energy power = Energy(config.p_idle) +
                             Energy(config.p_max - config.p_idle) * utilization;
        energy += power * Energy(t1 - t0);
    }
    return energy;
}

// ---- random instances ----------------------------------------------------

struct RandomInstanceOptions {
    std::size_t min_vms = 1;
    std::size_t max_vms = 6;
    TimePoint max_start = 60;
    Duration max_duration = 40;
    bool hosts_per_vm = true;  // m = n so every scheduler can place everything
    std::size_t host_count = 3;
};

inline HostConfig small_host(HostId id) {
    return HostConfig{id, ResourceVector{6, 12000, 8192, 600, 500}, 175, 250};
}

inline Instance random_instance(TestRng& rng, const RandomInstanceOptions& options = {}) {
    Instance instance;
    const std::size_t n =
        static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(options.min_vms),
                                           static_cast<std::int64_t>(options.max_vms)));
    const std::size_t m = options.hosts_per_vm ? std::max<std::size_t>(n, 1) : options.host_count;
    for (std::size_t h = 0; h < m; ++h) {
        instance.hosts.push_back(small_host(static_cast<HostId>(h)));
    }
    const ResourceVector cap = small_host(0).capacity;
    for (std::size_t i = 0; i < n; ++i) {
        VmRequest vm;
        vm.id = static_cast<VmId>(i);
        const TimePoint start = rng.range(0, options.max_start);
        vm.interval = Interval{start, start + rng.range(1, options.max_duration)};
        vm.demand = ResourceVector{rng.range(0, cap.cores), rng.range(0, cap.mips),
                                   rng.range(0, cap.ram), rng.range(0, cap.netbw),
                                   rng.range(0, cap.storage)};
        instance.vms.push_back(vm);
    }
    return instance;
}

// Uniform-demand instance on identical hosts where the cores dimension binds
// exactly, so the concurrency cap g is exact: g = 6 / demand.cores.
inline Instance uniform_instance(TestRng& rng, std::int64_t g, std::size_t n, std::size_t m,
                                 TimePoint max_start = 40, Duration max_duration = 30) {
    Instance instance;
    for (std::size_t h = 0; h < m; ++h) {
        instance.hosts.push_back(small_host(static_cast<HostId>(h)));
    }
    const ResourceVector cap = small_host(0).capacity;
    ResourceVector demand;
    demand.cores = cap.cores / g;  // 6/g exact for g in {1,2,3}
    demand.mips = rng.range(1, cap.mips / (g + 1));
    demand.ram = rng.range(1, cap.ram / (g + 1));
    demand.netbw = rng.range(1, cap.netbw / (g + 1));
    demand.storage = rng.range(1, cap.storage / (g + 1));
    for (std::size_t i = 0; i < n; ++i) {
        VmRequest vm;
        vm.id = static_cast<VmId>(i);
        const TimePoint start = rng.range(0, max_start);
        vm.interval = Interval{start, start + rng.range(1, max_duration)};
        vm.demand = demand;
        instance.vms.push_back(vm);
    }
    return instance;
}

}  // namespace vmbt::testing
