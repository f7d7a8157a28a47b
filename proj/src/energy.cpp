#include "vmbt/energy.hpp"

#include <stdexcept>
#include <string>

#include "vmbt/intervals.hpp"

namespace vmbt {

double to_double(const Energy& e) { return e.convert_to<double>(); }

double to_kwh(const Energy& watt_ticks) { return to_double(watt_ticks) / 3.6e6; }

Energy EnergyReport::sum_base() const {
    Energy sum = 0;
    for (const auto& [id, e] : per_host_base) sum += e;
    return sum;
}

Energy EnergyReport::sum_increments() const {
    Energy sum = 0;
    for (const auto& [id, e] : per_vm_increment) sum += e;
    return sum;
}

Energy host_utilization_exact(const HostState& host, TimePoint t) {
    const std::int64_t capacity_mips = host.config().capacity.mips;
    if (capacity_mips == 0) return 0;
    return Energy(host.demand_at(t).mips, capacity_mips);
}

double host_utilization(const HostState& host, TimePoint t) {
    return to_double(host_utilization_exact(host, t));
}

Energy vm_energy(const VmRequest& vm, const HostConfig& host) {
    const std::int64_t capacity_mips = host.capacity.mips;
    if (capacity_mips == 0) return 0;
    // (p_max - p_idle) * delta_u * duration, with delta_u the VM's share of
    // host CPU; exact because delta_u is a ratio of integers.
    return Energy(host.p_max - host.p_idle) * Energy(vm.demand.mips, capacity_mips) *
           Energy(vm.duration());
}

Energy host_energy(const HostState& host) {
    Energy energy = Energy(host.config().p_idle) * Energy(host.busy_time());
    for (const VmRequest& vm : host.assigned()) {
        energy += vm_energy(vm, host.config());
    }
    return energy;
}

EnergyReport schedule_energy(const Instance& instance, const Schedule& schedule) {
    if (schedule.host_of_vm.size() != instance.vms.size()) {
        throw std::invalid_argument("schedule does not match instance");
    }
    EnergyReport report;
    for (std::size_t h = 1; h < instance.hosts.size(); ++h) {
        if (!instance.hosts[h].same_kind(instance.hosts[0])) {
            report.heterogeneous_hosts = true;
            break;
        }
    }

    const std::vector<Duration> busy = per_host_busy(instance, schedule);
    report.per_host_base.reserve(instance.hosts.size());
    for (std::size_t h = 0; h < instance.hosts.size(); ++h) {
        report.per_host_base.emplace_back(instance.hosts[h].id,
                                          Energy(instance.hosts[h].p_idle) * Energy(busy[h]));
    }
    report.per_vm_increment.reserve(instance.vms.size());
    for (std::size_t i = 0; i < instance.vms.size(); ++i) {
        const std::int32_t h = schedule.host_of_vm[i];
        if (h == Schedule::kUnplaced) continue;
        report.per_vm_increment.emplace_back(instance.vms[i].id,
                                             vm_energy(instance.vms[i], instance.hosts[h]));
    }
    report.total = report.sum_base() + report.sum_increments();
    return report;
}

EnergyBounds optimal_energy_bounds(const Instance& instance) {
    EnergyBounds bounds;
    if (instance.vms.empty() || instance.hosts.empty()) return bounds;

    std::int64_t min_idle = instance.hosts.front().p_idle;
    std::int64_t max_peak = instance.hosts.front().p_max;
    for (const HostConfig& host : instance.hosts) {
        min_idle = std::min(min_idle, host.p_idle);
        max_peak = std::max(max_peak, host.p_max);
    }

    const InstanceBounds ib = bounds_for_instance(instance);
    if (ib.g > 0) {
        bounds.lower = Energy(min_idle) * Energy(ib.len) / Energy(ib.g);
    }
    bounds.upper = Energy(max_peak) * Energy(ib.len);
    return bounds;
}

}  // namespace vmbt
